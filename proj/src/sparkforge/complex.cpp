#include "complex.hpp"

#include <sstream>

namespace sparkforge {

namespace {

// Z -> Q(i) and Q -> Q(i) coercions double only the row index
RatMat flatten_rows_only(const GaussMat& m, bool double_rows) {
    if (!double_rows) {
        RatMat f(m.nrows, m.ncols);
        for (long i = 0; i < m.nrows; ++i)
            for (long j = 0; j < m.ncols; ++j) {
                if (m(i, j).im != 0) throw Error("flatten: non-real entry into a real ring");
                f(i, j) = m(i, j).re;
            }
        return f;
    }
    RatMat f(2 * m.nrows, m.ncols);
    for (long i = 0; i < m.nrows; ++i)
        for (long j = 0; j < m.ncols; ++j) {
            f(2 * i, j) = m(i, j).re;
            f(2 * i + 1, j) = m(i, j).im;
        }
    return f;
}

void check_ring_entries(const GaussMat& m, Ring ring) {
    for (auto& g : m.a) {
        if (ring != Ring::QI && g.im != 0) throw Error("complex: non-real entry in a real-ring matrix");
        if (ring == Ring::Z && g.re.get_den() != 1) throw Error("complex: non-integer entry in a Z matrix");
    }
}

}  // namespace

GaussMat CochainComplex::diff_at(long k) const {
    if (k >= 0 && k < static_cast<long>(diffs.size())) {
        const GaussMat& d = diffs[k];
        if (d.nrows != 0 || d.ncols != 0) return d;
    }
    return GaussMat(rank_at(k + 1), rank_at(k));
}

CochainComplex CochainComplex::zero(Ring r, long window) {
    if (window < 0) throw Error("complex window must be >= 0");
    CochainComplex c;
    c.ring = r;
    c.ranks.assign(static_cast<size_t>(window + 1), 0);
    c.diffs.assign(static_cast<size_t>(window), GaussMat(0, 0));
    return c;
}

void CochainComplex::set_diff(long k, GaussMat d) {
    if (k < 0 || k >= window()) throw Error("set_diff: degree outside window");
    if (d.nrows != ranks[k + 1] || d.ncols != ranks[k]) throw Error("set_diff: shape mismatch");
    diffs[k] = std::move(d);
}

void CochainComplex::validate() const {
    if (static_cast<long>(diffs.size()) + 1 != static_cast<long>(ranks.size()))
        throw Error("complex: differential count mismatch");
    for (long k = 0; k < window(); ++k) {
        GaussMat d = diff_at(k);
        if (d.nrows != ranks[k + 1] || d.ncols != ranks[k]) throw Error("complex: shape mismatch");
        check_ring_entries(d, ring);
    }
    for (long k = 0; k + 1 < window(); ++k)
        if (!(diff_at(k + 1) * diff_at(k)).is_zero()) throw Error("complex: d.d != 0 at degree " + std::to_string(k));
}

std::pair<long, long> mixed_ambient(Ring r, long rank) {
    switch (r) {
        case Ring::Z: return {0, rank};
        case Ring::Q: return {rank, 0};
        case Ring::QI: return {2 * rank, 0};
    }
    return {0, 0};
}

RatMat flatten_field(const GaussMat& m, Ring ring_tag) {
    if (ring_tag == Ring::QI) {
        RatMat f(2 * m.nrows, 2 * m.ncols);
        for (long i = 0; i < m.nrows; ++i)
            for (long j = 0; j < m.ncols; ++j) {
                const GaussRat& g = m(i, j);
                f(2 * i, 2 * j) = g.re;
                f(2 * i, 2 * j + 1) = -g.im;
                f(2 * i + 1, 2 * j) = g.im;
                f(2 * i + 1, 2 * j + 1) = g.re;
            }
        return f;
    }
    return flatten_rows_only(m, false);
}

IntMat flatten_int(const GaussMat& m) {
    IntMat f(m.nrows, m.ncols);
    for (long i = 0; i < m.nrows; ++i)
        for (long j = 0; j < m.ncols; ++j) {
            const GaussRat& g = m(i, j);
            if (g.im != 0 || g.re.get_den() != 1) throw Error("flatten_int: non-integer entry");
            f(i, j) = g.re.get_num();
        }
    return f;
}

GaussMat ComplexMorphism::map_at(long k) const {
    if (k >= 0 && k < static_cast<long>(maps.size())) {
        const GaussMat& m = maps[k];
        if (m.nrows != 0 || m.ncols != 0) return m;
    }
    return GaussMat(target.rank_at(k), source.rank_at(k));
}

static bool ring_coercible(Ring from, Ring to) {
    if (from == to) return true;
    if (from == Ring::Z) return true;
    if (from == Ring::Q && to == Ring::QI) return true;
    return false;
}

void ComplexMorphism::validate() const {
    if (!ring_coercible(source.ring, target.ring)) throw Error("morphism: ring not coercible");
    long W = std::max(source.window(), target.window());
    for (long k = 0; k <= W; ++k) {
        GaussMat f = map_at(k);
        if (f.nrows != target.rank_at(k) || f.ncols != source.rank_at(k)) throw Error("morphism: shape mismatch");
        check_ring_entries(f, target.ring);
        GaussMat lhs = target.diff_at(k) * f;
        GaussMat rhs = map_at(k + 1) * source.diff_at(k);
        if (!(lhs - rhs).is_zero())
            throw Error("morphism: does not commute with differentials at degree " + std::to_string(k));
    }
}

ComplexMorphism identity_morphism(const CochainComplex& c) {
    ComplexMorphism f{c, c, {}};
    for (long k = 0; k <= c.window(); ++k) {
        GaussMat id(c.rank_at(k), c.rank_at(k));
        for (long i = 0; i < id.nrows; ++i) id(i, i) = GaussRat(1);
        f.maps.push_back(std::move(id));
    }
    return f;
}

ComplexMorphism compose(const ComplexMorphism& g, const ComplexMorphism& f) {
    ComplexMorphism h{f.source, g.target, {}};
    long W = std::max(f.source.window(), g.target.window());
    for (long k = 0; k <= W; ++k) h.maps.push_back(g.map_at(k) * f.map_at(k));
    return h;
}

MixedSubgroup cocycles(const CochainComplex& c, long k) {
    auto [m, n] = mixed_ambient(c.ring, c.rank_at(k));
    MixedSubgroup s = MixedSubgroup::zero(m, n);
    if (c.rank_at(k) == 0) return s;
    if (c.ring == Ring::Z) {
        for (auto& v : int_kernel(flatten_int(c.diff_at(k)))) s.add_zgen({{}, v});
    } else {
        for (auto& v : kernel_basis(flatten_field(c.diff_at(k), c.ring))) s.add_qgen(v);
    }
    return s;
}

MixedSubgroup coboundaries(const CochainComplex& c, long k) {
    auto [m, n] = mixed_ambient(c.ring, c.rank_at(k));
    MixedSubgroup s = MixedSubgroup::zero(m, n);
    if (c.rank_at(k) == 0 || c.rank_at(k - 1) == 0) return s;
    if (c.ring == Ring::Z) {
        IntMat d = flatten_int(c.diff_at(k - 1));
        for (long j = 0; j < d.ncols; ++j) s.add_zgen({{}, d.col(j)});
    } else {
        RatMat d = flatten_field(c.diff_at(k - 1), c.ring);
        for (long j = 0; j < d.ncols; ++j) s.add_qgen(d.col(j));
    }
    return s;
}

QZModule cohomology(const CochainComplex& c, long k) {
    if (k < 0 || k > c.window()) return QZModule::trivial();
    return QZModule(cocycles(c, k), coboundaries(c, k));
}

long cohomology_rank(const CochainComplex& c, long k) {
    if (c.ring == Ring::Z) throw Error("cohomology_rank: field complexes only");
    auto inv = cohomology(c, k).normal_form();
    return c.ring == Ring::QI ? inv.divisible_rank / 2 : inv.divisible_rank;
}

MixedMap morphism_mixed_map(const ComplexMorphism& f, long k) {
    auto [m1, n1] = mixed_ambient(f.source.ring, f.source.rank_at(k));
    auto [m2, n2] = mixed_ambient(f.target.ring, f.target.rank_at(k));
    MixedMap g = MixedMap::make(m1, n1, m2, n2);
    GaussMat blk = f.map_at(k);
    if (f.source.ring == Ring::Z) {
        if (f.target.ring == Ring::Z)
            g.C = flatten_int(blk);
        else
            g.B = flatten_rows_only(blk, f.target.ring == Ring::QI);
    } else if (f.source.ring == f.target.ring) {
        g.A = flatten_field(blk, f.target.ring);
    } else if (f.source.ring == Ring::Q && f.target.ring == Ring::QI) {
        g.A = flatten_rows_only(blk, true);
    } else {
        throw Error("morphism_mixed_map: unsupported ring combination");
    }
    return g;
}

// The cone G^k = F^k + I^{k+1} starts at G^{-1} = I^0. To fit the non-negative
// window the returned complex is shifted by one degree: degree j holds G^{j-1}.
// cone_cohomology answers queries in unshifted cone degrees.
CochainComplex cone(const ComplexMorphism& psi) {
    const CochainComplex& I = psi.source;
    const CochainComplex& F = psi.target;
    if (I.ring != F.ring) throw Error("cone: use cone_cohomology for mixed rings");
    long W = std::max(F.window() + 1, I.window());  // shifted window
    CochainComplex g = CochainComplex::zero(F.ring, W);
    for (long j = 0; j <= W; ++j) g.ranks[j] = F.rank_at(j - 1) + I.rank_at(j);
    for (long j = 0; j < W; ++j) {
        long k = j - 1;  // unshifted cone degree
        long rF = F.rank_at(k), rI = I.rank_at(k + 1);
        long rF1 = F.rank_at(k + 1), rI1 = I.rank_at(k + 2);
        GaussMat d(rF1 + rI1, rF + rI);
        GaussMat dF = F.diff_at(k), P = psi.map_at(k + 1), dI = I.diff_at(k + 1);
        for (long i = 0; i < rF1; ++i) {
            for (long j2 = 0; j2 < rF; ++j2) d(i, j2) = dF(i, j2);
            for (long j2 = 0; j2 < rI; ++j2) d(i, rF + j2) = P(i, j2);
        }
        for (long i = 0; i < rI1; ++i)
            for (long j2 = 0; j2 < rI; ++j2) d(rF1 + i, rF + j2) = -dI(i, j2);
        g.set_diff(j, std::move(d));
    }
    g.validate();
    return g;
}

std::pair<long, long> cone_ambient(const ComplexMorphism& psi, long k) {
    auto [mF, nF] = mixed_ambient(psi.target.ring, psi.target.rank_at(k));
    auto [mI, nI] = mixed_ambient(psi.source.ring, psi.source.rank_at(k + 1));
    return {mF + mI, nF + nI};
}

MixedMap cone_differential(const ComplexMorphism& psi, long k) {
    const CochainComplex& I = psi.source;
    const CochainComplex& F = psi.target;
    auto [m1, n1] = cone_ambient(psi, k);
    auto [m2, n2] = cone_ambient(psi, k + 1);
    auto [mF1, nF1] = mixed_ambient(F.ring, F.rank_at(k));
    auto [mF2, nF2] = mixed_ambient(F.ring, F.rank_at(k + 1));
    (void)nF1;
    (void)nF2;
    MixedMap D = MixedMap::make(m1, n1, m2, n2);
    RatMat dF = flatten_field(F.diff_at(k), F.ring);
    for (long i = 0; i < dF.nrows; ++i)
        for (long j = 0; j < dF.ncols; ++j) D.A(i, j) = dF(i, j);
    GaussMat P = psi.map_at(k + 1);
    if (I.ring == Ring::Z) {
        RatMat Pf = flatten_rows_only(P, F.ring == Ring::QI);
        for (long i = 0; i < Pf.nrows; ++i)
            for (long j = 0; j < Pf.ncols; ++j) D.B(i, j) = Pf(i, j);
        IntMat dI = flatten_int(I.diff_at(k + 1));
        for (long i = 0; i < dI.nrows; ++i)
            for (long j = 0; j < dI.ncols; ++j) D.C(i, j) = -dI(i, j);
    } else {
        if (I.ring != F.ring && !(I.ring == Ring::Q && F.ring == Ring::QI))
            throw Error("cone_differential: unsupported ring combination");
        RatMat Pf = I.ring == F.ring ? flatten_field(P, F.ring) : flatten_rows_only(P, true);
        for (long i = 0; i < Pf.nrows; ++i)
            for (long j = 0; j < Pf.ncols; ++j) D.A(i, mF1 + j) = Pf(i, j);
        RatMat dI = flatten_field(I.diff_at(k + 1), I.ring);
        for (long i = 0; i < dI.nrows; ++i)
            for (long j = 0; j < dI.ncols; ++j) D.A(mF2 + i, mF1 + j) = -dI(i, j);
    }
    return D;
}

QZModule cone_cohomology(const ComplexMorphism& psi, long k) {
    auto [m, n] = cone_ambient(psi, k);
    MixedMap D = cone_differential(psi, k);
    RatMat Mq(D.m2 + D.n2, D.m1), Mz(D.m2 + D.n2, D.n1);
    for (long i = 0; i < D.m2; ++i) {
        for (long j = 0; j < D.m1; ++j) Mq(i, j) = D.A(i, j);
        for (long j = 0; j < D.n1; ++j) Mz(i, j) = D.B(i, j);
    }
    for (long i = 0; i < D.n2; ++i)
        for (long j = 0; j < D.n1; ++j) Mz(D.m2 + i, j) = Rat(D.C(i, j));
    MixedSubgroup num = mixed_kernel(Mq, Mz);
    // boundaries come from G^{k-1}, which is nonzero down to G^{-1} = I^0
    MixedSubgroup den = MixedSubgroup::zero(m, n);
    if (k >= 0) {
        MixedMap Dp = cone_differential(psi, k - 1);
        auto [mp, np] = cone_ambient(psi, k - 1);
        den = Dp.image(MixedSubgroup::full(mp, np));
    }
    return QZModule(std::move(num), std::move(den));
}

DoubleComplex DoubleComplex::zero(Ring ring, long max_r, long max_s) {
    DoubleComplex dc;
    dc.ring = ring;
    dc.max_r = max_r;
    dc.max_s = max_s;
    dc.ranks.assign(max_r + 1, std::vector<long>(max_s + 1, 0));
    dc.horiz.assign(max_r + 1, std::vector<GaussMat>(max_s + 1));
    dc.vert.assign(max_r + 1, std::vector<GaussMat>(max_s + 1));
    return dc;
}

GaussMat DoubleComplex::horiz_at(long r, long s) const {
    if (r >= 0 && s >= 0 && r <= max_r && s <= max_s) {
        const GaussMat& m = horiz[r][s];
        if (m.nrows != 0 || m.ncols != 0) return m;
    }
    return GaussMat(rank_at(r + 1, s), rank_at(r, s));
}
GaussMat DoubleComplex::vert_at(long r, long s) const {
    if (r >= 0 && s >= 0 && r <= max_r && s <= max_s) {
        const GaussMat& m = vert[r][s];
        if (m.nrows != 0 || m.ncols != 0) return m;
    }
    return GaussMat(rank_at(r, s + 1), rank_at(r, s));
}

void DoubleComplex::validate() const {
    for (long r = 0; r <= max_r; ++r)
        for (long s = 0; s <= max_s; ++s) {
            if (!(horiz_at(r + 1, s) * horiz_at(r, s)).is_zero()) throw Error("double complex: delta^2 != 0");
            if (!(vert_at(r, s + 1) * vert_at(r, s)).is_zero()) throw Error("double complex: d^2 != 0");
            GaussMat a = vert_at(r + 1, s) * horiz_at(r, s);
            GaussMat b = horiz_at(r, s + 1) * vert_at(r, s);
            if (!(a - b).is_zero()) throw Error("double complex: differentials do not commute");
        }
}

long DoubleComplex::block_offset(long r, long s) const {
    long k = r + s, off = 0;
    for (long r2 = 0; r2 < r; ++r2) off += rank_at(r2, k - r2);
    return off;
}

CochainComplex total_complex(const DoubleComplex& dc) {
    long W = dc.max_r + dc.max_s;
    CochainComplex c = CochainComplex::zero(dc.ring, W + 1);
    for (long k = 0; k <= W + 1; ++k) {
        long rk = 0;
        for (long r = 0; r <= std::min(k, dc.max_r); ++r) rk += dc.rank_at(r, k - r);
        c.ranks[k] = rk;
    }
    for (long k = 0; k <= W; ++k) {
        GaussMat d(c.ranks[k + 1], c.ranks[k]);
        for (long r = 0; r <= std::min(k, dc.max_r); ++r) {
            long s = k - r;
            if (dc.rank_at(r, s) == 0) continue;
            long src = dc.block_offset(r, s);
            GaussMat h = dc.horiz_at(r, s);
            if (h.nrows > 0) {
                long dst = dc.block_offset(r + 1, s);
                for (long i = 0; i < h.nrows; ++i)
                    for (long j = 0; j < h.ncols; ++j) d(dst + i, src + j) += h(i, j);
            }
            GaussMat v = dc.vert_at(r, s);
            if (v.nrows > 0) {
                long dst = dc.block_offset(r, s + 1);
                GaussRat sign = (r % 2 == 0) ? GaussRat(1) : GaussRat(-1);
                for (long i = 0; i < v.nrows; ++i)
                    for (long j = 0; j < v.ncols; ++j) d(dst + i, src + j) += sign * v(i, j);
            }
        }
        c.set_diff(k, std::move(d));
    }
    c.validate();
    return c;
}

BigradedComplex BigradedComplex::zero(Ring ring, long max_r, long max_s) {
    BigradedComplex b;
    b.ring = ring;
    b.max_r = max_r;
    b.max_s = max_s;
    b.ranks.assign(max_r + 1, std::vector<long>(max_s + 1, 0));
    b.del.assign(max_r + 1, std::vector<GaussMat>(max_s + 1));
    b.delbar.assign(max_r + 1, std::vector<GaussMat>(max_s + 1));
    return b;
}

GaussMat BigradedComplex::del_at(long r, long s) const {
    if (r >= 0 && s >= 0 && r <= max_r && s <= max_s) {
        const GaussMat& m = del[r][s];
        if (m.nrows != 0 || m.ncols != 0) return m;
    }
    return GaussMat(rank_at(r + 1, s), rank_at(r, s));
}
GaussMat BigradedComplex::delbar_at(long r, long s) const {
    if (r >= 0 && s >= 0 && r <= max_r && s <= max_s) {
        const GaussMat& m = delbar[r][s];
        if (m.nrows != 0 || m.ncols != 0) return m;
    }
    return GaussMat(rank_at(r, s + 1), rank_at(r, s));
}

void BigradedComplex::validate() const {
    for (long r = 0; r <= max_r; ++r)
        for (long s = 0; s <= max_s; ++s) {
            if (!(del_at(r + 1, s) * del_at(r, s)).is_zero()) throw Error("bigraded: del^2 != 0");
            if (!(delbar_at(r, s + 1) * delbar_at(r, s)).is_zero()) throw Error("bigraded: delbar^2 != 0");
            GaussMat a = delbar_at(r + 1, s) * del_at(r, s);
            GaussMat b = del_at(r, s + 1) * delbar_at(r, s);
            if (!(a + b).is_zero()) throw Error("bigraded: del delbar + delbar del != 0");
        }
}

long BigradedComplex::block_offset(long r, long s) const {
    long k = r + s, off = 0;
    for (long r2 = 0; r2 < r; ++r2) off += rank_at(r2, k - r2);
    return off;
}

CochainComplex BigradedComplex::total() const {
    long W = max_r + max_s;
    CochainComplex c = CochainComplex::zero(ring, W + 1);
    for (long k = 0; k <= W + 1; ++k) {
        long rk = 0;
        for (long r = 0; r <= std::min(k, max_r); ++r) rk += rank_at(r, k - r);
        c.ranks[k] = rk;
    }
    for (long k = 0; k <= W; ++k) {
        GaussMat d(c.ranks[k + 1], c.ranks[k]);
        for (long r = 0; r <= std::min(k, max_r); ++r) {
            long s = k - r;
            if (rank_at(r, s) == 0) continue;
            long src = block_offset(r, s);
            GaussMat h = del_at(r, s);
            if (h.nrows > 0) {
                long dst = block_offset(r + 1, s);
                for (long i = 0; i < h.nrows; ++i)
                    for (long j = 0; j < h.ncols; ++j) d(dst + i, src + j) += h(i, j);
            }
            GaussMat v = delbar_at(r, s);
            if (v.nrows > 0) {
                long dst = block_offset(r, s + 1);
                for (long i = 0; i < v.nrows; ++i)
                    for (long j = 0; j < v.ncols; ++j) d(dst + i, src + j) += v(i, j);
            }
        }
        c.set_diff(k, std::move(d));
    }
    c.validate();
    return c;
}

Truncation truncate_level(const BigradedComplex& b, long p) {
    if (p < 1) throw Error("truncate_level: p >= 1 required");
    BigradedComplex bp = BigradedComplex::zero(b.ring, std::min(b.max_r, p - 1), b.max_s);
    for (long r = 0; r <= bp.max_r; ++r)
        for (long s = 0; s <= bp.max_s; ++s) {
            bp.ranks[r][s] = b.rank_at(r, s);
            if (r + 1 <= bp.max_r) bp.del[r][s] = b.del_at(r, s);
            bp.delbar[r][s] = b.delbar_at(r, s);
        }
    bp.validate();
    Truncation t{bp.total(), {}, bp};

    CochainComplex full = b.total();
    ComplexMorphism pi{full, t.complex, {}};
    long W = std::max(full.window(), t.complex.window());
    for (long k = 0; k <= W; ++k) {
        GaussMat m(t.complex.rank_at(k), full.rank_at(k));
        for (long r = 0; r <= std::min({k, b.max_r, p - 1}); ++r) {
            long s = k - r;
            if (b.rank_at(r, s) == 0) continue;
            long src = b.block_offset(r, s), dst = bp.block_offset(r, s);
            for (long i = 0; i < b.rank_at(r, s); ++i) m(dst + i, src + i) = GaussRat(1);
        }
        pi.maps.push_back(std::move(m));
    }
    pi.validate();  // the dropped pieces are d-stable, so pi is a cochain map
    t.pi = std::move(pi);
    return t;
}

std::string QuasiIsoReport::to_string() const {
    std::ostringstream os;
    os << (is_quasi_iso ? "quasi-isomorphism" : "NOT a quasi-isomorphism");
    for (auto& d : degrees)
        os << "\n  H^" << d.k << ": " << (d.injective ? "injective" : "NOT injective") << ", "
           << (d.surjective ? "surjective" : "NOT surjective");
    return os.str();
}

QuasiIsoReport is_quasi_isomorphism(const ComplexMorphism& f) {
    QuasiIsoReport rep;
    long W = std::max(f.source.window(), f.target.window());
    for (long k = 0; k <= W; ++k) {
        MixedSubgroup zs = cocycles(f.source, k), bs = coboundaries(f.source, k);
        MixedSubgroup zt = cocycles(f.target, k), bt = coboundaries(f.target, k);
        MixedMap g = morphism_mixed_map(f, k);
        QuasiIsoReport::Degree d;
        d.k = k;
        d.injective = map_injective_on_classes(g, zs, bs, zt, bt);
        d.surjective = map_surjective_on_classes(g, zs, zt, bt);
        rep.is_quasi_iso = rep.is_quasi_iso && d.injective && d.surjective;
        rep.degrees.push_back(d);
    }
    return rep;
}

}  // namespace sparkforge
