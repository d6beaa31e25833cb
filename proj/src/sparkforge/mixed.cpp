#include "mixed.hpp"

#include <sstream>

namespace sparkforge {

namespace {

/// RREF'd Q-subspace of Q^m with coset reduction.
struct QSpan {
    long m = 0;
    RatMat rows{0, 0};  // r x m, RREF, no zero rows
    std::vector<long> pivots;

    static QSpan from(const std::vector<std::vector<Rat>>& gens, long m) {
        QSpan s;
        s.m = m;
        if (gens.empty()) {
            s.rows = RatMat(0, m);
            return s;
        }
        RatMat A(static_cast<long>(gens.size()), m);
        for (long i = 0; i < A.nrows; ++i)
            for (long j = 0; j < m; ++j) A(i, j) = gens[i][j];
        auto piv = rref(A);
        s.rows = RatMat(static_cast<long>(piv.size()), m);
        for (long i = 0; i < s.rows.nrows; ++i)
            for (long j = 0; j < m; ++j) s.rows(i, j) = A(i, j);
        s.pivots = piv;
        return s;
    }

    long dim() const { return rows.nrows; }

    /// canonical coset representative (pivot coordinates cleared); optionally
    /// records the coefficients used, in terms of the RREF basis rows
    std::vector<Rat> reduce(std::vector<Rat> x, std::vector<Rat>* coeffs = nullptr) const {
        if (coeffs) coeffs->assign(static_cast<size_t>(rows.nrows), Rat(0));
        for (long i = 0; i < rows.nrows; ++i) {
            Rat c = x[pivots[i]];
            if (c == 0) continue;
            if (coeffs) (*coeffs)[i] = c;
            for (long j = 0; j < m; ++j) x[j] -= c * rows(i, j);
        }
        return x;
    }

    bool contains(const std::vector<Rat>& x) const { return vec_is_zero(reduce(x)); }
};

}  // namespace

MixedSubgroup MixedSubgroup::full(long m, long n) {
    MixedSubgroup s{m, n, {}, {}};
    for (long i = 0; i < m; ++i) {
        std::vector<Rat> g(m);
        g[i] = 1;
        s.qgens.push_back(std::move(g));
    }
    for (long i = 0; i < n; ++i) {
        MixedVec v = MixedVec::zero(m, n);
        v.z[i] = 1;
        s.zgens.push_back(std::move(v));
    }
    return s;
}

void MixedSubgroup::add_qgen(std::vector<Rat> g) {
    if (static_cast<long>(g.size()) != m) throw Error("qgen size mismatch");
    if (!vec_is_zero(g)) qgens.push_back(std::move(g));
}

void MixedSubgroup::add_zgen(MixedVec g) {
    if (static_cast<long>(g.q.size()) != m || static_cast<long>(g.z.size()) != n) throw Error("zgen size mismatch");
    if (!g.is_zero()) zgens.push_back(std::move(g));
}

MixedSubgroup MixedSubgroup::sum(const MixedSubgroup& o) const {
    if (m != o.m || n != o.n) throw Error("subgroup sum: ambient mismatch");
    MixedSubgroup s = *this;
    s.qgens.insert(s.qgens.end(), o.qgens.begin(), o.qgens.end());
    s.zgens.insert(s.zgens.end(), o.zgens.begin(), o.zgens.end());
    return s;
}

bool MixedSubgroup::contains(const MixedVec& x) const {
    if (static_cast<long>(x.q.size()) != m || static_cast<long>(x.z.size()) != n) throw Error("contains: size mismatch");
    QSpan Q = QSpan::from(qgens, m);
    std::vector<Rat> r = Q.reduce(x.q);
    // residual must be an integer combination of the reduced zgens
    long rows = m + n, cols = static_cast<long>(zgens.size());
    RatMat M(rows, cols + 1);
    for (long j = 0; j < cols; ++j) {
        auto rq = Q.reduce(zgens[j].q);
        for (long i = 0; i < m; ++i) M(i, j) = rq[i];
        for (long i = 0; i < n; ++i) M(m + i, j) = Rat(zgens[j].z[i]);
    }
    for (long i = 0; i < m; ++i) M(i, cols) = r[i];
    for (long i = 0; i < n; ++i) M(m + i, cols) = Rat(x.z[i]);
    auto [d, Mi] = clear_denominators(M);
    IntMat A(rows, cols);
    std::vector<Int> b(rows);
    for (long i = 0; i < rows; ++i) {
        for (long j = 0; j < cols; ++j) A(i, j) = Mi(i, j);
        b[i] = Mi(i, cols);
    }
    return int_solve(A, b).has_value();
}

bool MixedSubgroup::contains_divisible(const std::vector<Rat>& g) const {
    // Q*g lies in the subgroup iff g is in the span of the divisible part
    return QSpan::from(qgens, m).contains(g);
}

bool MixedSubgroup::contains_subgroup(const MixedSubgroup& o) const {
    for (auto& g : o.qgens)
        if (!contains_divisible(g)) return false;
    for (auto& g : o.zgens)
        if (!contains(g)) return false;
    return true;
}

std::string AbelianInvariants::to_string() const {
    std::ostringstream os;
    bool first = true;
    auto sep = [&]() {
        if (!first) os << " + ";
        first = false;
    };
    if (divisible_rank) {
        sep();
        os << "Q";
        if (divisible_rank > 1) os << "^" << divisible_rank;
    }
    if (qz_rank) {
        sep();
        os << "(Q/Z)";
        if (qz_rank > 1) os << "^" << qz_rank;
    }
    if (free_rank) {
        sep();
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
    }
    for (auto& t : torsion) {
        sep();
        os << "Z/" << t.get_str();
    }
    if (first) os << "0";
    return os.str();
}

AbelianInvariants quotient_invariants(const MixedSubgroup& num, const MixedSubgroup& den) {
    if (num.m != den.m || num.n != den.n) throw Error("quotient: ambient mismatch");
    if (!num.contains_subgroup(den)) throw Error("quotient: relation outside generated subgroup");

    QSpan Q = QSpan::from(num.qgens, num.m);
    long d = Q.dim();

    // canonical images of the discrete generators in ambient/Q
    std::vector<std::vector<Rat>> num_red, den_red;
    for (auto& g : num.zgens) num_red.push_back(Q.reduce(g.q));
    for (auto& g : den.zgens) den_red.push_back(Q.reduce(g.q));

    Int D = 1;
    auto lcm_in = [&D](const std::vector<Rat>& v) {
        for (auto& q : v) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), q.get_den().get_mpz_t());
    };
    for (auto& v : num_red) lcm_in(v);
    for (auto& v : den_red) lcm_in(v);

    long c_amb = static_cast<long>(num.zgens.size());
    long rows = num.m + num.n;
    IntMat G(rows, c_amb);
    for (long j = 0; j < c_amb; ++j) {
        for (long i = 0; i < num.m; ++i) {
            Rat v = num_red[j][i] * D;
            G(i, j) = v.get_num();
        }
        for (long i = 0; i < num.n; ++i) G(num.m + i, j) = num.zgens[j].z[i];
    }
    // basis of the image lattice, with lifts expressed through the original zgens
    auto gsnf = smith_normal_form(G);
    long c = gsnf.rank;
    IntMat GV = G * gsnf.V;
    IntMat Gbasis(rows, c);
    for (long j = 0; j < c; ++j)
        for (long i = 0; i < rows; ++i) Gbasis(i, j) = GV(i, j);
    std::vector<MixedVec> lifts;
    for (long k = 0; k < c; ++k) {
        MixedVec lift = MixedVec::zero(num.m, num.n);
        for (long j = 0; j < c_amb; ++j) {
            const Int& f = gsnf.V(j, k);
            if (f == 0) continue;
            for (long i = 0; i < num.m; ++i) lift.q[i] += Rat(f) * num.zgens[j].q[i];
            for (long i = 0; i < num.n; ++i) lift.z[i] += f * num.zgens[j].z[i];
        }
        lifts.push_back(std::move(lift));
    }

    // express each discrete relation as (coords in Q^d | coords in Z^c)
    long u = static_cast<long>(den.zgens.size());
    RatMat qpart(u, d);
    IntMat npart(u, c);
    for (long r = 0; r < u; ++r) {
        std::vector<Int> img(rows);
        for (long i = 0; i < num.m; ++i) {
            Rat v = den_red[r][i] * D;
            img[i] = v.get_num();
        }
        for (long i = 0; i < num.n; ++i) img[num.m + i] = den.zgens[r].z[i];
        auto k = int_solve(Gbasis, img);
        if (!k) throw Error("quotient: relation image not in generator lattice");
        MixedVec residual = den.zgens[r];
        for (long j = 0; j < c; ++j) {
            if ((*k)[j] == 0) continue;
            for (long i = 0; i < num.m; ++i) residual.q[i] -= Rat((*k)[j]) * lifts[j].q[i];
            for (long i = 0; i < num.n; ++i) residual.z[i] -= (*k)[j] * lifts[j].z[i];
            npart(r, j) = (*k)[j];
        }
        if (!vec_is_zero(residual.z)) throw Error("quotient: internal decomposition failure");
        std::vector<Rat> coeffs;
        auto rem = Q.reduce(residual.q, &coeffs);
        if (!vec_is_zero(rem)) throw Error("quotient: internal decomposition failure");
        for (long i = 0; i < d; ++i) qpart(r, i) = coeffs[i];
    }

    // divisible relations in Q^d coordinates
    std::vector<std::vector<Rat>> qrel_coords;
    for (auto& g : den.qgens) {
        std::vector<Rat> coeffs;
        auto rem = Q.reduce(g, &coeffs);
        if (!vec_is_zero(rem)) throw Error("quotient: divisible relation outside divisible part");
        qrel_coords.push_back(std::move(coeffs));
    }
    QSpan Qp = QSpan::from(qrel_coords, d);
    long dp = Qp.dim();
    // complement coordinates of Q' inside Q^d
    std::vector<long> keep;
    {
        std::vector<bool> is_piv(static_cast<size_t>(d), false);
        for (long p : Qp.pivots) is_piv[static_cast<size_t>(p)] = true;
        for (long i = 0; i < d; ++i)
            if (!is_piv[static_cast<size_t>(i)]) keep.push_back(i);
    }
    long dd = d - dp;

    // SNF on the integer relation block; transform the q-block by the same U
    auto nsnf = smith_normal_form(npart);
    long t = nsnf.rank;
    RatMat qU(u, dd);
    for (long i = 0; i < u; ++i) {
        std::vector<Rat> row(static_cast<size_t>(d), Rat(0));
        for (long j = 0; j < u; ++j) {
            const Int& f = nsnf.U(i, j);
            if (f == 0) continue;
            for (long k2 = 0; k2 < d; ++k2) row[k2] += Rat(f) * qpart(j, k2);
        }
        auto red = Qp.reduce(row);
        for (long k2 = 0; k2 < dd; ++k2) qU(i, k2) = red[keep[k2]];
    }
    // pure rational relations = rows past the SNF rank
    std::vector<std::vector<Rat>> pure;
    for (long i = t; i < u; ++i) {
        std::vector<Rat> row(static_cast<size_t>(dd));
        for (long k2 = 0; k2 < dd; ++k2) row[k2] = qU(i, k2);
        if (!vec_is_zero(row)) pure.push_back(std::move(row));
    }
    long d0 = QSpan::from(pure, dd).dim();

    AbelianInvariants inv;
    inv.divisible_rank = dd - d0;
    inv.qz_rank = d0;
    inv.free_rank = c - t;
    for (long i = 0; i < t; ++i)
        if (nsnf.S(i, i) >= 2) inv.torsion.push_back(nsnf.S(i, i));
    return inv;
}

MixedSubgroup mixed_kernel(const RatMat& Mq, const RatMat& Mz) {
    if (Mq.nrows != Mz.nrows) throw Error("mixed_kernel: row mismatch");
    long a = Mq.ncols, b = Mz.ncols;
    MixedSubgroup s = MixedSubgroup::zero(a, b);
    for (auto& v : kernel_basis(Mq)) s.add_qgen(v);
    // lattice of integer vectors v with Mz*v in the column space of Mq
    auto L = kernel_basis(Mq.transpose());
    RatMat C(static_cast<long>(L.size()), b);
    for (long r = 0; r < C.nrows; ++r)
        for (long j = 0; j < b; ++j) {
            Rat acc = 0;
            for (long i = 0; i < Mz.nrows; ++i)
                if (L[r][i] != 0 && Mz(i, j) != 0) acc += L[r][i] * Mz(i, j);
            C(r, j) = acc;
        }
    auto [D, Ci] = clear_denominators(C);
    for (auto& v : int_kernel(Ci)) {
        std::vector<Rat> rhs(static_cast<size_t>(Mq.nrows), Rat(0));
        for (long i = 0; i < Mq.nrows; ++i)
            for (long j = 0; j < b; ++j)
                if (v[j] != 0 && Mz(i, j) != 0) rhs[i] -= Rat(v[j]) * Mz(i, j);
        auto u = field_solve(Mq, rhs);
        if (!u) throw Error("mixed_kernel: internal inconsistency");
        s.add_zgen({std::move(*u), std::move(v)});
    }
    return s;
}

std::optional<std::pair<std::vector<Rat>, std::vector<Int>>> mixed_solve(const RatMat& Mq, const RatMat& Mz,
                                                                         const std::vector<Rat>& rhs) {
    if (Mq.nrows != Mz.nrows || static_cast<long>(rhs.size()) != Mq.nrows) throw Error("mixed_solve: size mismatch");
    long b = Mz.ncols;
    auto L = kernel_basis(Mq.transpose());
    RatMat C(static_cast<long>(L.size()), b + 1);
    for (long r = 0; r < C.nrows; ++r) {
        for (long j = 0; j < b; ++j) {
            Rat acc = 0;
            for (long i = 0; i < Mz.nrows; ++i)
                if (L[r][i] != 0 && Mz(i, j) != 0) acc += L[r][i] * Mz(i, j);
            C(r, j) = acc;
        }
        Rat acc = 0;
        for (long i = 0; i < Mz.nrows; ++i)
            if (L[r][i] != 0 && rhs[i] != 0) acc += L[r][i] * rhs[i];
        C(r, b) = acc;
    }
    auto [D, Ci] = clear_denominators(C);
    IntMat A(C.nrows, b);
    std::vector<Int> bb(static_cast<size_t>(C.nrows));
    for (long i = 0; i < C.nrows; ++i) {
        for (long j = 0; j < b; ++j) A(i, j) = Ci(i, j);
        bb[i] = Ci(i, b);
    }
    auto v = int_solve(A, bb);
    if (!v) return std::nullopt;
    std::vector<Rat> rem = rhs;
    for (long i = 0; i < Mq.nrows; ++i)
        for (long j = 0; j < b; ++j)
            if ((*v)[j] != 0 && Mz(i, j) != 0) rem[i] -= Rat((*v)[j]) * Mz(i, j);
    auto u = field_solve(Mq, rem);
    if (!u) return std::nullopt;  // cannot happen when the left-kernel conditions hold
    return std::make_pair(std::move(*u), std::move(*v));
}

MixedMap MixedMap::make(long m1, long n1, long m2, long n2) {
    MixedMap f;
    f.m1 = m1;
    f.n1 = n1;
    f.m2 = m2;
    f.n2 = n2;
    f.A = RatMat(m2, m1);
    f.B = RatMat(m2, n1);
    f.C = IntMat(n2, n1);
    return f;
}

MixedMap MixedMap::identity(long m, long n) {
    MixedMap f = make(m, n, m, n);
    for (long i = 0; i < m; ++i) f.A(i, i) = 1;
    for (long i = 0; i < n; ++i) f.C(i, i) = 1;
    return f;
}

MixedVec MixedMap::apply(const MixedVec& x) const {
    if (static_cast<long>(x.q.size()) != m1 || static_cast<long>(x.z.size()) != n1)
        throw Error("MixedMap::apply: size mismatch");
    MixedVec y = MixedVec::zero(m2, n2);
    for (long i = 0; i < m2; ++i) {
        Rat acc = 0;
        for (long j = 0; j < m1; ++j)
            if (A(i, j) != 0 && x.q[j] != 0) acc += A(i, j) * x.q[j];
        for (long j = 0; j < n1; ++j)
            if (B(i, j) != 0 && x.z[j] != 0) acc += B(i, j) * Rat(x.z[j]);
        y.q[i] = acc;
    }
    for (long i = 0; i < n2; ++i) {
        Int acc = 0;
        for (long j = 0; j < n1; ++j)
            if (C(i, j) != 0 && x.z[j] != 0) acc += C(i, j) * x.z[j];
        y.z[i] = acc;
    }
    return y;
}

MixedSubgroup MixedMap::image(const MixedSubgroup& s) const {
    if (s.m != m1 || s.n != n1) throw Error("MixedMap::image: ambient mismatch");
    MixedSubgroup out = MixedSubgroup::zero(m2, n2);
    for (auto& g : s.qgens) out.add_qgen(A.apply(g));
    for (auto& g : s.zgens) out.add_zgen(apply(g));
    return out;
}

MixedMap MixedMap::compose(const MixedMap& inner) const {
    if (inner.m2 != m1 || inner.n2 != n1) throw Error("MixedMap::compose: mismatch");
    MixedMap f = make(inner.m1, inner.n1, m2, n2);
    f.A = A * inner.A;
    // B-block: A * B_inner + B * C_inner (C_inner promoted to rationals)
    RatMat Cq(inner.C.nrows, inner.C.ncols);
    for (long i = 0; i < Cq.nrows; ++i)
        for (long j = 0; j < Cq.ncols; ++j) Cq(i, j) = Rat(inner.C(i, j));
    f.B = A * inner.B + B * Cq;
    f.C = C * inner.C;
    return f;
}

MixedSubgroup preimage_in(const MixedMap& f, const MixedSubgroup& N, const MixedSubgroup& T) {
    if (N.m != f.m1 || N.n != f.n1 || T.m != f.m2 || T.n != f.n2) throw Error("preimage_in: ambient mismatch");
    long nc = static_cast<long>(N.qgens.size());
    long nw = static_cast<long>(T.qgens.size());
    long nk = static_cast<long>(N.zgens.size());
    long ny = static_cast<long>(T.zgens.size());
    long rows = f.m2 + f.n2;
    RatMat Mq(rows, nc + nw), Mz(rows, nk + ny);
    std::vector<MixedVec> fz;  // f(zgens of N), cached
    for (long j = 0; j < nc; ++j) {
        auto img = f.A.apply(N.qgens[j]);
        for (long i = 0; i < f.m2; ++i) Mq(i, j) = img[i];
    }
    for (long j = 0; j < nw; ++j)
        for (long i = 0; i < f.m2; ++i) Mq(i, nc + j) = -T.qgens[j][i];
    for (long j = 0; j < nk; ++j) {
        fz.push_back(f.apply(N.zgens[j]));
        for (long i = 0; i < f.m2; ++i) Mz(i, j) = fz[j].q[i];
        for (long i = 0; i < f.n2; ++i) Mz(f.m2 + i, j) = Rat(fz[j].z[i]);
    }
    for (long j = 0; j < ny; ++j) {
        for (long i = 0; i < f.m2; ++i) Mz(i, nk + j) = -T.zgens[j].q[i];
        for (long i = 0; i < f.n2; ++i) Mz(f.m2 + i, nk + j) = Rat(-T.zgens[j].z[i]);
    }
    MixedSubgroup sol = mixed_kernel(Mq, Mz);
    // assemble the x-part of each solution generator
    MixedSubgroup out = MixedSubgroup::zero(N.m, N.n);
    for (auto& g : sol.qgens) {
        std::vector<Rat> x(static_cast<size_t>(N.m), Rat(0));
        for (long j = 0; j < nc; ++j)
            if (g[j] != 0) x = vec_add(std::move(x), vec_scale(N.qgens[j], g[j]));
        out.add_qgen(std::move(x));
    }
    for (auto& g : sol.zgens) {
        MixedVec x = MixedVec::zero(N.m, N.n);
        for (long j = 0; j < nc; ++j)
            if (g.q[j] != 0) x.q = vec_add(std::move(x.q), vec_scale(N.qgens[j], g.q[j]));
        for (long j = 0; j < nk; ++j) {
            if (g.z[j] == 0) continue;
            for (long i = 0; i < N.m; ++i) x.q[i] += Rat(g.z[j]) * N.zgens[j].q[i];
            for (long i = 0; i < N.n; ++i) x.z[i] += g.z[j] * N.zgens[j].z[i];
        }
        out.add_zgen(std::move(x));
    }
    return out;
}

bool map_injective_on_classes(const MixedMap& f, const MixedSubgroup& num1, const MixedSubgroup& den1,
                              const MixedSubgroup& num2, const MixedSubgroup& den2) {
    (void)num2;
    MixedSubgroup bad = preimage_in(f, num1, den2);
    return den1.contains_subgroup(bad);
}

bool map_surjective_on_classes(const MixedMap& f, const MixedSubgroup& num1, const MixedSubgroup& num2,
                               const MixedSubgroup& den2) {
    MixedSubgroup reach = f.image(num1).sum(den2);
    return reach.contains_subgroup(num2);
}

}  // namespace sparkforge
