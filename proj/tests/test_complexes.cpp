#include <doctest.h>

#include "sparkforge/fixtures.hpp"
#include "sparkforge/nerve.hpp"
#include "sparkforge/rng.hpp"

using namespace sparkforge;

namespace {

GaussMat gident(long n) {
    GaussMat m(n, n);
    for (long i = 0; i < n; ++i) m(i, i) = GaussRat(1);
    return m;
}

/// random complex with guaranteed d.d = 0: a sum of two-term elementary pieces
/// and free generators, conjugated by random unimodular basis changes
CochainComplex random_complex(Rng& rng, Ring ring, long window = 3, long max_rank = 4) {
    // per degree: arrows[k] pairs sources in degree k with targets in degree k+1
    std::vector<long> arrows(static_cast<size_t>(window), 0), free_gens(static_cast<size_t>(window + 1), 0);
    for (long k = 0; k <= window; ++k) free_gens[k] = rng.range(0, max_rank / 2);
    for (long k = 0; k < window; ++k) arrows[k] = rng.range(0, max_rank / 2);
    CochainComplex c = CochainComplex::zero(ring, window);
    // basis at degree k: [targets of arrows from k-1 | sources of arrows to k+1 | free]
    for (long k = 0; k <= window; ++k) {
        long t = (k > 0) ? arrows[k - 1] : 0;
        c.ranks[k] = t + ((k < window) ? arrows[k] : 0) + free_gens[k];
    }
    for (long k = 0; k < window; ++k) {
        long t = (k > 0) ? arrows[k - 1] : 0;
        GaussMat d(c.ranks[k + 1], c.ranks[k]);
        for (long a = 0; a < arrows[k]; ++a) {
            long coeff = rng.range(1, 4);
            d(a, t + a) = GaussRat(Rat(coeff));
        }
        c.set_diff(k, std::move(d));
    }
    // conjugate by unimodular changes of basis (stays integral over Z)
    std::vector<IntMat> P;
    for (long k = 0; k <= window; ++k) P.push_back(rng.rand_unimodular(c.ranks[k], 8, 2));
    for (long k = 0; k < window; ++k) {
        GaussMat pk(c.ranks[k], c.ranks[k]), pk1inv(c.ranks[k + 1], c.ranks[k + 1]);
        // inverse of a unimodular integer matrix via rational solve
        RatMat pr(c.ranks[k + 1], c.ranks[k + 1]);
        for (long i = 0; i < pr.nrows; ++i)
            for (long j = 0; j < pr.ncols; ++j) pr(i, j) = Rat(P[k + 1](i, j));
        RatMat id(pr.nrows, pr.ncols);
        for (long i = 0; i < id.nrows; ++i) id(i, i) = 1;
        auto inv = field_solve_mat(pr, id);
        for (long i = 0; i < c.ranks[k]; ++i)
            for (long j = 0; j < c.ranks[k]; ++j) pk(i, j) = GaussRat(Rat(P[k](i, j)));
        for (long i = 0; i < c.ranks[k + 1]; ++i)
            for (long j = 0; j < c.ranks[k + 1]; ++j) pk1inv(i, j) = GaussRat((*inv)(i, j));
        c.diffs[k] = pk1inv * c.diff_at(k) * pk;
    }
    c.validate();
    return c;
}

}  // namespace

TEST_CASE("cohomology of the triangle circle") {
    CochainComplex c = circle_nerve().integral_cochains(3);
    auto h0 = cohomology(c, 0).normal_form();
    auto h1 = cohomology(c, 1).normal_form();
    CHECK(h0 == AbelianInvariants{0, 0, 1, {}});
    CHECK(h1 == AbelianInvariants{0, 0, 1, {}});
    // oracle: H^1 = Z^3 / im(delta) with im of rank 2 and trivial invariant factors
    auto s = smith_normal_form(flatten_int(c.diff_at(0)));
    CHECK(s.rank == 2);
    CHECK(s.S(0, 0) == 1);
    CHECK(s.S(1, 1) == 1);
}

TEST_CASE("cohomology of the zero complex") {
    CochainComplex c = CochainComplex::zero(Ring::Z, 3);
    for (long k = 0; k <= 3; ++k) CHECK(cohomology(c, k).normal_form().is_trivial());
}

TEST_CASE("cohomology of the 7-vertex torus nerve") {
    Nerve n = torus7_nerve();
    CHECK(n.count(0) == 7);
    CHECK(n.count(1) == 21);
    CHECK(n.count(2) == 14);
    CochainComplex c = n.integral_cochains(4);
    CHECK(cohomology(c, 0).normal_form() == AbelianInvariants{0, 0, 1, {}});
    CHECK(cohomology(c, 1).normal_form() == AbelianInvariants{0, 0, 2, {}});
    CHECK(cohomology(c, 2).normal_form() == AbelianInvariants{0, 0, 1, {}});
    CHECK(cohomology(c, 3).normal_form().is_trivial());
}

TEST_CASE("cone of the identity is acyclic on 20 random complexes") {
    Rng rng(555);
    for (int trial = 0; trial < 20; ++trial) {
        Ring ring = (trial % 2 == 0) ? Ring::Z : Ring::Q;
        CochainComplex c = random_complex(rng, ring);
        CochainComplex g = cone(identity_morphism(c));
        for (long k = 0; k <= g.window(); ++k) CHECK(cohomology(g, k).normal_form().is_trivial());
    }
}

TEST_CASE("cone of zero splits as a direct sum") {
    Rng rng(556);
    for (int trial = 0; trial < 10; ++trial) {
        CochainComplex f = random_complex(rng, Ring::Q, 3, 4);
        CochainComplex i = random_complex(rng, Ring::Q, 3, 4);
        ComplexMorphism zero{i, f, {}};
        zero.validate();
        CochainComplex g = cone(zero);  // shifted: degree j holds G^{j-1}
        for (long j = 0; j <= g.window(); ++j) {
            long expected = cohomology_rank(f, j - 1) + cohomology_rank(i, j);
            CHECK(cohomology_rank(g, j) == expected);
        }
    }
}

TEST_CASE("mixed cone cohomology on synthetic-T1: H^0(G) = Q/Z + Z") {
    SparkComplexTriple t = synthetic_t1_triple();
    auto inv = cone_cohomology(t.psi, 0).normal_form();
    CHECK(inv == AbelianInvariants{0, 1, 1, {}});
}

TEST_CASE("total complex of single-column and single-row double complexes") {
    Rng rng(77);
    CochainComplex c = random_complex(rng, Ring::Q, 3);
    // single column: r = 0 everywhere, vertical d = the complex differential
    DoubleComplex col = DoubleComplex::zero(Ring::Q, 0, c.window());
    for (long s = 0; s <= c.window(); ++s) {
        col.ranks[0][s] = c.rank_at(s);
        if (s < c.window()) col.vert[0][s] = c.diff_at(s);
    }
    col.validate();
    CochainComplex tot = total_complex(col);
    for (long k = 0; k <= c.window(); ++k) {
        CHECK(tot.rank_at(k) == c.rank_at(k));
        CHECK((tot.diff_at(k) - c.diff_at(k)).is_zero());
    }
    // single row: s = 0, horizontal delta = the differential
    DoubleComplex row = DoubleComplex::zero(Ring::Q, c.window(), 0);
    for (long r = 0; r <= c.window(); ++r) {
        row.ranks[r][0] = c.rank_at(r);
        if (r < c.window()) row.horiz[r][0] = c.diff_at(r);
    }
    row.validate();
    CochainComplex tot2 = total_complex(row);
    for (long k = 0; k <= c.window(); ++k) {
        CHECK(tot2.rank_at(k) == c.rank_at(k));
        CHECK((tot2.diff_at(k) - c.diff_at(k)).is_zero());
    }
}

TEST_CASE("level truncation: projection and degenerate cases") {
    // invariant-form model for n = 1: pieces (r,s) for r,s in {0,1}, zero differentials
    BigradedComplex b = BigradedComplex::zero(Ring::QI, 1, 1);
    b.ranks = {{1, 1}, {1, 1}};
    b.validate();

    auto t1 = truncate_level(b, 1);
    CHECK(t1.complex.rank_at(0) == 1);  // (0,0)
    CHECK(t1.complex.rank_at(1) == 1);  // (0,1) only
    CHECK(t1.complex.rank_at(2) == 0);

    auto thuge = truncate_level(b, 10);
    CochainComplex tot = b.total();
    for (long k = 0; k <= tot.window(); ++k) {
        CHECK(thuge.complex.rank_at(k) == tot.rank_at(k));
        CHECK((thuge.complex.diff_at(k) - tot.diff_at(k)).is_zero());
    }

    // pi is idempotent on the kept range: pi . embed = identity on the truncation
    // (projection matrices have a single 1 per kept coordinate, so pi pi^T = id)
    for (long k = 0; k <= t1.complex.window(); ++k) {
        GaussMat p = t1.pi.map_at(k);
        GaussMat ppt = p * p.transpose();
        CHECK((ppt - gident(p.nrows)).is_zero());
    }
}

TEST_CASE("quasi-isomorphism: identity yes, circle Z -> Q no") {
    Rng rng(9001);
    CochainComplex c = random_complex(rng, Ring::Q, 3);
    CHECK(is_quasi_isomorphism(identity_morphism(c)).is_quasi_iso);

    CochainComplex zc = circle_nerve().integral_cochains(3);
    CochainComplex qc = zc;
    qc.ring = Ring::Q;
    ComplexMorphism incl{zc, qc, {}};
    for (long k = 0; k <= zc.window(); ++k) incl.maps.push_back(gident(zc.rank_at(k)));
    incl.validate();
    auto rep = is_quasi_isomorphism(incl);
    CHECK(!rep.is_quasi_iso);
    CHECK(!rep.degrees[1].surjective);  // H^1: Z -> Q is not surjective
    CHECK(rep.degrees[1].injective);
}

TEST_CASE("induced cohomology maps are functorial on random composable morphisms") {
    Rng rng(31337);
    for (int trial = 0; trial < 10; ++trial) {
        CochainComplex c = random_complex(rng, Ring::Q, 3);
        // f: c -> c scaling by 3, g: c -> c scaling by -2; classes must compose
        ComplexMorphism f{c, c, {}}, g{c, c, {}};
        for (long k = 0; k <= c.window(); ++k) {
            GaussMat m3 = gident(c.rank_at(k)), m2 = gident(c.rank_at(k));
            for (auto& x : m3.a) x = x * GaussRat(3);
            for (auto& x : m2.a) x = x * GaussRat(-2);
            f.maps.push_back(m3);
            g.maps.push_back(m2);
        }
        f.validate();
        g.validate();
        ComplexMorphism gf = compose(g, f);
        for (long k = 0; k <= c.window(); ++k) {
            QZModule h = cohomology(c, k);
            for (auto& z : cocycles(c, k).qgens) {
                MixedVec v = MixedVec::zero(h.generators().m, h.generators().n);
                v.q = z;
                MixedVec via_parts = morphism_mixed_map(g, k).apply(morphism_mixed_map(f, k).apply(v));
                MixedVec via_comp = morphism_mixed_map(gf, k).apply(v);
                CHECK(h.same_class(via_parts, via_comp));
            }
        }
    }
}
