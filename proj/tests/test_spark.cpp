#include <doctest.h>

#include "sparkforge/fixtures.hpp"
#include "sparkforge/rng.hpp"

using namespace sparkforge;

namespace {

std::vector<GaussRat> gv(std::initializer_list<long> xs) {
    std::vector<GaussRat> v;
    for (long x : xs) v.emplace_back(Rat(x));
    return v;
}

}  // namespace

TEST_CASE("axiom validator: good fixtures pass") {
    CHECK(validate(point_triple()).pass);
    CHECK(validate(synthetic_t1_triple()).pass);
    CHECK(validate(synthetic_torsion_triple()).pass);
    CHECK(validate(acyclic_triple()).pass);
}

TEST_CASE("axiom validator: broken T1 fails axiom 1 with witness w") {
    auto rep = validate(synthetic_t1_broken_triple());
    CHECK(!rep.pass);
    bool axiom1_at_1 = false;
    for (auto& v : rep.violations)
        if (v.axiom == 1 && v.degree == 1) {
            axiom1_at_1 = true;
            REQUIRE(v.witness.size() == 1);  // F^1 = Q<w>
            CHECK(!v.witness[0].is_zero());
        }
    CHECK(axiom1_at_1);
}

TEST_CASE("axiom validator: non-injective psi in degree 0") {
    // two copies of Z both mapping to the same line in F^0
    SparkComplexTriple t = point_triple();
    CochainComplex I = CochainComplex::zero(Ring::Z, 2);
    I.ranks[0] = 2;
    t.I = I;
    GaussMat p(1, 2);
    p(0, 0) = GaussRat(1);
    p(0, 1) = GaussRat(1);
    t.psi = ComplexMorphism{I, t.F, {p}};
    t.psi.validate();
    auto rep = validate(t);
    CHECK(!rep.pass);
    bool ax3 = false;
    for (auto& v : rep.violations) ax3 = ax3 || v.axiom == 3;
    CHECK(ax3);
}

TEST_CASE("spark class groups of the shipped fixtures") {
    CHECK(spark_class_group(point_triple(), 0).normal_form() == AbelianInvariants{0, 1, 0, {}});
    CHECK(spark_class_group(synthetic_t1_triple(), 0).normal_form() == AbelianInvariants{0, 1, 1, {}});
    CHECK(spark_class_group(synthetic_torsion_triple(), 0).normal_form() == AbelianInvariants{0, 0, 0, {Int(2)}});
    // above the degree window everything vanishes
    CHECK(spark_class_group(synthetic_t1_triple(), 5).normal_form().is_trivial());
    for (long k = 0; k <= 2; ++k) CHECK(spark_class_group(acyclic_triple(), k).normal_form().is_trivial());
}

TEST_CASE("delta1 and delta2 on synthetic-T1") {
    SparkComplexTriple t = synthetic_t1_triple();
    // spark (a, r) = (x u - n v, n beta): delta2 = n [beta], delta1 = 0
    for (long n = -2; n <= 2; ++n) {
        Spark s = make_spark(t, 0, {GaussRat(Rat(7, 3)), GaussRat(Rat(-n))}, {GaussRat(Rat(n))});
        auto e = delta1(t, s);
        CHECK(vec_is_zero(e));  // E^1 = 0
        auto r = delta2(t, s);
        CHECK(r[0] == GaussRat(Rat(n)));
    }
    // a non-spark representative is rejected
    CHECK_THROWS_AS(delta1(t, make_spark(t, 0, gv({0, 1}), gv({0}))), Error);
}

TEST_CASE("delta1/delta2 are representative-independent (100 random changes)") {
    SparkComplexTriple t = synthetic_torsion_triple();
    QZModule h1 = cohomology(t.I, 1);
    Rng rng(2024);
    // base spark: (a, r) = (-1/2, beta)
    Spark base = make_spark(t, 0, {GaussRat(Rat(-1, 2))}, {GaussRat(1)});
    auto e0 = delta1(t, base);
    auto r0 = delta2(t, base);
    AmbientLayout li;
    li.add(Ring::Z, 1);
    for (int trial = 0; trial < 100; ++trial) {
        // change by (b, s) in F^{-1} + I^0 = I^0: a += psi(s), r -= d s
        long sc = rng.range(-5, 5);
        std::vector<GaussRat> a = {GaussRat(Rat(-1, 2)) + GaussRat(Rat(sc))};
        std::vector<GaussRat> r = {GaussRat(Rat(1 - 2 * sc))};
        Spark moved = make_spark(t, 0, a, r);
        CHECK(delta1(t, moved) == e0);
        // delta2 changes by a coboundary only
        MixedVec d2a = li.embed(0, delta2(t, moved));
        MixedVec d2b = li.embed(0, r0);
        CHECK(h1.same_class(d2a, d2b));
    }
}

TEST_CASE("grid 3x3 on synthetic-T1 at degree 0") {
    auto g = grid_3x3(synthetic_t1_triple(), 0);
    CHECK(g.all_exact);
    CHECK(g.squares_commute);
    CHECK(g.lemma25_ok);
    CHECK(g.group[1][0].normal_form() == AbelianInvariants{0, 1, 1, {}});  // H^0(G)
    CHECK(g.group[1][1].normal_form() == AbelianInvariants{0, 1, 1, {}});  // Hhat^0
    CHECK(g.group[1][2].normal_form().is_trivial());                        // Z_I^1(E) = 0
    CHECK(g.group[0][0].normal_form() == AbelianInvariants{0, 1, 0, {}});  // H^0(E)/H_I = Q/Z
    CHECK(g.group[2][1].normal_form() == AbelianInvariants{0, 0, 1, {}});  // H^1(I) = Z
}

TEST_CASE("grid 3x3 on the point fixture") {
    auto g = grid_3x3(point_triple(), 0);
    CHECK(g.all_exact);
    CHECK(g.lemma25_ok);
    CHECK(g.group[0][1].normal_form() == AbelianInvariants{0, 1, 0, {}});  // HhatE^0 = Q/Z
    for (int j = 0; j < 3; ++j) CHECK(g.group[2][j].normal_form().is_trivial());  // bottom row trivial
}

TEST_CASE("grid 3x3 on the torsion fixture") {
    auto g = grid_3x3(synthetic_torsion_triple(), 0);
    CHECK(g.all_exact);
    CHECK(g.squares_commute);
    CHECK(g.lemma25_ok);
    CHECK(g.group[1][1].normal_form() == AbelianInvariants{0, 0, 0, {Int(2)}});
    CHECK(g.group[2][1].normal_form() == AbelianInvariants{0, 0, 0, {Int(2)}});  // H^1(I) = Z/2
    CHECK(g.group[0][1].normal_form().is_trivial());                              // ker delta2 = 0
}

TEST_CASE("grid 3x3 on an acyclic triple: all nine groups vanish") {
    for (long k = 0; k <= 1; ++k) {
        auto g = grid_3x3(acyclic_triple(), k);
        CHECK(g.all_exact);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(g.group[i][j].normal_form().is_trivial());
    }
}

TEST_CASE("grid 3x3 on the contractible triple: exact with Q-valued corners") {
    auto g = grid_3x3(contractible_triple(), 0);
    CHECK(g.all_exact);
    CHECK(g.lemma25_ok);
    CHECK(g.group[1][1].normal_form() == AbelianInvariants{1, 0, 0, {}});  // Hhat^0 = Q
    CHECK(g.group[1][2].normal_form() == AbelianInvariants{1, 0, 0, {}});  // Z_I^1(E) = Q
    CHECK(g.group[1][0].normal_form().is_trivial());                        // H^0(G) = 0
}

TEST_CASE("induced map of the identity morphism is bijective") {
    SparkComplexTriple t = synthetic_t1_triple();
    TripleMorphism id{t, t, identity_morphism(t.F), identity_morphism(t.E), identity_morphism(t.I), "id"};
    id.validate();
    for (long k = 0; k <= 1; ++k) {
        auto rep = induced_map(id, k, true);
        CHECK(rep.well_defined);
        CHECK(rep.injective);
        CHECK(rep.surjective);
    }
}

TEST_CASE("induced map: multiplication by 2 on the point fixture is surjective, not injective") {
    SparkComplexTriple t = point_triple();
    auto scale = [&](const CochainComplex& c, long m) {
        ComplexMorphism f = identity_morphism(c);
        for (auto& blk : f.maps)
            for (auto& x : blk.a) x = x * GaussRat(Rat(m));
        return f;
    };
    TripleMorphism two{t, t, scale(t.F, 2), scale(t.E, 2), scale(t.I, 2), "x2"};
    two.validate();
    auto rep = induced_map(two, 0, true);
    CHECK(rep.well_defined);
    CHECK(rep.surjective);   // Q/Z --x2--> Q/Z is onto
    CHECK(!rep.injective);   // kernel Z/2
}

TEST_CASE("triple quasi-isomorphism report") {
    SparkComplexTriple t = synthetic_t1_triple();
    TripleMorphism id{t, t, identity_morphism(t.F), identity_morphism(t.E), identity_morphism(t.I), "id"};
    CHECK(is_triple_quasi_isomorphism(id).is_quasi_iso());
}

TEST_CASE("functoriality of induced maps on composable morphisms") {
    SparkComplexTriple t = point_triple();
    auto scale = [&](const CochainComplex& c, long m) {
        ComplexMorphism f = identity_morphism(c);
        for (auto& blk : f.maps)
            for (auto& x : blk.a) x = x * GaussRat(Rat(m));
        return f;
    };
    TripleMorphism f{t, t, scale(t.F, 2), scale(t.E, 2), scale(t.I, 2), "x2"};
    TripleMorphism g{t, t, scale(t.F, 3), scale(t.E, 3), scale(t.I, 3), "x3"};
    TripleMorphism gf{t, t, scale(t.F, 6), scale(t.E, 6), scale(t.I, 6), "x6"};
    QZModule h = spark_class_group(t, 0);
    MixedMap mf = induced_spark_map(f, 0), mg = induced_spark_map(g, 0), mgf = induced_spark_map(gf, 0);
    Rng rng(5150);
    for (int trial = 0; trial < 25; ++trial) {
        Spark s = make_spark(t, 0, {GaussRat(rng.rand_rat(8, 5))}, {});
        MixedVec via_parts = mg.apply(mf.apply(s.value));
        MixedVec via_comp = mgf.apply(s.value);
        CHECK(h.same_class(via_parts, via_comp));
    }
}

TEST_CASE("kernel representatives: trivial kernel gives an empty list") {
    SparkComplexTriple t = point_triple();
    TripleMorphism id{t, t, identity_morphism(t.F), identity_morphism(t.E), identity_morphism(t.I), "id"};
    CHECK(kernel_representatives(id, 0).empty());
}
