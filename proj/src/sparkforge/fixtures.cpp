#include "fixtures.hpp"

namespace sparkforge {

namespace {

GaussMat gmat(long r, long c, std::initializer_list<GaussRat> vals) {
    GaussMat m(r, c);
    auto it = vals.begin();
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) m(i, j) = *it++;
    return m;
}

GaussMat gident(long n) {
    GaussMat m(n, n);
    for (long i = 0; i < n; ++i) m(i, i) = GaussRat(1);
    return m;
}

ComplexMorphism morphism(const CochainComplex& src, const CochainComplex& dst, std::vector<GaussMat> maps) {
    ComplexMorphism f{src, dst, std::move(maps)};
    f.validate();
    return f;
}

}  // namespace

SparkComplexTriple point_triple() {
    CochainComplex F = CochainComplex::zero(Ring::Q, 2);
    F.ranks[0] = 1;
    CochainComplex E = F;
    CochainComplex I = CochainComplex::zero(Ring::Z, 2);
    I.ranks[0] = 1;
    SparkComplexTriple t;
    t.F = F;
    t.E = E;
    t.I = I;
    t.inclusion = morphism(E, F, {gident(1)});
    t.psi = morphism(I, F, {gident(1)});
    t.name = "point";
    return t;
}

SparkComplexTriple synthetic_t1_triple() {
    CochainComplex F = CochainComplex::zero(Ring::Q, 2);
    F.ranks[0] = 2;  // u, v
    F.ranks[1] = 1;  // w
    F.set_diff(0, gmat(1, 2, {GaussRat(0), GaussRat(1)}));  // du = 0, dv = w
    CochainComplex E = CochainComplex::zero(Ring::Q, 2);
    E.ranks[0] = 1;  // u
    CochainComplex I = CochainComplex::zero(Ring::Z, 2);
    I.ranks[0] = 1;  // alpha
    I.ranks[1] = 1;  // beta
    SparkComplexTriple t;
    t.F = F;
    t.E = E;
    t.I = I;
    t.inclusion = morphism(E, F, {gmat(2, 1, {GaussRat(1), GaussRat(0)})});
    t.psi = morphism(I, F, {gmat(2, 1, {GaussRat(1), GaussRat(0)}), gident(1)});
    t.name = "synthetic-T1";
    return t;
}

SparkComplexTriple synthetic_t1_broken_triple() {
    SparkComplexTriple t = synthetic_t1_triple();
    CochainComplex E = CochainComplex::zero(Ring::Q, 2);
    E.ranks[0] = 1;
    E.ranks[1] = 1;  // w joins E
    t.E = E;
    t.inclusion = morphism(E, t.F, {gmat(2, 1, {GaussRat(1), GaussRat(0)}), gident(1)});
    t.name = "synthetic-T1-broken";
    return t;
}

SparkComplexTriple synthetic_torsion_triple() {
    CochainComplex F = CochainComplex::zero(Ring::Q, 2);
    F.ranks[0] = 1;
    F.ranks[1] = 1;
    F.set_diff(0, gident(1));  // acyclic
    CochainComplex E = CochainComplex::zero(Ring::Q, 2);
    CochainComplex I = CochainComplex::zero(Ring::Z, 2);
    I.ranks[0] = 1;
    I.ranks[1] = 1;
    I.set_diff(0, gmat(1, 1, {GaussRat(2)}));  // d alpha = 2 beta
    SparkComplexTriple t;
    t.F = F;
    t.E = E;
    t.I = I;
    t.inclusion = morphism(E, F, {});
    t.psi = morphism(I, F, {gident(1), gmat(1, 1, {GaussRat(Rat(1, 2))})});
    t.name = "synthetic-torsion";
    return t;
}

SparkComplexTriple acyclic_triple() {
    CochainComplex F = CochainComplex::zero(Ring::Q, 2);
    CochainComplex I = CochainComplex::zero(Ring::Z, 2);
    SparkComplexTriple t;
    t.F = F;
    t.E = F;
    t.I = I;
    t.inclusion = morphism(F, F, {});
    t.psi = morphism(I, F, {});
    t.name = "acyclic";
    return t;
}

SparkComplexTriple contractible_triple() {
    CochainComplex F = CochainComplex::zero(Ring::Q, 2);
    F.ranks[0] = 1;
    F.ranks[1] = 1;
    F.set_diff(0, gident(1));
    CochainComplex I = CochainComplex::zero(Ring::Z, 2);
    SparkComplexTriple t;
    t.F = F;
    t.E = F;
    t.I = I;
    t.inclusion = morphism(F, F, {gident(1), gident(1)});
    t.psi = morphism(I, F, {});
    t.name = "contractible";
    return t;
}

}  // namespace sparkforge
