#pragma once
#include "layout.hpp"

namespace sparkforge {

/// The central object: cochain complexes (F, E, I) with E -> F an inclusion and
/// psi : I -> F, subject to the three spark-complex axioms.
struct SparkComplexTriple {
    CochainComplex F, E, I;
    ComplexMorphism inclusion;  // E -> F
    ComplexMorphism psi;        // I -> F
    std::string name;

    long window() const { return std::max({F.window(), E.window(), I.window() - 1}); }
    void check_well_formed() const;  // complexes + morphisms valid, inclusion injective
};

struct ValidationReport {
    bool pass = true;
    bool well_formed = true;
    struct Violation {
        int axiom;  // 1, 2, 3
        long degree;
        std::string note;
        std::vector<GaussRat> witness;  // axiom 1: nonzero element of the intersection
    };
    std::vector<Violation> violations;
    std::string to_string() const;
};

/// Exact check of the three axioms; failures carry witnesses.
ValidationReport validate(const SparkComplexTriple& t);

/// Ambient of sparks of degree k: F^k + I^{k+1} (flattened); layout slots: 0 = F-part, 1 = I-part.
AmbientLayout spark_layout(const SparkComplexTriple& t, long k);

/// A spark (a, r) of degree k as an element of the spark ambient.
struct Spark {
    long degree = 0;
    MixedVec value;  // in spark_layout(t, degree)
};

Spark make_spark(const SparkComplexTriple& t, long k, const std::vector<GaussRat>& a, const std::vector<GaussRat>& r);

/// { (a, r) : dr = 0, da = e - psi(r) for some e in E^{k+1} }
MixedSubgroup spark_numerator(const SparkComplexTriple& t, long k);
/// D(G^{k-1}) = { (db + psi s, -ds) }
MixedSubgroup spark_boundaries(const SparkComplexTriple& t, long k);

/// The group of spark classes of degree k.
QZModule spark_class_group(const SparkComplexTriple& t, long k);

/// delta1([(a,r)]) = e with da = e - psi(r); errors when (a, r) is not a spark.
std::vector<GaussRat> delta1(const SparkComplexTriple& t, const Spark& s);
/// delta2([(a,r)]) = r as a cocycle of I^{k+1}; pair with cohomology(I, k+1) for class use.
std::vector<GaussRat> delta2(const SparkComplexTriple& t, const Spark& s);

/// Z_I^k(E) = { e in Z^k(E) : [incl e] = psi_*[r] in H^k(F) for some r }, inside E^k.
MixedSubgroup z_i_group(const SparkComplexTriple& t, long k);

struct GridNode {
    std::string name;
    bool composite_zero = true;    // g . f = 0 on classes
    bool kernel_in_image = true;   // ker g contained in im f
    bool start_injective = true;   // only for row/column starts
    bool end_surjective = true;    // only for row/column ends
    bool ok() const { return composite_zero && kernel_in_image && start_injective && end_surjective; }
};

/// The nine groups of the fundamental 3x3 grid plus exactness verdicts.
struct GridResult {
    long degree = 0;
    // rows: [H^k(E)/H^k_I(E), HhatE, dE^k], [H^k(G), Hhat, Z_I^{k+1}(E)], [Ker^{k+1}(I), H^{k+1}(I), H_I^{k+1}(E)]
    QZModule group[3][3];
    std::vector<GridNode> nodes;
    bool squares_commute = true;
    bool lemma25_ok = true;  // HhatE isomorphic to E^k / Z_I^k(E) via e -> [(incl e, 0)]
    bool all_exact = true;
    std::vector<std::string> notes;
    std::string to_string() const;
};

GridResult grid_3x3(const SparkComplexTriple& t, long k);

/// Morphism of spark complex triples (Defn 2.9-style commuting diagram).
struct TripleMorphism {
    SparkComplexTriple source, target;
    ComplexMorphism fF, fE, fI;
    std::string name;

    void validate() const;  // components are cochain maps; the psi / inclusion squares commute
};

/// the induced map on spark ambients: (a, r) -> (fF a, fI r)
MixedMap induced_spark_map(const TripleMorphism& m, long k);

struct InducedMapReport {
    bool well_defined = true;  // sparks -> sparks, boundaries -> boundaries
    bool injective = false, surjective = false;
    std::string note;
};

/// Checks well-definedness and, when requested, bijectivity of the induced map
/// on spark class groups of degree k.
InducedMapReport induced_map(const TripleMorphism& m, long k, bool check_bijective);

/// quasi-isomorphism of triples: diagram + psi-component inducing iso on H(I)
struct TripleQuasiIsoReport {
    bool commutes = true;
    QuasiIsoReport psi_quasi_iso;
    bool is_quasi_iso() const { return commutes && psi_quasi_iso.is_quasi_iso; }
};
TripleQuasiIsoReport is_triple_quasi_isomorphism(const TripleMorphism& m);

struct KernelRepresentative {
    MixedVec kernel_class;          // a generator of ker(induced map) in the source spark ambient
    std::vector<GaussRat> e_part;   // e with representative (incl e, 0) and fE(e) = 0
    bool found = false;
};

/// For each kernel generator of the induced map, a representative of shape
/// (incl e, 0) with fE(e) = 0; reports failure honestly (falsifies the
/// model-tier analogue of the smooth-kernel lemma).
std::vector<KernelRepresentative> kernel_representatives(const TripleMorphism& m, long k);

}  // namespace sparkforge
