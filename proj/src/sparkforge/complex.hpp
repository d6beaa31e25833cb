#pragma once
#include "qz.hpp"

namespace sparkforge {

/// Finitely generated cochain complex on the degree window [0, W]; pieces
/// outside the window are zero. Matrices are stored over Q(i) with the ring
/// tag constraining the entries (Z: integers, Q: rationals).
struct CochainComplex {
    Ring ring = Ring::Q;
    std::vector<long> ranks;     // ranks[k], k in [0, W]
    std::vector<GaussMat> diffs;  // diffs[k]: C^k -> C^{k+1}, size ranks[k+1] x ranks[k]; d_W = 0

    long window() const { return static_cast<long>(ranks.size()) - 1; }
    long rank_at(long k) const { return (k < 0 || k > window()) ? 0 : ranks[k]; }
    GaussMat diff_at(long k) const;  // zero matrix outside the stored range

    static CochainComplex zero(Ring r, long window);
    void set_diff(long k, GaussMat d);
    /// checks ring constraints and d.d = 0; C^k = 0 for k < 0 holds by construction
    void validate() const;
};

/// Degreewise flattening of a complex piece into the mixed ambient:
/// Z -> (0, rank); Q -> (rank, 0); Q(i) -> (2 rank, 0).
std::pair<long, long> mixed_ambient(Ring r, long rank);

/// entrywise checks + flattening to the exact carriers
RatMat flatten_field(const GaussMat& m, Ring ring_tag);
IntMat flatten_int(const GaussMat& m);

struct ComplexMorphism {
    CochainComplex source, target;
    std::vector<GaussMat> maps;  // maps[k]: source^k -> target^k

    GaussMat map_at(long k) const;
    void validate() const;  // exact commutation with differentials, ring coercion source -> target
};

ComplexMorphism identity_morphism(const CochainComplex& c);
ComplexMorphism compose(const ComplexMorphism& g, const ComplexMorphism& f);

/// Cocycles / coboundaries of degree k as mixed subgroups of the flattened ambient.
MixedSubgroup cocycles(const CochainComplex& c, long k);
MixedSubgroup coboundaries(const CochainComplex& c, long k);

/// ker d^k / im d^{k-1} over the complex's ring.
QZModule cohomology(const CochainComplex& c, long k);
/// ranks over the ground field, for field complexes
long cohomology_rank(const CochainComplex& c, long k);

/// the degree-k component of a morphism as a map of flattened ambients
MixedMap morphism_mixed_map(const ComplexMorphism& f, long k);

/// Mapping cone of psi: I -> F (same ring): G^k = F^k + I^{k+1}, D(a,r) = (da + psi r, -dr).
CochainComplex cone(const ComplexMorphism& psi);

/// Cone cohomology for arbitrary ring combinations (e.g. psi: Z-complex -> Q-complex),
/// computed in the mixed ambient F^k + I^{k+1}.
std::pair<long, long> cone_ambient(const ComplexMorphism& psi, long k);
MixedMap cone_differential(const ComplexMorphism& psi, long k);
QZModule cone_cohomology(const ComplexMorphism& psi, long k);

/// Double complex with horizontal delta and vertical d; the two differentials
/// commute, the sign (-1)^r enters at totalization: D = delta + (-1)^r d.
struct DoubleComplex {
    Ring ring = Ring::Q;
    long max_r = 0, max_s = 0;
    std::vector<std::vector<long>> ranks;          // [r][s]
    std::vector<std::vector<GaussMat>> horiz;      // (r,s) -> (r+1,s)
    std::vector<std::vector<GaussMat>> vert;       // (r,s) -> (r,s+1)

    static DoubleComplex zero(Ring ring, long max_r, long max_s);
    long rank_at(long r, long s) const { return (r < 0 || s < 0 || r > max_r || s > max_s) ? 0 : ranks[r][s]; }
    GaussMat horiz_at(long r, long s) const;
    GaussMat vert_at(long r, long s) const;
    void validate() const;

    /// offset of the (r,s) block inside Tot^{r+s}, in ring units
    long block_offset(long r, long s) const;
};

CochainComplex total_complex(const DoubleComplex& dc);

/// Bigraded pieces with commuting-squared del / delbar, anticommuting mixed term.
struct BigradedComplex {
    Ring ring = Ring::Q;
    long max_r = 0, max_s = 0;
    std::vector<std::vector<long>> ranks;
    std::vector<std::vector<GaussMat>> del;     // (r,s) -> (r+1,s)
    std::vector<std::vector<GaussMat>> delbar;  // (r,s) -> (r,s+1)

    static BigradedComplex zero(Ring ring, long max_r, long max_s);
    long rank_at(long r, long s) const { return (r < 0 || s < 0 || r > max_r || s > max_s) ? 0 : ranks[r][s]; }
    GaussMat del_at(long r, long s) const;
    GaussMat delbar_at(long r, long s) const;
    void validate() const;  // del^2 = 0, delbar^2 = 0, del delbar + delbar del = 0
    long block_offset(long r, long s) const;

    /// total complex with d = del + delbar
    CochainComplex total() const;
};

struct Truncation {
    CochainComplex complex;   // pieces with r < p, differential d_p
    ComplexMorphism pi;        // projection Tot(B) -> truncated
    BigradedComplex bigraded;  // the kept bigraded pieces (del entries into r >= p dropped)
};

/// level-p truncation: keep holomorphic degrees r < p, d_p = pi_p . d
Truncation truncate_level(const BigradedComplex& b, long p);

struct QuasiIsoReport {
    bool is_quasi_iso = true;
    struct Degree {
        long k = 0;
        bool injective = true, surjective = true;
    };
    std::vector<Degree> degrees;
    std::string to_string() const;
};

/// induced maps on cohomology are isomorphisms in every degree of the window
QuasiIsoReport is_quasi_isomorphism(const ComplexMorphism& f);

}  // namespace sparkforge
