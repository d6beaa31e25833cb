#pragma once
#include "complex.hpp"

#include <map>

namespace sparkforge {

/// Local coefficient algebra: polynomial differential forms on C^n with
/// coefficients in Q(i)[z, zbar] cut at total degree N (N = 0 gives the
/// translation-invariant exterior algebra). Basis elements are
/// z^a zbar^b dz_S dzbar_T with |a| + |b| <= N, graded by (|S|, |T|).
struct BigradedAlgebra {
    long n = 0;  // complex dimension
    long N = 0;  // polynomial truncation degree

    struct BasisElem {
        std::vector<int> za, zb;  // exponents, length n
        uint32_t S = 0, T = 0;    // dz / dzbar subsets
    };

    // enumeration per bidegree: (r, s) -> list of basis elements; plus a lookup
    std::vector<std::vector<std::vector<BasisElem>>> basis;  // [r][s]
    std::map<std::tuple<std::vector<int>, std::vector<int>, uint32_t, uint32_t>, long> lookup;

    long max_r() const { return n; }
    long max_s() const { return n; }
    long rank(long r, long s) const {
        if (r < 0 || s < 0 || r > n || s > n) return 0;
        return static_cast<long>(basis[r][s].size());
    }
    long index_of(const BasisElem& e) const;
    long unit_index() const { return index_of(BasisElem{std::vector<int>(n, 0), std::vector<int>(n, 0), 0, 0}); }

    GaussMat del(long r, long s) const;     // (r,s) -> (r+1,s)
    GaussMat delbar(long r, long s) const;  // (r,s) -> (r,s+1)

    /// wedge of two coefficient vectors; products past the polynomial cut drop out
    std::vector<GaussRat> wedge(long r1, long s1, const std::vector<GaussRat>& x, long r2, long s2,
                                const std::vector<GaussRat>& y) const;

    /// the sign (-1)^{(r1+s1)(r2+s2)} graded-commutativity is a property test, not an assumption
    static BigradedAlgebra polynomial_forms(long n, long N);
};

/// Restriction operator induced by the affine substitution z_i -> alpha_i z_i + beta_i
/// (conjugates act on zbar, alpha_i scales dz_i). Exact on the truncated space.
struct AffineChart {
    std::vector<GaussRat> alpha, beta;  // length n, alpha_i != 0
};

/// matrix of the substitution on the (r,s) piece
GaussMat substitution_matrix(const BigradedAlgebra& alg, const AffineChart& chart, long r, long s);

/// Per-simplex charts give the restriction system: the restriction from a face to a
/// cosimplex is substitution by (chart of face)^{-1} . (chart of cosimplex), which
/// composes exactly, so functoriality is automatic and verified.
struct CoefficientSystem {
    BigradedAlgebra alg;
    // chart per simplex, indexed by (dim, simplex index); empty means identity charts
    std::vector<std::vector<AffineChart>> charts;

    bool has_charts() const { return !charts.empty(); }
    AffineChart chart_of(long d, long i) const;
    /// restriction coeff(face) -> coeff(simplex) on the (r,s) piece
    GaussMat restriction(long face_dim, long face_idx, long simplex_dim, long simplex_idx, long r, long s) const;
};

struct CoefficientSystemReport {
    bool wedge_graded_commutative = true;
    bool derivations_consistent = true;   // del^2 = delbar^2 = del delbar + delbar del = 0
    bool restrictions_commute = true;     // with del, delbar, and wedge below the cut
    bool functorial = true;               // two-step restrictions agree
    bool unit_respected = true;           // restrictions fix the unit, d(unit) = 0
    bool ok() const {
        return wedge_graded_commutative && derivations_consistent && restrictions_commute && functorial &&
               unit_respected;
    }
};

class Nerve;
CoefficientSystemReport validate_coefficients(const CoefficientSystem& cs, const Nerve& nerve);

}  // namespace sparkforge
