#pragma once
#include "matrix.hpp"

namespace sparkforge {

/// U * M * V = S with S diagonal in divisor-chain order, U and V unimodular.
struct SmithResult {
    IntMat U, S, V;
    long rank = 0;
    std::vector<Int> invariant_factors() const {
        std::vector<Int> f;
        for (long i = 0; i < rank; ++i) f.push_back(S(i, i));
        return f;
    }
};

SmithResult smith_normal_form(const IntMat& M);

/// Some integer x with Ax = b, or nullopt when the SNF residues obstruct it.
std::optional<std::vector<Int>> int_solve(const IntMat& A, const std::vector<Int>& b);

/// Basis of {x in Z^cols : Ax = 0} (free lattice).
std::vector<std::vector<Int>> int_kernel(const IntMat& A);

/// Basis of the lattice spanned by the columns of G.
std::vector<std::vector<Int>> lattice_basis(const IntMat& G);

/// Exact determinant (fraction-free Bareiss).
Int int_det(const IntMat& A);

/// lcm of denominators, and the integer matrix D * A.
std::pair<Int, IntMat> clear_denominators(const RatMat& A);

}  // namespace sparkforge
