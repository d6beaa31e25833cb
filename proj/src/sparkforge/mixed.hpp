#pragma once
#include "snf.hpp"

namespace sparkforge {

/// Element of the ambient group Q^m + Z^n.
struct MixedVec {
    std::vector<Rat> q;
    std::vector<Int> z;

    bool is_zero() const { return vec_is_zero(q) && vec_is_zero(z); }
    friend bool operator==(const MixedVec& a, const MixedVec& b) { return a.q == b.q && a.z == b.z; }
    friend MixedVec operator+(MixedVec a, const MixedVec& b) {
        a.q = vec_add(std::move(a.q), b.q);
        a.z = vec_add(std::move(a.z), b.z);
        return a;
    }
    friend MixedVec operator-(MixedVec a, const MixedVec& b) {
        a.q = vec_sub(std::move(a.q), b.q);
        a.z = vec_sub(std::move(a.z), b.z);
        return a;
    }
    static MixedVec zero(long m, long n) {
        return {std::vector<Rat>(static_cast<size_t>(m)), std::vector<Int>(static_cast<size_t>(n))};
    }
};

/// Subgroup of Q^m + Z^n of the shape  span_Q(qgens) + span_Z(zgens).
/// qgens span a Q-subspace of the divisible part (their z-parts are zero);
/// every subgroup arising from the cone/spark constructions has this shape.
struct MixedSubgroup {
    long m = 0, n = 0;
    std::vector<std::vector<Rat>> qgens;  // in Q^m
    std::vector<MixedVec> zgens;

    static MixedSubgroup zero(long m, long n) { return {m, n, {}, {}}; }
    static MixedSubgroup full(long m, long n);

    void add_qgen(std::vector<Rat> g);
    void add_zgen(MixedVec g);
    MixedSubgroup sum(const MixedSubgroup& o) const;

    /// membership of a single element
    bool contains(const MixedVec& x) const;
    /// membership of Q*g for a divisible direction g (z-part of g must be zero)
    bool contains_divisible(const std::vector<Rat>& g) const;
    /// every generator of o lies in *this (divisible gens via contains_divisible)
    bool contains_subgroup(const MixedSubgroup& o) const;
};

/// Classification of a Q^m+Z^n subquotient as Q^a + (Q/Z)^b + Z^c + sum Z/t_i.
struct AbelianInvariants {
    long divisible_rank = 0;  // number of Q summands
    long qz_rank = 0;         // number of Q/Z summands
    long free_rank = 0;       // number of Z summands
    std::vector<Int> torsion;  // divisor chain, every entry >= 2

    bool is_trivial() const { return divisible_rank == 0 && qz_rank == 0 && free_rank == 0 && torsion.empty(); }
    friend bool operator==(const AbelianInvariants& x, const AbelianInvariants& y) {
        return x.divisible_rank == y.divisible_rank && x.qz_rank == y.qz_rank && x.free_rank == y.free_rank &&
               x.torsion == y.torsion;
    }
    friend bool operator!=(const AbelianInvariants& x, const AbelianInvariants& y) { return !(x == y); }
    std::string to_string() const;
};

/// Invariants of num/den. Throws if den is not a subgroup of num.
AbelianInvariants quotient_invariants(const MixedSubgroup& num, const MixedSubgroup& den);

/// Solution subgroup of  Mq * x_q + Mz * x_z = 0  with x_q in Q^a, x_z in Z^b.
/// Mq: rows x a, Mz: rows x b, both rational.
MixedSubgroup mixed_kernel(const RatMat& Mq, const RatMat& Mz);

/// One solution of  Mq * x_q + Mz * x_z = rhs, or nullopt.
std::optional<std::pair<std::vector<Rat>, std::vector<Int>>> mixed_solve(const RatMat& Mq, const RatMat& Mz,
                                                                         const std::vector<Rat>& rhs);

/// Linear map Q^m1+Z^n1 -> Q^m2+Z^n2:  (xq, xz) |-> (A xq + B xz, C xz).
struct MixedMap {
    long m1 = 0, n1 = 0, m2 = 0, n2 = 0;
    RatMat A;  // m2 x m1
    RatMat B;  // m2 x n1
    IntMat C;  // n2 x n1

    static MixedMap make(long m1, long n1, long m2, long n2);
    static MixedMap identity(long m, long n);
    MixedVec apply(const MixedVec& x) const;
    MixedSubgroup image(const MixedSubgroup& s) const;
    MixedMap compose(const MixedMap& inner) const;  // this o inner
};

/// Generators of {x in N : f(x) in T}; N and T are subgroups of the domain/codomain.
MixedSubgroup preimage_in(const MixedMap& f, const MixedSubgroup& N, const MixedSubgroup& T);

/// true iff f(x) ~ 0 (mod den2) implies x ~ 0 (mod den1) for x in num1
bool map_injective_on_classes(const MixedMap& f, const MixedSubgroup& num1, const MixedSubgroup& den1,
                              const MixedSubgroup& num2, const MixedSubgroup& den2);
/// true iff f(num1) + den2 contains num2
bool map_surjective_on_classes(const MixedMap& f, const MixedSubgroup& num1, const MixedSubgroup& num2,
                               const MixedSubgroup& den2);

}  // namespace sparkforge
