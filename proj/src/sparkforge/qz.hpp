#pragma once
#include "mixed.hpp"

namespace sparkforge {

/// Presentation of a quotient (Q^m + Z^n-subgroup) / (subgroup of relations).
/// The universal result type for cohomology and spark groups.
class QZModule {
  public:
    QZModule() = default;
    /// throws when some relation lies outside the generated subgroup
    QZModule(MixedSubgroup generators, MixedSubgroup relations);

    static QZModule trivial() { return QZModule(MixedSubgroup::zero(0, 0), MixedSubgroup::zero(0, 0)); }

    const MixedSubgroup& generators() const { return gens_; }
    const MixedSubgroup& relations() const { return rels_; }
    long ambient_q_dim() const { return gens_.m; }
    long ambient_z_rank() const { return gens_.n; }

    const AbelianInvariants& normal_form() const;

    bool class_is_zero(const MixedVec& x) const { return rels_.contains(x); }
    bool same_class(const MixedVec& x, const MixedVec& y) const { return rels_.contains(x - y); }
    bool element_of(const MixedVec& x) const { return gens_.contains(x); }

  private:
    MixedSubgroup gens_, rels_;
    mutable std::optional<AbelianInvariants> cached_;
};

inline AbelianInvariants qz_normal_form(const QZModule& q) { return q.normal_form(); }

/// Generators of { x in Q^m + Z^n : K(x) = 0 and L(x) in span_Q(V) }.
/// V lives in the divisible part of L's codomain.
MixedSubgroup constrained_subgroup(const MixedMap& L, const std::vector<std::vector<Rat>>& V,
                                   const MixedMap& K);

enum class Ring { Z, Q, QI };

std::string ring_name(Ring r);

/// A x = b over the chosen ring (Z or Q); nullopt when insoluble.
std::optional<std::vector<Rat>> solve_ring(const RatMat& A, const std::vector<Rat>& b, Ring ring);

}  // namespace sparkforge
