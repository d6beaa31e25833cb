#include "qz.hpp"

namespace sparkforge {

QZModule::QZModule(MixedSubgroup generators, MixedSubgroup relations)
    : gens_(std::move(generators)), rels_(std::move(relations)) {
    if (gens_.m != rels_.m || gens_.n != rels_.n) throw Error("QZModule: ambient mismatch");
    if (!gens_.contains_subgroup(rels_)) throw Error("QZModule: relation outside generated subgroup");
}

const AbelianInvariants& QZModule::normal_form() const {
    if (!cached_) cached_ = quotient_invariants(gens_, rels_);
    return *cached_;
}

MixedSubgroup constrained_subgroup(const MixedMap& L, const std::vector<std::vector<Rat>>& V, const MixedMap& K) {
    if (L.m1 != K.m1 || L.n1 != K.n1) throw Error("constrained_subgroup: domain mismatch");
    long m = L.m1, n = L.n1;
    long nv = static_cast<long>(V.size());
    long rows = K.m2 + K.n2 + L.m2 + L.n2;
    RatMat Mq(rows, m + nv), Mz(rows, n);
    long r0 = 0;
    for (long i = 0; i < K.m2; ++i, ++r0) {
        for (long j = 0; j < m; ++j) Mq(r0, j) = K.A(i, j);
        for (long j = 0; j < n; ++j) Mz(r0, j) = K.B(i, j);
    }
    for (long i = 0; i < K.n2; ++i, ++r0)
        for (long j = 0; j < n; ++j) Mz(r0, j) = Rat(K.C(i, j));
    for (long i = 0; i < L.m2; ++i, ++r0) {
        for (long j = 0; j < m; ++j) Mq(r0, j) = L.A(i, j);
        for (long j = 0; j < nv; ++j) {
            if (static_cast<long>(V[j].size()) != L.m2) throw Error("constrained_subgroup: V dimension mismatch");
            Mq(r0, m + j) = -V[j][i];
        }
        for (long j = 0; j < n; ++j) Mz(r0, j) = L.B(i, j);
    }
    for (long i = 0; i < L.n2; ++i, ++r0)
        for (long j = 0; j < n; ++j) Mz(r0, j) = Rat(L.C(i, j));

    MixedSubgroup sol = mixed_kernel(Mq, Mz);
    MixedSubgroup out = MixedSubgroup::zero(m, n);
    for (auto& g : sol.qgens) out.add_qgen(std::vector<Rat>(g.begin(), g.begin() + m));
    for (auto& g : sol.zgens) out.add_zgen({std::vector<Rat>(g.q.begin(), g.q.begin() + m), g.z});
    return out;
}

std::string ring_name(Ring r) {
    switch (r) {
        case Ring::Z: return "Z";
        case Ring::Q: return "Q";
        case Ring::QI: return "Q(i)";
    }
    return "?";
}

std::optional<std::vector<Rat>> solve_ring(const RatMat& A, const std::vector<Rat>& b, Ring ring) {
    if (static_cast<long>(b.size()) != A.nrows) throw Error("solve: dimension mismatch");
    if (ring == Ring::Q || ring == Ring::QI) return field_solve(A, b);
    // over Z: clear denominators jointly, then SNF-solve
    RatMat aug(A.nrows, A.ncols + 1);
    for (long i = 0; i < A.nrows; ++i) {
        for (long j = 0; j < A.ncols; ++j) aug(i, j) = A(i, j);
        aug(i, A.ncols) = b[i];
    }
    auto [d, M] = clear_denominators(aug);
    IntMat Ai(A.nrows, A.ncols);
    std::vector<Int> bi(static_cast<size_t>(A.nrows));
    for (long i = 0; i < A.nrows; ++i) {
        for (long j = 0; j < A.ncols; ++j) Ai(i, j) = M(i, j);
        bi[i] = M(i, A.ncols);
    }
    auto x = int_solve(Ai, bi);
    if (!x) return std::nullopt;
    std::vector<Rat> xq(x->size());
    for (size_t i = 0; i < x->size(); ++i) xq[i] = Rat((*x)[i]);
    return xq;
}

}  // namespace sparkforge
