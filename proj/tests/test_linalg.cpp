#include <doctest.h>

#include "sparkforge/qz.hpp"
#include "sparkforge/rng.hpp"

using namespace sparkforge;

namespace {

IntMat imat(long r, long c, std::initializer_list<long> vals) {
    IntMat m(r, c);
    auto it = vals.begin();
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) m(i, j) = Int(*it++);
    return m;
}

RatMat qmat(long r, long c, std::initializer_list<long> vals) {
    RatMat m(r, c);
    auto it = vals.begin();
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) m(i, j) = Rat(*it++);
    return m;
}

void check_snf_certificate(const IntMat& M) {
    auto s = smith_normal_form(M);
    CHECK(s.U * M * s.V == s.S);
    Int du = int_det(s.U), dv = int_det(s.V);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    for (long i = 0; i < std::min(M.nrows, M.ncols); ++i)
        for (long j = 0; j < std::min(M.nrows, M.ncols); ++j)
            if (i != j) CHECK(s.S(i, j) == 0);
    for (long i = 0; i + 1 < s.rank; ++i) {
        CHECK(s.S(i, i) > 0);
        CHECK(s.S(i + 1, i + 1) % s.S(i, i) == 0);
    }
    for (long i = s.rank; i < std::min(M.nrows, M.ncols); ++i) CHECK(s.S(i, i) == 0);
}

}  // namespace

TEST_CASE("smith normal form on the worked example") {
    IntMat M = imat(2, 2, {2, 4, 6, 8});
    auto s = smith_normal_form(M);
    CHECK(s.rank == 2);
    CHECK(s.S(0, 0) == 2);
    CHECK(s.S(1, 1) == 4);
    check_snf_certificate(M);
}

TEST_CASE("smith normal form fixed points") {
    auto id = IntMat::identity(4);
    auto s = smith_normal_form(id);
    CHECK(s.S == id);
    IntMat z(3, 5);
    auto sz = smith_normal_form(z);
    CHECK(sz.rank == 0);
    CHECK(sz.S.is_zero());
}

TEST_CASE("smith normal form randomized certificate") {
    Rng rng(20240901);
    for (int trial = 0; trial < 40; ++trial) {
        long r = rng.range(1, 6), c = rng.range(1, 6);
        IntMat M(r, c);
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < c; ++j)
                if (rng.range(0, 2)) M(i, j) = rng.rand_int(-9, 9);
        check_snf_certificate(M);
    }
}

TEST_CASE("integer and rational solve") {
    // A=[[2]], b=[4] over Z
    auto x = int_solve(imat(1, 1, {2}), {Int(4)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 2);
    // A=[[2]], b=[3]: no integer solution, rational solution 3/2
    CHECK(!int_solve(imat(1, 1, {2}), {Int(3)}).has_value());
    auto q = solve_ring(qmat(1, 1, {2}), {Rat(3)}, Ring::Q);
    REQUIRE(q.has_value());
    CHECK((*q)[0] == Rat(3, 2));
    // A=[[2,4],[6,8]], b=[2,6]: some integer solution, checked by substitution
    IntMat A = imat(2, 2, {2, 4, 6, 8});
    auto y = int_solve(A, {Int(2), Int(6)});
    REQUIRE(y.has_value());
    CHECK(A.apply(*y) == std::vector<Int>{Int(2), Int(6)});
}

TEST_CASE("solve returns none only with an SNF insolvability certificate") {
    Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        long r = rng.range(1, 4), c = rng.range(1, 4);
        IntMat A(r, c);
        for (long i = 0; i < r; ++i)
            for (long j = 0; j < c; ++j) A(i, j) = rng.rand_int(-4, 4);
        std::vector<Int> b(static_cast<size_t>(r));
        for (auto& v : b) v = rng.rand_int(-6, 6);
        auto x = int_solve(A, b);
        if (x) {
            CHECK(A.apply(*x) == b);
        } else {
            // residue analysis: U*b must violate divisibility by some invariant factor
            auto s = smith_normal_form(A);
            std::vector<Int> ub(static_cast<size_t>(r), 0);
            for (long i = 0; i < r; ++i)
                for (long j = 0; j < r; ++j) ub[static_cast<size_t>(i)] += s.U(i, j) * b[static_cast<size_t>(j)];
            bool obstructed = false;
            for (long i = 0; i < r; ++i) {
                if (i < s.rank && ub[static_cast<size_t>(i)] % s.S(i, i) != 0) obstructed = true;
                if (i >= s.rank && ub[static_cast<size_t>(i)] != 0) obstructed = true;
            }
            CHECK(obstructed);
        }
    }
}

TEST_CASE("field elimination over Q(i)") {
    GaussMat A(2, 2);
    A(0, 0) = gauss_i();
    A(0, 1) = GaussRat(1);
    A(1, 0) = GaussRat(1);
    A(1, 1) = -gauss_i();
    // rank 1: second row = -i * first row
    CHECK(rank(A) == 1);
    auto k = kernel_basis(A);
    REQUIRE(k.size() == 1);
    CHECK((A.apply(k[0]) == std::vector<GaussRat>{GaussRat(0), GaussRat(0)}));
}

TEST_CASE("qz normal form: the three canonical quotients") {
    // Q^1 / <1>  =  Q/Z
    MixedSubgroup num = MixedSubgroup::zero(1, 0);
    num.add_qgen({Rat(1)});
    MixedSubgroup den = MixedSubgroup::zero(1, 0);
    den.add_zgen({{Rat(1)}, {}});
    auto inv = quotient_invariants(num, den);
    CHECK(inv == AbelianInvariants{0, 1, 0, {}});
    CHECK(inv.to_string() == "(Q/Z)");

    // Z^2 / <(2,0),(0,3)>  =  Z/6
    MixedSubgroup num2 = MixedSubgroup::full(0, 2);
    MixedSubgroup den2 = MixedSubgroup::zero(0, 2);
    den2.add_zgen({{}, {Int(2), Int(0)}});
    den2.add_zgen({{}, {Int(0), Int(3)}});
    auto inv2 = quotient_invariants(num2, den2);
    CHECK(inv2 == AbelianInvariants{0, 0, 0, {Int(6)}});

    // (Q + Z) / <(1/2, 3)>  =  Q + Z/3
    MixedSubgroup num3 = MixedSubgroup::full(1, 1);
    MixedSubgroup den3 = MixedSubgroup::zero(1, 1);
    den3.add_zgen({{Rat(1, 2)}, {Int(3)}});
    auto inv3 = quotient_invariants(num3, den3);
    CHECK(inv3 == AbelianInvariants{1, 0, 0, {Int(3)}});
}

TEST_CASE("qz normal form under 50 random unimodular re-presentations") {
    Rng rng(424242);
    // base: (Q^2 + Z^3) / mixed relations
    MixedSubgroup num = MixedSubgroup::full(2, 3);
    MixedSubgroup den = MixedSubgroup::zero(2, 3);
    den.add_zgen({{Rat(1, 2), Rat(0)}, {Int(2), Int(0), Int(0)}});
    den.add_zgen({{Rat(0), Rat(1, 3)}, {Int(0), Int(4), Int(2)}});
    den.add_zgen({{Rat(0), Rat(0)}, {Int(0), Int(0), Int(6)}});
    auto base = quotient_invariants(num, den);
    for (int trial = 0; trial < 50; ++trial) {
        long k = static_cast<long>(den.zgens.size());
        IntMat U = rng.rand_unimodular(k);
        MixedSubgroup den2 = MixedSubgroup::zero(2, 3);
        for (long i = 0; i < k; ++i) {
            MixedVec g = MixedVec::zero(2, 3);
            for (long j = 0; j < k; ++j) {
                if (U(i, j) == 0) continue;
                for (size_t t = 0; t < g.q.size(); ++t) g.q[t] += Rat(U(i, j)) * den.zgens[j].q[t];
                for (size_t t = 0; t < g.z.size(); ++t) g.z[t] += U(i, j) * den.zgens[j].z[t];
            }
            den2.add_zgen(std::move(g));
        }
        CHECK(quotient_invariants(num, den2) == base);
    }
}

TEST_CASE("membership in mixed subgroups") {
    // S = Q*(1,0) + Z*((0,-1),(1))  inside Q^2 + Z^1
    MixedSubgroup S = MixedSubgroup::zero(2, 1);
    S.add_qgen({Rat(1), Rat(0)});
    S.add_zgen({{Rat(0), Rat(-1)}, {Int(1)}});
    CHECK(S.contains({{Rat(7, 3), Rat(-2)}, {Int(2)}}));
    CHECK(!S.contains({{Rat(0), Rat(-1, 2)}, {Int(1)}}));   // q-part not reachable
    CHECK(!S.contains({{Rat(0), Rat(0)}, {Int(0)}}) == false);  // zero is a member
    CHECK(S.contains_divisible({Rat(5), Rat(0)}));
    CHECK(!S.contains_divisible({Rat(0), Rat(1)}));
}

TEST_CASE("constrained subgroup examples") {
    // L = 0, V = 0, K = 0: full ambient comes back
    MixedMap L = MixedMap::make(2, 1, 1, 0);
    MixedMap K = MixedMap::make(2, 1, 0, 0);
    auto full = constrained_subgroup(L, {}, K);
    CHECK(full.contains_subgroup(MixedSubgroup::full(2, 1)));

    // K = identity: only x = 0
    MixedMap K2 = MixedMap::identity(2, 1);
    auto none = constrained_subgroup(L, {}, K2);
    CHECK(none.qgens.empty());
    CHECK(none.zgens.empty());
}

TEST_CASE("mixed kernel and mixed solve") {
    // x_q + 2 x_z = 0 with x_q rational, x_z integer: generated by (-2, 1)
    RatMat Mq = qmat(1, 1, {1});
    RatMat Mz = qmat(1, 1, {2});
    auto ker = mixed_kernel(Mq, Mz);
    CHECK(ker.qgens.empty());
    REQUIRE(ker.zgens.size() == 1);
    CHECK(ker.zgens[0].q[0] == Rat(-2) * Rat(ker.zgens[0].z[0]));

    // 2 x_z = 3 has no integer solution even with no rational unknowns
    RatMat empty_q(1, 0);
    CHECK(!mixed_solve(empty_q, qmat(1, 1, {2}), {Rat(3)}).has_value());
    auto sol = mixed_solve(empty_q, qmat(1, 1, {2}), {Rat(4)});
    REQUIRE(sol.has_value());
    CHECK(sol->second[0] == 2);
}

TEST_CASE("preimage and class-level maps") {
    // f: Q^1+Z^1 -> Q^1, (q, z) -> q + z/2; T = Z*(1/2)
    MixedMap f = MixedMap::make(1, 1, 1, 0);
    f.A(0, 0) = 1;
    f.B(0, 0) = Rat(1, 2);
    MixedSubgroup N = MixedSubgroup::full(1, 1);
    MixedSubgroup T = MixedSubgroup::zero(1, 0);
    T.add_zgen({{Rat(1, 2)}, {}});
    auto pre = preimage_in(f, N, T);
    // every generator must actually map into T
    for (auto& g : pre.zgens) CHECK(T.contains(f.apply(g)));
    for (auto& g : pre.qgens) CHECK(f.A.apply(g) == std::vector<Rat>{Rat(0)});
}
