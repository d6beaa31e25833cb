#pragma once
#include "matrix.hpp"

#include <cstdint>

namespace sparkforge {

/// SplitMix64: deterministic across platforms, good enough for test-data generation.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// uniform in [lo, hi]
    long range(long lo, long hi) {
        if (hi < lo) throw Error("Rng::range: empty");
        return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
    Int rand_int(long lo, long hi) { return Int(range(lo, hi)); }
    Rat rand_rat(long num_bound, long den_bound) {
        long d = range(1, den_bound);
        return Rat(range(-num_bound, num_bound), d);
    }
    GaussRat rand_gauss(long num_bound, long den_bound) {
        return {rand_rat(num_bound, den_bound), rand_rat(num_bound, den_bound)};
    }

    /// random unimodular matrix: identity stirred by elementary row ops
    IntMat rand_unimodular(long n, long ops = 12, long coeff = 3) {
        IntMat U = IntMat::identity(n);
        for (long t = 0; t < ops && n > 1; ++t) {
            long i = range(0, n - 1), j = range(0, n - 1);
            if (i == j) continue;
            Int f = rand_int(-coeff, coeff);
            for (long c = 0; c < n; ++c) U(i, c) += f * U(j, c);
        }
        return U;
    }
};

}  // namespace sparkforge
