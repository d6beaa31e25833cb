#pragma once
#include "complex.hpp"

namespace sparkforge {

/// Bookkeeping for mixed ambients assembled from ring-tagged summands.
struct AmbientLayout {
    struct Slot {
        Ring ring;
        long rank;  // in ring units
        long qoff, zoff;
    };
    long m = 0, n = 0;
    std::vector<Slot> slots;

    long add(Ring ring, long rank) {
        auto [dm, dn] = mixed_ambient(ring, rank);
        slots.push_back({ring, rank, m, n});
        m += dm;
        n += dn;
        return static_cast<long>(slots.size()) - 1;
    }

    /// embed a ring-tagged coordinate vector of a slot into the ambient
    MixedVec embed(long slot, const std::vector<GaussRat>& v) const {
        const Slot& s = slots[static_cast<size_t>(slot)];
        if (static_cast<long>(v.size()) != s.rank) throw Error("layout embed: size mismatch");
        MixedVec x = MixedVec::zero(m, n);
        for (long i = 0; i < s.rank; ++i) {
            const GaussRat& g = v[i];
            switch (s.ring) {
                case Ring::Z:
                    if (g.im != 0 || g.re.get_den() != 1) throw Error("layout embed: non-integer entry");
                    x.z[s.zoff + i] = g.re.get_num();
                    break;
                case Ring::Q:
                    if (g.im != 0) throw Error("layout embed: non-real entry");
                    x.q[s.qoff + i] = g.re;
                    break;
                case Ring::QI:
                    x.q[s.qoff + 2 * i] = g.re;
                    x.q[s.qoff + 2 * i + 1] = g.im;
                    break;
            }
        }
        return x;
    }

    /// read a slot back out of an ambient element
    std::vector<GaussRat> extract(long slot, const MixedVec& x) const {
        const Slot& s = slots[static_cast<size_t>(slot)];
        std::vector<GaussRat> v(static_cast<size_t>(s.rank));
        for (long i = 0; i < s.rank; ++i) {
            switch (s.ring) {
                case Ring::Z: v[i] = GaussRat(Rat(x.z[s.zoff + i])); break;
                case Ring::Q: v[i] = GaussRat(x.q[s.qoff + i]); break;
                case Ring::QI: v[i] = GaussRat(x.q[s.qoff + 2 * i], x.q[s.qoff + 2 * i + 1]); break;
            }
        }
        return v;
    }
};

/// Assembles a MixedMap from ring-tagged blocks between layout slots.
struct MapBuilder {
    AmbientLayout src, dst;
    MixedMap f;

    MapBuilder(AmbientLayout s, AmbientLayout d) : src(std::move(s)), dst(std::move(d)) {
        f = MixedMap::make(src.m, src.n, dst.m, dst.n);
    }

    /// f += sign * blk from src slot i to dst slot j (blk in ring entries)
    void block(long sslot, long dslot, const GaussMat& blk, int sign = 1) {
        const auto& s = src.slots[static_cast<size_t>(sslot)];
        const auto& d = dst.slots[static_cast<size_t>(dslot)];
        if (blk.nrows != d.rank || blk.ncols != s.rank) throw Error("MapBuilder: block shape mismatch");
        GaussRat sg = GaussRat(sign);
        for (long i = 0; i < blk.nrows; ++i)
            for (long j = 0; j < blk.ncols; ++j) {
                GaussRat g = sg * blk(i, j);
                if (g.is_zero()) continue;
                if (s.ring == Ring::Z && d.ring == Ring::Z) {
                    if (g.im != 0 || g.re.get_den() != 1) throw Error("MapBuilder: non-integer Z block");
                    f.C(d.zoff + i, s.zoff + j) += g.re.get_num();
                } else if (s.ring == Ring::Z) {
                    if (d.ring == Ring::QI) {
                        f.B(d.qoff + 2 * i, s.zoff + j) += g.re;
                        f.B(d.qoff + 2 * i + 1, s.zoff + j) += g.im;
                    } else {
                        if (g.im != 0) throw Error("MapBuilder: non-real entry into Q");
                        f.B(d.qoff + i, s.zoff + j) += g.re;
                    }
                } else if (s.ring == Ring::QI && d.ring == Ring::QI) {
                    f.A(d.qoff + 2 * i, s.qoff + 2 * j) += g.re;
                    f.A(d.qoff + 2 * i, s.qoff + 2 * j + 1) += -g.im;
                    f.A(d.qoff + 2 * i + 1, s.qoff + 2 * j) += g.im;
                    f.A(d.qoff + 2 * i + 1, s.qoff + 2 * j + 1) += g.re;
                } else if (s.ring == Ring::Q && d.ring == Ring::QI) {
                    f.A(d.qoff + 2 * i, s.qoff + j) += g.re;
                    f.A(d.qoff + 2 * i + 1, s.qoff + j) += g.im;
                } else if (s.ring == Ring::Q && d.ring == Ring::Q) {
                    if (g.im != 0) throw Error("MapBuilder: non-real entry into Q");
                    f.A(d.qoff + i, s.qoff + j) += g.re;
                } else {
                    throw Error("MapBuilder: unsupported ring combination");
                }
            }
    }
};

/// Linear solution operator: S with W * (S v) = v for every v in the column space
/// of W. Used to express "solve" as a matrix where a fixed linear choice is needed.
template <typename T>
Mat<T> solve_operator(const Mat<T>& W) {
    Mat<T> aug(W.nrows, W.ncols + W.nrows);
    for (long i = 0; i < W.nrows; ++i) {
        for (long j = 0; j < W.ncols; ++j) aug(i, j) = W(i, j);
        aug(i, W.ncols + i) = T(1);
    }
    auto pivots = rref(aug);
    Mat<T> S(W.ncols, W.nrows);
    for (size_t r = 0; r < pivots.size(); ++r) {
        long c = pivots[r];
        if (c >= W.ncols) break;  // rows past the rank carry left-kernel data
        for (long j = 0; j < W.nrows; ++j) S(c, j) = aug(static_cast<long>(r), W.ncols + j);
    }
    return S;
}

}  // namespace sparkforge
