#include "nerve.hpp"

#include <algorithm>
#include <set>

namespace sparkforge {

Nerve Nerve::from_maximal(long vertex_count, const std::vector<std::vector<long>>& maximal) {
    std::set<std::vector<long>> all;
    // close under faces by enumerating vertex subsets
    for (auto s : maximal) {
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw Error("nerve: repeated vertex in simplex");
        for (long v : s)
            if (v < 0 || v >= vertex_count) throw Error("nerve: vertex out of range");
        long n = static_cast<long>(s.size());
        for (long mask = 1; mask < (1L << n); ++mask) {
            std::vector<long> face;
            for (long b = 0; b < n; ++b)
                if (mask & (1L << b)) face.push_back(s[b]);
            all.insert(face);
        }
    }
    Nerve nv;
    nv.vertex_count = vertex_count;
    for (auto& s : all) {
        long d = static_cast<long>(s.size()) - 1;
        while (static_cast<long>(nv.by_dim.size()) <= d) nv.by_dim.emplace_back();
        nv.by_dim[d].push_back(s);
    }
    for (auto& lst : nv.by_dim) std::sort(lst.begin(), lst.end());
    for (long d = 0; d <= nv.dim(); ++d)
        for (long i = 0; i < nv.count(d); ++i) nv.index[nv.by_dim[d][i]] = i;
    return nv;
}

long Nerve::index_of(const std::vector<long>& s) const {
    auto it = index.find(s);
    if (it == index.end()) throw Error("nerve: unknown simplex");
    return it->second;
}

CochainComplex Nerve::integral_cochains(long window) const {
    if (window < dim() + 1) window = dim() + 1;
    CochainComplex c = CochainComplex::zero(Ring::Z, window);
    for (long d = 0; d <= dim(); ++d) c.ranks[d] = count(d);
    for (long d = 0; d + 1 <= dim(); ++d) {
        GaussMat m(count(d + 1), count(d));
        for (long i = 0; i < count(d + 1); ++i) {
            const auto& s = simplex(d + 1, i);
            for (size_t j = 0; j < s.size(); ++j) {
                std::vector<long> face;
                for (size_t t = 0; t < s.size(); ++t)
                    if (t != j) face.push_back(s[t]);
                long sign = (j % 2 == 0) ? 1 : -1;
                m(i, index_of(face)) += GaussRat(sign);
            }
        }
        c.set_diff(d, std::move(m));
    }
    c.validate();
    return c;
}

Nerve point_nerve() { return Nerve::from_maximal(1, {{0}}); }

Nerve interval_nerve() { return Nerve::from_maximal(2, {{0, 1}}); }

Nerve circle_nerve() { return Nerve::from_maximal(3, {{0, 1}, {1, 2}, {0, 2}}); }

Nerve triangle_nerve() { return Nerve::from_maximal(3, {{0, 1, 2}}); }

Nerve torus7_nerve() {
    // Moebius-Kantor triangulation: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7
    std::vector<std::vector<long>> tris;
    for (long i = 0; i < 7; ++i) {
        tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
        tris.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return Nerve::from_maximal(7, tris);
}

}  // namespace sparkforge
