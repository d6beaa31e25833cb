#pragma once
#include "complex.hpp"

#include <map>

namespace sparkforge {

/// Finite good-cover nerve: an abstract simplicial complex on vertices 0..n-1,
/// simplices stored as ascending vertex tuples, closed under faces.
struct Nerve {
    long vertex_count = 0;
    std::vector<std::vector<std::vector<long>>> by_dim;  // by_dim[d] = list of (d+1)-tuples
    std::map<std::vector<long>, long> index;             // tuple -> position in its dimension list

    static Nerve from_maximal(long vertex_count, const std::vector<std::vector<long>>& maximal);

    long dim() const { return static_cast<long>(by_dim.size()) - 1; }
    long count(long d) const { return (d < 0 || d > dim()) ? 0 : static_cast<long>(by_dim[d].size()); }
    const std::vector<long>& simplex(long d, long i) const { return by_dim[d][i]; }
    long index_of(const std::vector<long>& s) const;

    /// C^*(U, Z) with the alternating Cech differential, on a window >= dim
    CochainComplex integral_cochains(long window) const;
};

Nerve point_nerve();
Nerve interval_nerve();             // two vertices, one edge
Nerve circle_nerve();               // three vertices, three edges
Nerve triangle_nerve();             // solid 2-simplex (contractible)
Nerve torus7_nerve();               // 7-vertex triangulation of the 2-torus

}  // namespace sparkforge
