#pragma once
#include "numeric.hpp"

#include <optional>
#include <tuple>
#include <vector>

namespace sparkforge {

/// Dense exact matrix acting on column vectors: A : T^cols -> T^rows.
/// Inputs are sparse (triplet lists) but the elimination kernels work densely;
/// all sizes in this artifact stay in the low hundreds.
template <typename T>
struct Mat {
    long nrows = 0, ncols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(long r, long c) : nrows(r), ncols(c), a(static_cast<size_t>(r) * c) {}

    T& operator()(long i, long j) { return a[static_cast<size_t>(i) * ncols + j]; }
    const T& operator()(long i, long j) const { return a[static_cast<size_t>(i) * ncols + j]; }

    static Mat identity(long n) {
        Mat m(n, n);
        for (long i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Mat from_triplets(long r, long c, const std::vector<std::tuple<long, long, T>>& ts) {
        Mat m(r, c);
        for (auto& [i, j, v] : ts) {
            if (i < 0 || i >= r || j < 0 || j >= c) throw Error("triplet index out of bounds");
            m(i, j) += v;
        }
        return m;
    }

    bool is_zero() const {
        for (auto& x : a)
            if (!sparkforge::is_zero(x)) return false;
        return true;
    }

    Mat transpose() const {
        Mat t(ncols, nrows);
        for (long i = 0; i < nrows; ++i)
            for (long j = 0; j < ncols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.ncols != y.nrows) throw Error("matrix product: dimension mismatch");
        Mat z(x.nrows, y.ncols);
        for (long i = 0; i < x.nrows; ++i)
            for (long k = 0; k < x.ncols; ++k) {
                const T& v = x(i, k);
                if (sparkforge::is_zero(v)) continue;
                for (long j = 0; j < y.ncols; ++j) {
                    const T& w = y(k, j);
                    if (!sparkforge::is_zero(w)) z(i, j) += v * w;
                }
            }
        return z;
    }

    friend Mat operator+(const Mat& x, const Mat& y) {
        if (x.nrows != y.nrows || x.ncols != y.ncols) throw Error("matrix sum: dimension mismatch");
        Mat z = x;
        for (size_t k = 0; k < z.a.size(); ++k) z.a[k] += y.a[k];
        return z;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        if (x.nrows != y.nrows || x.ncols != y.ncols) throw Error("matrix diff: dimension mismatch");
        Mat z = x;
        for (size_t k = 0; k < z.a.size(); ++k) z.a[k] -= y.a[k];
        return z;
    }
    friend bool operator==(const Mat& x, const Mat& y) {
        return x.nrows == y.nrows && x.ncols == y.ncols && x.a == y.a;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (static_cast<long>(v.size()) != ncols) throw Error("matrix apply: dimension mismatch");
        std::vector<T> w(nrows, T(0));
        for (long i = 0; i < nrows; ++i)
            for (long j = 0; j < ncols; ++j)
                if (!sparkforge::is_zero((*this)(i, j))) w[i] += (*this)(i, j) * v[j];
        return w;
    }

    std::vector<T> col(long j) const {
        std::vector<T> v(nrows);
        for (long i = 0; i < nrows; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_col(long j, const std::vector<T>& v) {
        for (long i = 0; i < nrows; ++i) (*this)(i, j) = v[i];
    }

    /// columns of `cols` appended to the right
    static Mat hcat(const Mat& x, const Mat& y) {
        if (x.nrows != y.nrows) throw Error("hcat: row mismatch");
        Mat z(x.nrows, x.ncols + y.ncols);
        for (long i = 0; i < x.nrows; ++i) {
            for (long j = 0; j < x.ncols; ++j) z(i, j) = x(i, j);
            for (long j = 0; j < y.ncols; ++j) z(i, x.ncols + j) = y(i, j);
        }
        return z;
    }

    static Mat from_columns(long r, const std::vector<std::vector<T>>& cs) {
        Mat z(r, static_cast<long>(cs.size()));
        for (long j = 0; j < z.ncols; ++j) {
            if (static_cast<long>(cs[j].size()) != r) throw Error("from_columns: size mismatch");
            for (long i = 0; i < r; ++i) z(i, j) = cs[j][i];
        }
        return z;
    }
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;
using GaussMat = Mat<GaussRat>;

template <typename T>
std::vector<T> vec_add(std::vector<T> x, const std::vector<T>& y) {
    if (x.size() != y.size()) throw Error("vector sum: size mismatch");
    for (size_t k = 0; k < x.size(); ++k) x[k] += y[k];
    return x;
}
template <typename T>
std::vector<T> vec_sub(std::vector<T> x, const std::vector<T>& y) {
    if (x.size() != y.size()) throw Error("vector diff: size mismatch");
    for (size_t k = 0; k < x.size(); ++k) x[k] -= y[k];
    return x;
}
template <typename T, typename S>
std::vector<T> vec_scale(std::vector<T> x, const S& c) {
    for (auto& v : x) v = v * T(c);
    return x;
}
template <typename T>
bool vec_is_zero(const std::vector<T>& x) {
    for (auto& v : x)
        if (!is_zero(v)) return false;
    return true;
}

/// Row-reduce A in place over its field; returns pivot columns.
/// Pivot choice: first nonzero in the leftmost unfinished column (deterministic).
template <typename T>
std::vector<long> rref(Mat<T>& A) {
    std::vector<long> pivots;
    long row = 0;
    for (long col = 0; col < A.ncols && row < A.nrows; ++col) {
        long p = -1;
        for (long i = row; i < A.nrows; ++i)
            if (!is_zero(A(i, col))) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (long j = 0; j < A.ncols; ++j) std::swap(A(p, j), A(row, j));
        T inv = field_inv(A(row, col));
        for (long j = col; j < A.ncols; ++j) A(row, j) = A(row, j) * inv;
        for (long i = 0; i < A.nrows; ++i) {
            if (i == row || is_zero(A(i, col))) continue;
            T f = A(i, col);
            for (long j = col; j < A.ncols; ++j) A(i, j) -= f * A(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <typename T>
long rank(Mat<T> A) {
    return static_cast<long>(rref(A).size());
}

/// Right kernel basis {x : Ax = 0}; free variables set to canonical unit values.
template <typename T>
std::vector<std::vector<T>> kernel_basis(Mat<T> A) {
    auto pivots = rref(A);
    std::vector<bool> is_pivot(A.ncols, false);
    for (long c : pivots) is_pivot[c] = true;
    std::vector<std::vector<T>> basis;
    for (long c = 0; c < A.ncols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<T> v(A.ncols, T(0));
        v[c] = T(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -A(static_cast<long>(r), c);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some x with Ax = b, or nullopt. Deterministic: free variables zero under the
/// fixed leftmost pivot order (minimal support in that sense).
template <typename T>
std::optional<std::vector<T>> field_solve(const Mat<T>& A, const std::vector<T>& b) {
    if (static_cast<long>(b.size()) != A.nrows) throw Error("solve: dimension mismatch");
    Mat<T> aug(A.nrows, A.ncols + 1);
    for (long i = 0; i < A.nrows; ++i) {
        for (long j = 0; j < A.ncols; ++j) aug(i, j) = A(i, j);
        aug(i, A.ncols) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == A.ncols) return std::nullopt;
    std::vector<T> x(A.ncols, T(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(static_cast<long>(r), A.ncols);
    return x;
}

/// Solve AX = B column by column; nullopt if any column has no solution.
template <typename T>
std::optional<Mat<T>> field_solve_mat(const Mat<T>& A, const Mat<T>& B) {
    Mat<T> X(A.ncols, B.ncols);
    for (long j = 0; j < B.ncols; ++j) {
        auto x = field_solve(A, B.col(j));
        if (!x) return std::nullopt;
        X.set_col(j, *x);
    }
    return X;
}

/// Basis of the column space, as a subset of columns reduced to echelon form.
template <typename T>
std::vector<std::vector<T>> column_space_basis(const Mat<T>& A) {
    Mat<T> At = A.transpose();
    rref(At);
    std::vector<std::vector<T>> basis;
    for (long i = 0; i < At.nrows; ++i) {
        std::vector<T> row(At.ncols);
        bool nz = false;
        for (long j = 0; j < At.ncols; ++j) {
            row[j] = At(i, j);
            nz = nz || !is_zero(row[j]);
        }
        if (nz) basis.push_back(std::move(row));
    }
    return basis;
}

}  // namespace sparkforge
