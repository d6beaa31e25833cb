#include "snf.hpp"

namespace sparkforge {

namespace {

// working state: A is reduced in place, row ops mirrored into U, col ops into V
struct Work {
    IntMat A, U, V;
};

void swap_rows(Work& w, long i, long j) {
    if (i == j) return;
    for (long c = 0; c < w.A.ncols; ++c) std::swap(w.A(i, c), w.A(j, c));
    for (long c = 0; c < w.U.ncols; ++c) std::swap(w.U(i, c), w.U(j, c));
}
void swap_cols(Work& w, long i, long j) {
    if (i == j) return;
    for (long r = 0; r < w.A.nrows; ++r) std::swap(w.A(r, i), w.A(r, j));
    for (long r = 0; r < w.V.nrows; ++r) std::swap(w.V(r, i), w.V(r, j));
}
void add_row(Work& w, long dst, long src, const Int& f) {  // row_dst += f*row_src
    if (f == 0) return;
    for (long c = 0; c < w.A.ncols; ++c) w.A(dst, c) += f * w.A(src, c);
    for (long c = 0; c < w.U.ncols; ++c) w.U(dst, c) += f * w.U(src, c);
}
void add_col(Work& w, long dst, long src, const Int& f) {
    if (f == 0) return;
    for (long r = 0; r < w.A.nrows; ++r) w.A(r, dst) += f * w.A(r, src);
    for (long r = 0; r < w.V.nrows; ++r) w.V(r, dst) += f * w.V(r, src);
}
void negate_row(Work& w, long i) {
    for (long c = 0; c < w.A.ncols; ++c) w.A(i, c) = -w.A(i, c);
    for (long c = 0; c < w.U.ncols; ++c) w.U(i, c) = -w.U(i, c);
}

// gcd row combination: row_t <- p*row_t + q*row_j, row_j <- (a/g)*row_j - (b/g)*row_t(old);
// the 2x2 transform has determinant 1
void gcd_rows(Work& w, long t, long j, long col) {
    Int a = w.A(t, col), b = w.A(j, col), g, p, q;
    mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int ag = a / g, bg = b / g;
    for (long c = 0; c < w.A.ncols; ++c) {
        Int x = w.A(t, c), y = w.A(j, c);
        w.A(t, c) = p * x + q * y;
        w.A(j, c) = ag * y - bg * x;
    }
    for (long c = 0; c < w.U.ncols; ++c) {
        Int x = w.U(t, c), y = w.U(j, c);
        w.U(t, c) = p * x + q * y;
        w.U(j, c) = ag * y - bg * x;
    }
}
void gcd_cols(Work& w, long t, long j, long row) {
    Int a = w.A(row, t), b = w.A(row, j), g, p, q;
    mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int ag = a / g, bg = b / g;
    for (long r = 0; r < w.A.nrows; ++r) {
        Int x = w.A(r, t), y = w.A(r, j);
        w.A(r, t) = p * x + q * y;
        w.A(r, j) = ag * y - bg * x;
    }
    for (long r = 0; r < w.V.nrows; ++r) {
        Int x = w.V(r, t), y = w.V(r, j);
        w.V(r, t) = p * x + q * y;
        w.V(r, j) = ag * y - bg * x;
    }
}

// pivot selection per the sparsity policy: minimal |value| among rows with the
// fewest nonzero entries in the active block
std::pair<long, long> pick_pivot(const IntMat& A, long t) {
    long best_i = -1, best_j = -1;
    long best_count = -1;
    Int best_abs;
    for (long i = t; i < A.nrows; ++i) {
        long count = 0;
        long first_j = -1;
        Int row_min;
        for (long j = t; j < A.ncols; ++j) {
            if (A(i, j) == 0) continue;
            ++count;
            Int v = abs(A(i, j));
            if (first_j < 0 || v < row_min) {
                row_min = v;
                first_j = j;
            }
        }
        if (count == 0) continue;
        if (best_i < 0 || count < best_count || (count == best_count && row_min < best_abs)) {
            best_i = i;
            best_j = first_j;
            best_count = count;
            best_abs = row_min;
        }
    }
    return {best_i, best_j};
}

}  // namespace

SmithResult smith_normal_form(const IntMat& M) {
    Work w{M, IntMat::identity(M.nrows), IntMat::identity(M.ncols)};
    long t = 0;
    long lim = std::min(M.nrows, M.ncols);
    while (t < lim) {
        auto [pi, pj] = pick_pivot(w.A, t);
        if (pi < 0) break;  // active block is zero
        swap_rows(w, t, pi);
        swap_cols(w, t, pj);
        // clear row t and column t; gcd steps may refill, so loop
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (long i = t + 1; i < w.A.nrows; ++i) {
                if (w.A(i, t) == 0) continue;
                if (w.A(i, t) % w.A(t, t) == 0)
                    add_row(w, i, t, -w.A(i, t) / w.A(t, t));
                else {
                    gcd_rows(w, t, i, t);
                    dirty = true;
                }
            }
            for (long j = t + 1; j < w.A.ncols; ++j) {
                if (w.A(t, j) == 0) continue;
                if (w.A(t, j) % w.A(t, t) == 0)
                    add_col(w, j, t, -w.A(t, j) / w.A(t, t));
                else {
                    gcd_cols(w, t, j, t);
                    dirty = true;
                }
            }
        }
        if (w.A(t, t) < 0) negate_row(w, t);
        ++t;
    }
    long r = t;
    // divisor chain: s_i | s_{i+1}
    bool changed = true;
    while (changed) {
        changed = false;
        for (long i = 0; i + 1 < r; ++i) {
            if (w.A(i + 1, i + 1) % w.A(i, i) == 0) continue;
            changed = true;
            // bring s_{i+1} into column i and redo the 2x2 block
            add_col(w, i, i + 1, 1);
            gcd_rows(w, i, i + 1, i);
            // clear the fill-in at (i, i+1)
            if (w.A(i, i + 1) != 0) add_col(w, i + 1, i, -w.A(i, i + 1) / w.A(i, i));
            if (w.A(i + 1, i) != 0) add_row(w, i + 1, i, -w.A(i + 1, i) / w.A(i, i));
            if (w.A(i, i) < 0) negate_row(w, i);
            if (w.A(i + 1, i + 1) < 0) negate_row(w, i + 1);
        }
    }
    SmithResult res{std::move(w.U), std::move(w.A), std::move(w.V), r};
    return res;
}

std::optional<std::vector<Int>> int_solve(const IntMat& A, const std::vector<Int>& b) {
    if (static_cast<long>(b.size()) != A.nrows) throw Error("int_solve: dimension mismatch");
    auto snf = smith_normal_form(A);
    std::vector<Int> ub(A.nrows, 0);
    for (long i = 0; i < A.nrows; ++i)
        for (long j = 0; j < A.nrows; ++j)
            if (snf.U(i, j) != 0) ub[i] += snf.U(i, j) * b[j];
    std::vector<Int> y(A.ncols, 0);
    for (long i = 0; i < A.nrows; ++i) {
        if (i < snf.rank) {
            if (ub[i] % snf.S(i, i) != 0) return std::nullopt;  // residue certificate
            if (i < A.ncols) y[i] = ub[i] / snf.S(i, i);
        } else if (ub[i] != 0)
            return std::nullopt;
    }
    return snf.V.apply(y);
}

std::vector<std::vector<Int>> int_kernel(const IntMat& A) {
    auto snf = smith_normal_form(A);
    std::vector<std::vector<Int>> basis;
    for (long j = snf.rank; j < A.ncols; ++j) basis.push_back(snf.V.col(j));
    return basis;
}

std::vector<std::vector<Int>> lattice_basis(const IntMat& G) {
    auto snf = smith_normal_form(G);
    // columns of G*V are s_i * (U^-1 e_i) for i < rank, then zero; they generate the
    // same lattice as the columns of G and the nonzero ones are independent
    IntMat GV = G * snf.V;
    std::vector<std::vector<Int>> basis;
    for (long j = 0; j < snf.rank; ++j) basis.push_back(GV.col(j));
    return basis;
}

Int int_det(const IntMat& A) {
    if (A.nrows != A.ncols) throw Error("det: not square");
    long n = A.nrows;
    if (n == 0) return 1;
    IntMat M = A;
    Int prev = 1;
    int sign = 1;
    for (long k = 0; k < n - 1; ++k) {
        if (M(k, k) == 0) {
            long p = -1;
            for (long i = k + 1; i < n; ++i)
                if (M(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            for (long j = 0; j < n; ++j) std::swap(M(k, j), M(p, j));
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j) {
                M(i, j) = M(k, k) * M(i, j) - M(i, k) * M(k, j);
                M(i, j) /= prev;  // exact by Bareiss
            }
        prev = M(k, k);
    }
    return sign > 0 ? M(n - 1, n - 1) : -M(n - 1, n - 1);
}

std::pair<Int, IntMat> clear_denominators(const RatMat& A) {
    Int d = 1;
    for (auto& q : A.a) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den().get_mpz_t());
    IntMat B(A.nrows, A.ncols);
    for (long i = 0; i < A.nrows; ++i)
        for (long j = 0; j < A.ncols; ++j) {
            Rat v = A(i, j) * d;
            B(i, j) = v.get_num();
        }
    return {d, B};
}

}  // namespace sparkforge
