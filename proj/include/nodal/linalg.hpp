#pragma once

#include <optional>
#include <vector>

#include "nodal/rational.hpp"

namespace nodal {

using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>; // row-major

inline Mat mat_zero(size_t rows, size_t cols) { return Mat(rows, Vec(cols, Scalar(0))); }

inline Mat mat_identity(size_t n) {
    Mat m = mat_zero(n, n);
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
    size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    Mat out = mat_zero(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (size_t j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
        }
    return out;
}

inline Vec mat_apply(const Mat& a, const Vec& x) {
    Vec out(a.size(), Scalar(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j)
            if (a[i][j] != 0 && x[j] != 0) out[i] += a[i][j] * x[j];
    return out;
}

/// In-place reduced row echelon form; returns the pivot column of each
/// pivot row in order.
inline std::vector<size_t> rref(Mat& m) {
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size(), row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t sel = row;
        while (sel < rows && m[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[row]);
        Scalar inv = Scalar(1) / m[row][col];
        for (size_t j = col; j < cols; ++j) m[row][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col] == 0) continue;
            Scalar f = m[i][col];
            for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

/// Solves A x = b exactly; free variables are set to zero.  Returns nullopt
/// when the system is inconsistent.
inline std::optional<Vec> solve_linear(const Mat& a, const Vec& b) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    Mat aug = a;
    for (size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    auto pivots = rref(aug);
    // Inconsistent iff a pivot lands in the augmented column.
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    Vec x(cols, Scalar(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
    return x;
}

/// Basis of the kernel of A.
inline std::vector<Vec> nullspace(const Mat& a) {
    size_t cols = a.empty() ? 0 : a[0].size();
    Mat m = a;
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (size_t freec = 0; freec < cols; ++freec) {
        if (is_pivot[freec]) continue;
        Vec v(cols, Scalar(0));
        v[freec] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][freec];
        basis.push_back(v);
    }
    return basis;
}

inline size_t mat_rank(Mat m) { return rref(m).size(); }

inline std::optional<Mat> mat_inverse(const Mat& a) {
    size_t n = a.size();
    Mat aug = a;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? Scalar(1) : Scalar(0));
    }
    auto pivots = rref(aug);
    if (pivots.size() != n) return std::nullopt;
    Mat inv = mat_zero(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

} // namespace nodal
