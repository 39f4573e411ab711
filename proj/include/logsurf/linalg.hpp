#pragma once

// Small dense exact linear algebra. The matrices here are intersection forms
// and peeling systems of size <= ~15, so plain rational Gauss with pivoting is
// the right tool: exact, and singularity detection is a pivot search failure.

#include <optional>
#include <vector>

#include "logsurf/rational.hpp"

namespace logsurf {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<std::vector<Rational>>; // row-major, rectangular
using ZVector = std::vector<Integer>;
using ZMatrix = std::vector<std::vector<Integer>>;

inline QMatrix qmatrix(std::size_t rows, std::size_t cols) {
    return QMatrix(rows, QVector(cols, Rational(0)));
}

inline Rational det(QMatrix a) {
    const std::size_t n = a.size();
    Rational d(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) { std::swap(a[piv], a[col]); d = -d; }
        d *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return d;
}

/// Leading principal minor determinants det(A[0..k][0..k]) for k = 0..n-1.
inline std::vector<Rational> leading_minors(const QMatrix& a) {
    std::vector<Rational> out;
    out.reserve(a.size());
    for (std::size_t k = 1; k <= a.size(); ++k) {
        QMatrix sub(k, QVector(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub[i][j] = a[i][j];
        out.push_back(det(std::move(sub)));
    }
    return out;
}

/// Sylvester's criterion in exact arithmetic: negative definite iff the
/// leading principal minors alternate sign starting negative.
inline bool negative_definite(const QMatrix& a) {
    auto minors = leading_minors(a);
    for (std::size_t k = 0; k < minors.size(); ++k) {
        bool want_negative = (k % 2 == 0);
        if (want_negative ? !(minors[k] < 0) : !(minors[k] > 0)) return false;
    }
    return true; // empty matrix: vacuously true
}

/// Solve a*x = b by Gaussian elimination with partial (first nonzero) pivot.
/// Returns nullopt when the matrix is singular.
inline std::optional<QVector> solve(QMatrix a, QVector b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != col) { std::swap(a[piv], a[col]); std::swap(b[piv], b[col]); }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    QVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

/// Solve the consistent overdetermined system sum_j x_j * cols[j] = w, where
/// cols are linearly independent columns. Returns nullopt if inconsistent.
inline std::optional<QVector> solve_in_span(const std::vector<ZVector>& cols, const ZVector& w) {
    const std::size_t rows = w.size(), k = cols.size();
    // Row-reduce [cols | w] and read off coordinates.
    QMatrix m(rows, QVector(k + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < k; ++j) m[i][j] = Rational(cols[j][i]);
        m[i][k] = Rational(w[i]);
    }
    std::vector<std::size_t> pivot_row(k);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) return std::nullopt; // columns not independent
        std::swap(m[piv], m[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            Rational f = m[r][col] / m[rank][col];
            for (std::size_t c = col; c <= k; ++c) m[r][c] -= f * m[rank][c];
        }
        pivot_row[col] = rank;
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (m[r][k] != 0) return std::nullopt; // inconsistent
    QVector x(k);
    for (std::size_t col = 0; col < k; ++col)
        x[col] = m[pivot_row[col]][k] / m[pivot_row[col]][col];
    return x;
}

/// Column-style Hermite reduction over the integers: returns an integral
/// basis of the lattice spanned by the given columns (duplicates and zero
/// columns collapse away). Any unimodular choice of basis is acceptable to
/// the callers, which only use basis-invariant data afterwards.
inline std::vector<ZVector> hermite_column_basis(std::vector<ZVector> cols) {
    if (cols.empty()) return {};
    const std::size_t rows = cols[0].size();
    std::size_t col_at = 0;
    for (std::size_t row = 0; row < rows && col_at < cols.size(); ++row) {
        // Euclid across columns col_at.. on this row.
        while (true) {
            std::size_t nonzero = cols.size();
            for (std::size_t j = col_at; j < cols.size(); ++j)
                if (cols[j][row] != 0) { nonzero = j; break; }
            if (nonzero == cols.size()) break; // row all zero, next row
            std::swap(cols[col_at], cols[nonzero]);
            bool reduced = true;
            for (std::size_t j = col_at + 1; j < cols.size(); ++j) {
                if (cols[j][row] == 0) continue;
                Integer q = cols[j][row] / cols[col_at][row];
                for (std::size_t i = 0; i < rows; ++i) cols[j][i] -= q * cols[col_at][i];
                if (cols[j][row] != 0) reduced = false; // remainder, euclid again
            }
            if (reduced) { ++col_at; break; }
        }
    }
    cols.resize(col_at);
    return cols;
}

} // namespace logsurf
