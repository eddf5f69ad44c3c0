#ifndef DRINFELD_LINALG_HPP
#define DRINFELD_LINALG_HPP

#include <drinfeld/gf.hpp>

#include <cstddef>
#include <utility>
#include <vector>

namespace drinfeld {

/// Dense row-major matrix over a table field.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Elem> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

    Elem& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    Elem operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

namespace linalg {

inline Matrix mul(const FieldCtx& f, const Matrix& a, const Matrix& b) {
    Matrix r(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            Elem x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) r(i, j) = f.add(r(i, j), f.mul(x, b(k, j)));
        }
    return r;
}

inline std::vector<Elem> apply(const FieldCtx& f, const Matrix& a, const std::vector<Elem>& v) {
    std::vector<Elem> r(a.rows, 0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        Elem acc = 0;
        for (std::size_t j = 0; j < a.cols; ++j) acc = f.add(acc, f.mul(a(i, j), v[j]));
        r[i] = acc;
    }
    return r;
}

/// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(const FieldCtx& f, Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t pr = row;
        while (pr < m.rows && m(pr, col) == 0) ++pr;
        if (pr == m.rows) continue;
        if (pr != row)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(pr, j), m(row, j));
        const Elem inv = f.inv(m(row, col));
        for (std::size_t j = 0; j < m.cols; ++j) m(row, j) = f.mul(m(row, j), inv);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row || m(i, col) == 0) continue;
            const Elem c = m(i, col);
            for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(c, m(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(const FieldCtx& f, Matrix m) { return rref(f, m).size(); }

/// Basis of {v : m v = 0}, one vector per free column, returned in reduced form.
inline std::vector<std::vector<Elem>> nullspace(const FieldCtx& f, Matrix m) {
    const auto pivots = rref(f, m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Elem>> basis;
    for (std::size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Elem> v(m.cols, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Rows in reduced echelon form spanning the same space as the input vectors.
inline std::vector<std::vector<Elem>> echelon_basis(const FieldCtx& f, const std::vector<std::vector<Elem>>& vs) {
    if (vs.empty()) return {};
    Matrix m(vs.size(), vs.front().size());
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = vs[i][j];
    const auto pivots = rref(f, m);
    std::vector<std::vector<Elem>> out(pivots.size());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        out[i].assign(m.data.begin() + static_cast<std::ptrdiff_t>(i * m.cols),
                      m.data.begin() + static_cast<std::ptrdiff_t>((i + 1) * m.cols));
    return out;
}

/// Solves a x = b for square invertible a; empty result if singular.
inline std::vector<Elem> solve(const FieldCtx& f, const Matrix& a, const std::vector<Elem>& b) {
    const std::size_t n = a.rows;
    Matrix aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    const auto pivots = rref(f, aug);
    if (pivots.size() != n || pivots.back() != n - 1) return {};
    std::vector<Elem> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
    return x;
}

} // namespace linalg
} // namespace drinfeld

#endif // DRINFELD_LINALG_HPP
