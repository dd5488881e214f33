#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace tpbd {

// Row-major dense matrix; indices are zero-based.
template <typename T>
class dense_matrix {
public:
    using value_type = T;

    dense_matrix() = default;
    dense_matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    dense_matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw dimension_mismatch("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static dense_matrix identity(std::size_t n) {
        dense_matrix m(n, n, T(0));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<T>& data() const { return data_; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    dense_matrix transposed() const {
        dense_matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    template <typename F>
    auto map(F&& f) const -> dense_matrix<decltype(f(std::declval<const T&>()))> {
        dense_matrix<decltype(f(std::declval<const T&>()))> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
        return out;
    }

    friend bool operator==(const dense_matrix& a, const dense_matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const dense_matrix& a, const dense_matrix& b) { return !(a == b); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using rational_matrix = dense_matrix<rational>;

template <typename T>
dense_matrix<T> operator*(const dense_matrix<T>& a, const dense_matrix<T>& b) {
    if (a.cols() != b.rows()) throw dimension_mismatch("matrix product shape mismatch");
    dense_matrix<T> c(a.rows(), b.cols(), T(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == T(0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

template <typename T>
std::vector<T> operator*(const dense_matrix<T>& a, const std::vector<T>& x) {
    if (a.cols() != x.size()) throw dimension_mismatch("matrix-vector shape mismatch");
    std::vector<T> y(a.rows(), T(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

inline dense_matrix<double> to_double(const rational_matrix& m) {
    return m.map([](const rational& q) { return round_to_double(q); });
}

// Exact determinant by fraction-carrying Gaussian elimination with
// nonzero pivot search. Used by minors enumeration and tests.
inline rational determinant_exact(rational_matrix m) {
    if (!m.square()) throw dimension_mismatch("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    rational det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, k).is_zero()) ++p;
        if (p == n) return rational(0);
        if (p != k) {
            m.swap_rows(p, k);
            det = -det;
        }
        det *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k).is_zero()) continue;
            const rational f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

// Exact inverse by Gauss-Jordan elimination on the dense matrix; an
// algorithm independent of any bidiagonal factorization.
inline rational_matrix inverse_exact(rational_matrix m) {
    if (!m.square()) throw dimension_mismatch("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    auto inv = rational_matrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, k).is_zero()) ++p;
        if (p == n) throw singular_matrix("matrix is singular");
        m.swap_rows(p, k);
        inv.swap_rows(p, k);
        const rational piv = m(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            m(k, j) /= piv;
            inv(k, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m(i, k).is_zero()) continue;
            const rational f = m(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

inline std::vector<rational> solve_exact(const rational_matrix& m, const std::vector<rational>& b) {
    if (m.rows() != b.size()) throw dimension_mismatch("right-hand side length mismatch");
    return inverse_exact(m) * b;
}

// Text format: first line "rows cols", then one row per line of
// whitespace-separated rational tokens.
inline rational_matrix read_matrix(std::istream& in) {
    std::size_t r = 0, c = 0;
    if (!(in >> r >> c) || r == 0 || c == 0) throw parse_error("matrix header must be 'n_rows n_cols'");
    rational_matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            std::string tok;
            if (!(in >> tok)) throw parse_error("matrix ends early at row " + std::to_string(i + 1));
            m(i, j) = rational::parse(tok);
        }
    std::string extra;
    if (in >> extra) throw parse_error("trailing data after matrix entries");
    return m;
}

inline void write_matrix(std::ostream& out, const rational_matrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
        out << '\n';
    }
}

} // namespace tpbd
