#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "neville.hpp"
#include "rational.hpp"

namespace tpbd {

// Bidiagonal decomposition A = F_{n-1}...F_1 D G_1...G_{n-1} of a
// nonsingular TP matrix, stored packed in one n x n array:
//   (i, i)       diagonal pivot d_i
//   (i, j), i>j  multiplier m_ij of the Neville elimination of A
//   (i, j), i<j  multiplier of the Neville elimination of A^T at (j, i)
// F_k carries m_{r, r-k} at (r, r-1) for r = k+1..n (1-based); G_k
// carries the packed upper entry (r-k, r) at (r-1, r).
class bidiagonal_decomposition {
public:
    bidiagonal_decomposition() = default;
    explicit bidiagonal_decomposition(rational_matrix packed) : packed_(std::move(packed)) {
        if (!packed_.square() || packed_.rows() == 0)
            throw dimension_mismatch("packed BD array must be square and nonempty");
    }

    std::size_t size() const { return packed_.rows(); }
    const rational_matrix& packed() const { return packed_; }

    const rational& diag(std::size_t i) const { return packed_(i, i); }
    const rational& lower(std::size_t i, std::size_t j) const { return packed_(i, j); }
    const rational& upper(std::size_t i, std::size_t j) const { return packed_(i, j); }

    friend bool operator==(const bidiagonal_decomposition& a, const bidiagonal_decomposition& b) {
        return a.packed_ == b.packed_;
    }
    friend bool operator!=(const bidiagonal_decomposition& a, const bidiagonal_decomposition& b) {
        return !(a == b);
    }

private:
    rational_matrix packed_;
};

using bd = bidiagonal_decomposition;

// Diagnostics for the positivity and uniqueness (zero-pattern) conditions.
// Indices in messages are 1-based.
inline std::vector<std::string> validate(const bidiagonal_decomposition& b) {
    std::vector<std::string> out;
    const std::size_t n = b.size();
    auto idx = [](std::size_t i, std::size_t j) { return std::to_string(i + 1) + std::to_string(j + 1); };
    for (std::size_t i = 0; i < n; ++i)
        if (b.diag(i).sign() <= 0) out.push_back("d_" + std::to_string(i + 1) + " not positive");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (b.packed()(i, j).sign() < 0)
                out.push_back((i > j ? "m_" : "u_") + idx(i, j) + " negative");
        }
    // m_ij = 0 => m_hj = 0 for h > i (down each column of the lower part).
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = j + 1; i < n; ++i) {
            if (!b.lower(i, j).is_zero()) continue;
            for (std::size_t h = i + 1; h < n; ++h)
                if (!b.lower(h, j).is_zero())
                    out.push_back("m_" + idx(i, j) + "=0 but m_" + idx(h, j) + "!=0 (m_ij=0 => m_hj=0 for h>i)");
            break;
        }
    // Same rule for the transposed elimination: along each row of the upper part.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!b.upper(i, j).is_zero()) continue;
            for (std::size_t k = j + 1; k < n; ++k)
                if (!b.upper(i, k).is_zero())
                    out.push_back("u_" + idx(i, j) + "=0 but u_" + idx(i, k) + "!=0 (u_ij=0 => u_ik=0 for k>j)");
            break;
        }
    return out;
}

// BD of a nonsingular TP matrix from the Neville eliminations of A and A^T.
inline bidiagonal_decomposition bd_from_matrix(const rational_matrix& a) {
    if (!a.square()) throw dimension_mismatch("BD needs a square matrix");
    if (!is_tp_nonsingular(a)) throw not_totally_positive("matrix is not nonsingular totally positive");
    const std::size_t n = a.rows();
    const auto ne = neville_eliminate(a);
    const auto ne_t = neville_eliminate(a.transposed());
    rational_matrix packed(n, n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        packed(i, i) = ne.pivots(i, i);
        for (std::size_t j = 0; j < i; ++j) {
            packed(i, j) = ne.multipliers(i, j);
            packed(j, i) = ne_t.multipliers(i, j);
        }
    }
    return bidiagonal_decomposition(std::move(packed));
}

// Multiplies the bidiagonal factors out; only sums and products of
// nonnegative quantities occur.
inline rational_matrix expand(const bidiagonal_decomposition& b) {
    const std::size_t n = b.size();
    auto r = rational_matrix::identity(n);
    // R <- R * F_k for k = n-1 down to 1.
    for (std::size_t k = n - 1; k >= 1; --k) {
        for (std::size_t row = k; row < n; ++row) {
            const rational& f = b.lower(row, row - k);
            if (f.is_zero()) continue;
            for (std::size_t i = 0; i < n; ++i)
                if (!r(i, row).is_zero()) r(i, row - 1) += f * r(i, row);
        }
    }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) r(i, j) *= b.diag(j);
    // R <- R * G_k for k = 1..n-1.
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t col = n - 1; col >= k; --col) {
            const rational& g = b.upper(col - k, col);
            if (!g.is_zero())
                for (std::size_t i = 0; i < n; ++i)
                    if (!r(i, col - 1).is_zero()) r(i, col) += g * r(i, col - 1);
            if (col == k) break;
        }
    }
    return r;
}

inline bidiagonal_decomposition bd_transpose(const bidiagonal_decomposition& b) {
    return bidiagonal_decomposition(b.packed().transposed());
}

// BD of the product of the two expanded matrices, computed exactly.
inline bidiagonal_decomposition bd_product(const bidiagonal_decomposition& x,
                                           const bidiagonal_decomposition& y) {
    if (x.size() != y.size()) throw dimension_mismatch("BD product of different orders");
    return bd_from_matrix(expand(x) * expand(y));
}

// BDF v1: "BDF1 n" then n rows of n rational tokens.
inline void write_bdf(std::ostream& out, const bidiagonal_decomposition& b) {
    const std::size_t n = b.size();
    out << "BDF1 " << n << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << b.packed()(i, j);
        out << '\n';
    }
}

inline bidiagonal_decomposition read_bdf(std::istream& in) {
    std::string magic;
    std::size_t n = 0;
    if (!(in >> magic) || magic != "BDF1") throw parse_error("missing BDF1 header");
    if (!(in >> n) || n == 0) throw parse_error("BDF header needs a positive order");
    rational_matrix packed(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::string tok;
            if (!(in >> tok)) throw parse_error("BDF data ends early at row " + std::to_string(i + 1));
            packed(i, j) = rational::parse(tok);
        }
    std::string extra;
    if (in >> extra) throw parse_error("trailing data after BDF entries");
    return bidiagonal_decomposition(std::move(packed));
}

} // namespace tpbd
