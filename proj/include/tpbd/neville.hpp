#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "nodes.hpp"
#include "rational.hpp"

namespace tpbd {

// Full tableau of a Neville elimination. `pivots(i, j)` is defined for
// i >= j, `multipliers(i, j)` for i > j; other positions hold zero.
struct neville_result {
    rational_matrix pivots;
    rational_matrix multipliers;
    rational_matrix upper;
    bool row_exchanges_used = false;
};

namespace detail {

// Moves the rows t..n-1 whose entry in column t is zero below the others,
// keeping relative order. Returns whether any row actually moved.
inline bool sink_zero_rows(rational_matrix& a, std::size_t t) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> order;
    for (std::size_t i = t; i < n; ++i)
        if (!a(i, t).is_zero()) order.push_back(i);
    for (std::size_t i = t; i < n; ++i)
        if (a(i, t).is_zero()) order.push_back(i);
    bool moved = false;
    for (std::size_t k = 0; k < order.size(); ++k) moved |= order[k] != t + k;
    if (!moved) return false;
    rational_matrix copy = a;
    for (std::size_t k = 0; k < order.size(); ++k)
        for (std::size_t j = 0; j < a.cols(); ++j) a(t + k, j) = copy(order[k], j);
    return true;
}

// One Neville step on column t: row i loses a multiple of row i-1, bottom up.
inline void neville_step(rational_matrix& a, std::size_t t, rational_matrix* multipliers) {
    const std::size_t n = a.rows();
    for (std::size_t i = n - 1; i > t; --i) {
        rational m = 0;
        if (!a(i - 1, t).is_zero()) {
            m = a(i, t) / a(i - 1, t);
            if (!m.is_zero())
                for (std::size_t j = t; j < a.cols(); ++j) a(i, j) -= m * a(i - 1, j);
        }
        if (multipliers) (*multipliers)(i, t) = m;
    }
}

} // namespace detail

// Matrix obtained after `steps` Neville steps (A^{(steps+1)} in 1-based
// step numbering), including any zero-row moves.
inline rational_matrix neville_partial(rational_matrix a, std::size_t steps) {
    if (!a.square()) throw dimension_mismatch("Neville elimination needs a square matrix");
    for (std::size_t t = 0; t < steps && t + 1 < a.rows(); ++t) {
        detail::sink_zero_rows(a, t);
        detail::neville_step(a, t, nullptr);
    }
    return a;
}

inline neville_result neville_eliminate(const rational_matrix& input) {
    if (!input.square()) throw dimension_mismatch("Neville elimination needs a square matrix");
    const std::size_t n = input.rows();
    neville_result r{rational_matrix(n, n, 0), rational_matrix(n, n, 0), input, false};
    auto& a = r.upper;
    for (std::size_t t = 0; t < n; ++t) {
        if (detail::sink_zero_rows(a, t)) r.row_exchanges_used = true;
        if (a(t, t).is_zero()) throw singular_matrix("zero column block at step " + std::to_string(t + 1));
        for (std::size_t i = t; i < n; ++i) r.pivots(i, t) = a(i, t);
        if (t + 1 < n) detail::neville_step(a, t, &r.multipliers);
    }
    return r;
}

// Nonsingular total positivity test: Neville elimination of A and of U^T
// both run without row exchanges and with nonnegative pivots.
inline bool is_tp_nonsingular(const rational_matrix& a) {
    auto clean = [](const neville_result& ne) {
        if (ne.row_exchanges_used) return false;
        const std::size_t n = ne.pivots.rows();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                if (ne.pivots(i, j).sign() < 0) return false;
        return true;
    };
    const auto first = neville_eliminate(a);
    if (!clean(first)) return false;
    return clean(neville_eliminate(first.upper.transposed()));
}

struct minors_report {
    bool nonnegative = true;
    bool strictly_positive = true;
};

// Enumerates every square minor exactly, by order and then lexicographic
// row/column subsets.
inline minors_report all_minors(const rational_matrix& a, std::size_t max_n = 7) {
    if (!a.square()) throw dimension_mismatch("minors need a square matrix");
    const std::size_t n = a.rows();
    if (n > max_n) throw too_large("minor enumeration limited to n <= " + std::to_string(max_n));

    minors_report rep;
    std::vector<std::vector<std::size_t>> subsets;
    for (std::size_t k = 1; k <= n; ++k) {
        subsets.clear();
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            subsets.push_back(idx);
            std::size_t p = k;
            while (p > 0 && idx[p - 1] == n - k + p - 1) --p;
            if (p == 0) break;
            ++idx[p - 1];
            for (std::size_t q = p; q < k; ++q) idx[q] = idx[q - 1] + 1;
        }
        for (const auto& rows : subsets)
            for (const auto& cols : subsets) {
                rational_matrix sub(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(rows[i], cols[j]);
                const int s = determinant_exact(std::move(sub)).sign();
                if (s < 0) rep.nonnegative = false;
                if (s <= 0) rep.strictly_positive = false;
                if (!rep.nonnegative) return rep;
            }
    }
    return rep;
}

inline bool all_minors_nonnegative(const rational_matrix& a, std::size_t max_n = 7) {
    return all_minors(a, max_n).nonnegative;
}

inline bool all_minors_positive(const rational_matrix& a, std::size_t max_n = 7) {
    return all_minors(a, max_n).strictly_positive;
}

// V(i, j) = t_i^j.
inline rational_matrix vandermonde_matrix(const node_sequence& nodes) {
    const std::size_t n = nodes.size();
    rational_matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        rational p = 1;
        for (std::size_t j = 0; j < n; ++j) {
            v(i, j) = p;
            p *= nodes[i];
        }
    }
    return v;
}

} // namespace tpbd
