#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "bidiagonal.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "neville.hpp"
#include "nodes.hpp"
#include "rational.hpp"

namespace tpbd {

enum class basis_kind { bessel, reverse_bessel, monomial };

inline basis_kind parse_basis(std::string_view s) {
    if (s == "bessel") return basis_kind::bessel;
    if (s == "rbessel") return basis_kind::reverse_bessel;
    if (s == "monomial") return basis_kind::monomial;
    throw parse_error("unknown basis '" + std::string(s) + "' (expected bessel, rbessel or monomial)");
}

inline const char* basis_name(basis_kind b) {
    switch (b) {
    case basis_kind::bessel: return "bessel";
    case basis_kind::reverse_bessel: return "rbessel";
    case basis_kind::monomial: return "monomial";
    }
    return "?";
}

// Integer coefficients in ascending powers.
struct polynomial_coeffs {
    std::vector<mpz_class> coeffs;

    std::size_t degree() const { return coeffs.size() - 1; }

    rational operator()(const rational& x) const {
        rational acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + rational(*it);
        return acc;
    }
};

namespace detail {

inline mpz_class factorial(long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline mpz_class pow2(long k) {
    mpz_class r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    return r;
}

// Exact quotient; the caller guarantees divisibility.
inline mpz_class exact_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

} // namespace detail

// n!! = n (n-2) (n-4) ..., floor(n/2) factors.
inline mpz_class semifactorial(long n) {
    if (n < 1) throw range_error("semifactorial needs n >= 1");
    mpz_class r = 1;
    for (long k = 0; k < n / 2; ++k) r *= n - 2 * k;
    return r;
}

// B_n(x) = sum_k (n+k)! / (2^k (n-k)! k!) x^k.
inline polynomial_coeffs bessel_poly(long n) {
    if (n < 0) throw range_error("polynomial degree must be nonnegative");
    polynomial_coeffs p;
    for (long k = 0; k <= n; ++k)
        p.coeffs.push_back(detail::exact_div(
            detail::factorial(n + k),
            detail::pow2(k) * detail::factorial(n - k) * detail::factorial(k)));
    return p;
}

inline polynomial_coeffs reverse_bessel_poly(long n) {
    auto p = bessel_poly(n);
    std::reverse(p.coeffs.begin(), p.coeffs.end());
    return p;
}

// Lower triangular change of basis: row i holds the coefficients of B_{i-1}.
inline rational_matrix basis_matrix_A(std::size_t n) {
    rational_matrix a(n, n, 0);
    for (long i = 1; i <= static_cast<long>(n); ++i)
        for (long j = 1; j <= i; ++j)
            a(i - 1, j - 1) = rational(detail::factorial(i + j - 2),
                                       detail::pow2(j - 1) * detail::factorial(i - j) *
                                           detail::factorial(j - 1));
    return a;
}

// Lower triangular change of basis for the reverse Bessel polynomials.
inline rational_matrix basis_matrix_C(std::size_t n) {
    rational_matrix c(n, n, 0);
    for (long i = 1; i <= static_cast<long>(n); ++i)
        for (long j = 1; j <= i; ++j)
            c(i - 1, j - 1) = rational(detail::factorial(2 * i - j - 1),
                                       detail::pow2(i - j) * detail::factorial(j - 1) *
                                           detail::factorial(i - j));
    return c;
}

// Closed-form BD of A: multipliers (2i-2)(2i-3)/((2i-j-1)(2i-j-2)),
// diagonal 1, 1, 3!!, 5!!, ..., upper part zero.
inline bidiagonal_decomposition bd_of_A(std::size_t n) {
    if (n == 0) throw range_error("order must be positive");
    rational_matrix packed(n, n, 0);
    for (long i = 1; i <= static_cast<long>(n); ++i) {
        packed(i - 1, i - 1) = i == 1 ? rational(1) : rational(semifactorial(2 * i - 3));
        for (long j = 1; j < i; ++j)
            packed(i - 1, j - 1) = rational(mpz_class((2 * i - 2) * (2 * i - 3)),
                                            mpz_class((2 * i - j - 1) * (2 * i - j - 2)));
    }
    return bidiagonal_decomposition(std::move(packed));
}

// Closed-form BD of C: 2i-2j-1 below the diagonal in odd columns, unit
// diagonal, zero elsewhere.
inline bidiagonal_decomposition bd_of_C(std::size_t n) {
    if (n == 0) throw range_error("order must be positive");
    auto packed = rational_matrix::identity(n);
    for (long i = 1; i <= static_cast<long>(n); ++i)
        for (long j = 1; j < i; j += 2) packed(i - 1, j - 1) = rational(2 * i - 2 * j - 1);
    return bidiagonal_decomposition(std::move(packed));
}

inline bidiagonal_decomposition bd_vandermonde(const node_sequence& nodes) {
    return bd_from_matrix(vandermonde_matrix(nodes));
}

// BD(M) for M = V A^T.
inline bidiagonal_decomposition bd_bessel_collocation(const node_sequence& nodes) {
    return bd_product(bd_vandermonde(nodes), bd_transpose(bd_of_A(nodes.size())));
}

// BD(M_r) for M_r = V C^T.
inline bidiagonal_decomposition bd_reverse_bessel_collocation(const node_sequence& nodes) {
    return bd_product(bd_vandermonde(nodes), bd_transpose(bd_of_C(nodes.size())));
}

inline bidiagonal_decomposition bd_collocation(basis_kind basis, const node_sequence& nodes) {
    switch (basis) {
    case basis_kind::bessel: return bd_bessel_collocation(nodes);
    case basis_kind::reverse_bessel: return bd_reverse_bessel_collocation(nodes);
    case basis_kind::monomial: return bd_vandermonde(nodes);
    }
    throw parse_error("unknown basis");
}

inline polynomial_coeffs basis_poly(basis_kind basis, long degree) {
    switch (basis) {
    case basis_kind::bessel: return bessel_poly(degree);
    case basis_kind::reverse_bessel: return reverse_bessel_poly(degree);
    case basis_kind::monomial: {
        polynomial_coeffs p;
        p.coeffs.assign(static_cast<std::size_t>(degree) + 1, 0);
        p.coeffs.back() = 1;
        return p;
    }
    }
    throw parse_error("unknown basis");
}

// Direct evaluation: entry (i, j) is basis polynomial j at node i.
inline rational_matrix collocation_matrix(basis_kind basis, const node_sequence& nodes) {
    const std::size_t n = nodes.size();
    rational_matrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto p = basis_poly(basis, static_cast<long>(j));
        for (std::size_t i = 0; i < n; ++i) m(i, j) = p(nodes[i]);
    }
    return m;
}

} // namespace tpbd
