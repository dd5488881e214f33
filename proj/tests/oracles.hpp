#pragma once

// Test oracles written independently of the library code paths.

#include <cstddef>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "tpbd/matrix.hpp"
#include "tpbd/nodes.hpp"
#include "tpbd/rational.hpp"

namespace oracle {

inline mpz_class fact(long n) {
    mpz_class r = 1;
    for (long k = 2; k <= n; ++k) r *= k;
    return r;
}

// Bessel coefficient (n+k)! / (2^k (n-k)! k!) straight from the factorials.
inline mpz_class bessel_coeff(long n, long k) {
    mpz_class den = fact(n - k) * fact(k);
    den <<= static_cast<mp_bitcnt_t>(k);
    return fact(n + k) / den;
}

// Value of the Bessel polynomial of degree n at x, summing monomials.
inline mpq_class bessel_value(long n, const mpq_class& x, bool reversed) {
    mpq_class sum = 0, xp = 1;
    for (long k = 0; k <= n; ++k) {
        sum += mpq_class(bessel_coeff(n, reversed ? n - k : k)) * xp;
        xp *= x;
    }
    return sum;
}

inline tpbd::rational_matrix collocation(const std::vector<mpq_class>& t, bool reversed) {
    const std::size_t n = t.size();
    tpbd::rational_matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = tpbd::rational(bessel_value(static_cast<long>(j), t[i], reversed));
    return m;
}

// Pivot p_ij (1-based, i >= j) of the Neville elimination of the Bessel
// basis matrix: (1/2^{j-1}) ((i-1)!/(i-j)!) prod_{r=1}^{j-1} (2i-r-1)/(i-j+r).
inline mpq_class bessel_basis_pivot(long i, long j) {
    mpq_class p(fact(i - 1), fact(i - j));
    for (long r = 1; r <= j - 1; ++r) p *= mpq_class(2 * i - r - 1, i - j + r);
    p /= mpq_class(mpz_class(1) << static_cast<mp_bitcnt_t>(j - 1));
    p.canonicalize();
    return p;
}

// Pivot p_ij of the reverse basis matrix: (2i-2j)!/(2^{i-j}(i-j)!) on odd
// columns; on even columns 1 on the diagonal and 0 below.
inline mpq_class reverse_basis_pivot(long i, long j) {
    if (j % 2 == 0) return i == j ? 1 : 0;
    mpz_class den = fact(i - j) << static_cast<mp_bitcnt_t>(i - j);
    mpq_class p(fact(2 * i - 2 * j), den);
    p.canonicalize();
    return p;
}

inline mpq_class det(tpbd::rational_matrix a) {
    // cofactor expansion along the first row; fine for n <= 6
    const std::size_t n = a.rows();
    if (n == 1) return a(0, 0).value();
    mpq_class s = 0;
    for (std::size_t c = 0; c < n; ++c) {
        tpbd::rational_matrix sub(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, k = 0; j < n; ++j)
                if (j != c) sub(i - 1, k++) = a(i, j);
        const mpq_class term = a(0, c).value() * det(sub);
        s += c % 2 == 0 ? term : mpq_class(-term);
    }
    return s;
}

// Strictly increasing positive rationals with small numerators and
// denominators.
inline std::vector<mpq_class> random_nodes(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<long> num(1, 9), den(1, 7);
    std::vector<mpq_class> t;
    mpq_class cur(num(rng), den(rng));
    cur.canonicalize();
    for (std::size_t i = 0; i < n; ++i) {
        t.push_back(cur);
        mpq_class step(num(rng), den(rng));
        step.canonicalize();
        cur += step;
    }
    return t;
}

inline tpbd::node_sequence to_nodes(const std::vector<mpq_class>& t) {
    std::vector<tpbd::rational> v;
    for (const auto& x : t) v.emplace_back(x);
    return tpbd::node_sequence(std::move(v));
}

inline tpbd::rational_matrix random_matrix(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    tpbd::rational_matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = tpbd::rational(d(rng));
    return m;
}

} // namespace oracle
