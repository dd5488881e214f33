#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

#include "bigfloat.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "rational.hpp"

// Reference spectra that share no code with the iterative solvers: the
// characteristic polynomial is formed exactly and its positive real roots
// are bracketed by sign changes of the exact polynomial, then bisected.
// A bracket with a sign change provably contains a root, so the result is
// certified whenever as many brackets as expected roots are found.

namespace tpbd::reference {

// Coefficients of det(x I - A), ascending, monic. Faddeev-LeVerrier on the
// integer matrix B = d A (d clears all denominators), where every quantity
// stays integral; the coefficients are rescaled by powers of d at the end.
inline std::vector<rational> characteristic_polynomial(const rational_matrix& a) {
    if (!a.square()) throw dimension_mismatch("characteristic polynomial of a non-square matrix");
    const std::size_t n = a.rows();
    mpz_class d = 1;
    for (const auto& x : a.data()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.denominator().get_mpz_t());
    std::vector<mpz_class> bm(n * n);
    for (std::size_t i = 0; i < n * n; ++i) bm[i] = a.data()[i].numerator() * (d / a.data()[i].denominator());

    auto mul = [n](const std::vector<mpz_class>& x, const std::vector<mpz_class>& y) {
        std::vector<mpz_class> z(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                if (x[i * n + k] == 0) continue;
                for (std::size_t j = 0; j < n; ++j) z[i * n + j] += x[i * n + k] * y[k * n + j];
            }
        return z;
    };

    std::vector<mpz_class> c(n + 1);
    c[n] = 1;
    std::vector<mpz_class> m(n * n); // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        m = mul(bm, m);
        for (std::size_t i = 0; i < n; ++i) m[i * n + i] += c[n - k + 1];
        mpz_class tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) tr += bm[i * n + j] * m[j * n + i];
        mpz_class q;
        mpz_divexact_ui(q.get_mpz_t(), tr.get_mpz_t(), static_cast<unsigned long>(k));
        c[n - k] = -q;
    }
    // det(xI - B/d) = d^-n det((dx) I - B): coefficient i scales by d^(i-n).
    std::vector<rational> out(n + 1);
    mpz_class dp = 1;
    for (std::size_t i = n + 1; i-- > 0;) {
        out[i] = rational(c[i], dp);
        dp *= d;
    }
    return out;
}

namespace detail {

// Integer polynomial with the same roots (denominators cleared).
inline std::vector<mpz_class> clear_denominators(const std::vector<rational>& p) {
    mpz_class l = 1;
    for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.denominator().get_mpz_t());
    std::vector<mpz_class> out;
    for (const auto& c : p) out.push_back(c.numerator() * (l / c.denominator()));
    return out;
}

// Sign of p(num/den) for den > 0.
inline int sign_at(const std::vector<mpz_class>& p, const mpz_class& num, const mpz_class& den) {
    mpz_class acc = p.back();
    mpz_class den_pow = 1;
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        den_pow *= den;
        acc = acc * num + p[i] * den_pow;
    }
    return sgn(acc);
}

inline int sign_at(const std::vector<mpz_class>& p, const rational& x) {
    return sign_at(p, x.numerator(), x.denominator());
}

inline double log2_abs(const mpq_class& q) {
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDN);
    mpfr_abs(t, t, MPFR_RNDN);
    mpfr_log2(t, t, MPFR_RNDN);
    const double d = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return d;
}

// 2^(k / per_octave) rounded to a 64-bit dyadic, as an exact rational.
inline rational grid_point(long k, long per_octave) {
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_set_si(t, k, MPFR_RNDN);
    mpfr_div_si(t, t, per_octave, MPFR_RNDN);
    mpfr_exp2(t, t, MPFR_RNDN);
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), t);
    mpfr_clear(t);
    return rational(q);
}

} // namespace detail

// The `expected` positive real roots of p (ascending coefficients),
// descending, each to relative width 2^-rel_bits. Throws no_convergence if
// fewer than `expected` sign changes are found on the finest grid.
inline std::vector<bigfloat> positive_real_roots(const std::vector<rational>& poly, std::size_t expected,
                                                 long rel_bits = 128) {
    if (poly.size() < 2 || poly.back().is_zero()) throw range_error("polynomial must have positive degree");
    if (poly.front().is_zero()) throw range_error("zero is a root; positive root isolation needs p(0) != 0");
    const auto p = detail::clear_denominators(poly);
    const std::size_t deg = poly.size() - 1;

    // Fujiwara bounds: log2 |root| <= 1 + max_k log2|c_{deg-k} / c_deg| / k,
    // and the same on the reversed polynomial for log2 |1/root|.
    double log_hi = -1e300, log_lo = 1e300;
    for (std::size_t k = 1; k <= deg; ++k) {
        const auto& top = poly[deg - k];
        const auto& bottom = poly[k];
        if (!top.is_zero())
            log_hi = std::max(log_hi, detail::log2_abs(top.value() / poly[deg].value()) / static_cast<double>(k));
        if (!bottom.is_zero())
            log_lo = std::min(log_lo, -detail::log2_abs(bottom.value() / poly[0].value()) / static_cast<double>(k));
    }
    log_hi += 1.0;
    log_lo -= 1.0;

    std::vector<std::pair<rational, rational>> brackets;
    for (long per_octave = 32; per_octave <= 4096; per_octave *= 4) {
        brackets.clear();
        const long k0 = static_cast<long>(std::floor(log_lo * per_octave)) - 1;
        const long k1 = static_cast<long>(std::ceil(log_hi * per_octave)) + 1;
        rational prev_x = detail::grid_point(k0, per_octave);
        int prev_s = detail::sign_at(p, prev_x);
        for (long k = k0 + 1; k <= k1; ++k) {
            rational x = detail::grid_point(k, per_octave);
            const int s = detail::sign_at(p, x);
            if (s == 0) {
                brackets.emplace_back(x, x);
            } else if (prev_s != 0 && s != prev_s) {
                brackets.emplace_back(prev_x, x);
            }
            prev_x = std::move(x);
            prev_s = s;
        }
        if (brackets.size() >= expected) break;
    }
    if (brackets.size() < expected)
        throw no_convergence("isolated " + std::to_string(brackets.size()) + " of " + std::to_string(expected) +
                             " positive roots");

    std::vector<bigfloat> roots;
    const rational half(mpz_class(1), mpz_class(2));
    for (auto [lo, hi] : brackets) {
        const int s_lo = detail::sign_at(p, lo);
        while (hi - lo > lo * pow(half, static_cast<unsigned>(rel_bits))) {
            rational mid = (lo + hi) * half;
            const int s = detail::sign_at(p, mid);
            if (s == 0) {
                lo = hi = mid;
                break;
            }
            (s == s_lo ? lo : hi) = std::move(mid);
        }
        roots.emplace_back((lo + hi) * half, rel_bits + 64);
    }
    std::sort(roots.begin(), roots.end(), [](const bigfloat& a, const bigfloat& b) { return a > b; });
    return roots;
}

inline std::vector<bigfloat> eigenvalues(const rational_matrix& a) {
    return positive_real_roots(characteristic_polynomial(a), a.rows());
}

inline std::vector<bigfloat> singular_values(const rational_matrix& a) {
    auto mu = positive_real_roots(characteristic_polynomial(a.transposed() * a), a.cols());
    for (auto& v : mu) v = sqrt(v);
    return mu;
}

inline std::vector<double> to_doubles(const std::vector<bigfloat>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.to_double());
    return out;
}

} // namespace tpbd::reference
