#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <lapacke.h>

#include "bidiagonal.hpp"
#include "bigfloat.hpp"
#include "dense_eigen.hpp"
#include "errors.hpp"
#include "jacobi_svd.hpp"
#include "matrix.hpp"
#include "precision.hpp"
#include "rational.hpp"

namespace tpbd {

enum class sign_pattern { alternating, single_support, general };

// single_support: exactly one nonzero entry. alternating: at least one
// nonzero and v_i v_{i+1} <= 0 throughout.
inline sign_pattern classify_signs(const std::vector<rational>& v) {
    std::size_t nonzero = 0;
    for (const auto& x : v) nonzero += x.is_zero() ? 0 : 1;
    if (nonzero == 1) return sign_pattern::single_support;
    if (nonzero == 0) return sign_pattern::general;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i].sign() * v[i + 1].sign() > 0) return sign_pattern::general;
    return sign_pattern::alternating;
}

inline rational determinant(const bidiagonal_decomposition& b) {
    rational d = 1;
    for (std::size_t i = 0; i < b.size(); ++i) d *= b.diag(i);
    return d;
}

// Solves expand(b) x = rhs by inverting the 2n-1 bidiagonal factors in
// turn. `observe` is called with the running vector after each factor.
template <typename Observer>
std::vector<rational> solve(const bidiagonal_decomposition& b, std::vector<rational> x, Observer&& observe) {
    const std::size_t n = b.size();
    if (x.size() != n) throw dimension_mismatch("right-hand side has length " + std::to_string(x.size()) +
                                                ", expected " + std::to_string(n));
    // F_{n-1}^{-1}, ..., F_1^{-1}
    for (std::size_t k = n - 1; k >= 1; --k) {
        for (std::size_t row = k; row < n; ++row) {
            const rational& f = b.lower(row, row - k);
            if (!f.is_zero() && !x[row - 1].is_zero()) x[row] -= f * x[row - 1];
        }
        observe(x);
    }
    for (std::size_t i = 0; i < n; ++i) x[i] /= b.diag(i);
    observe(x);
    // G_1^{-1}, ..., G_{n-1}^{-1}
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t col = n - 1; col >= k; --col) {
            const rational& g = b.upper(col - k, col);
            if (!g.is_zero() && !x[col].is_zero()) x[col - 1] -= g * x[col];
            if (col == k) break;
        }
        observe(x);
    }
    return x;
}

inline std::vector<rational> solve(const bidiagonal_decomposition& b, std::vector<rational> rhs) {
    return solve(b, std::move(rhs), [](const std::vector<rational>&) {});
}

// Exact inverse, column by column from unit right-hand sides.
inline rational_matrix inverse(const bidiagonal_decomposition& b) {
    const std::size_t n = b.size();
    rational_matrix inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<rational> e(n, 0);
        e[j] = 1;
        const auto col = solve(b, std::move(e));
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
}

enum class spectrum_kind { eigenvalues, singular_values };

struct spectrum_result {
    std::vector<double> values; // descending
    long achieved_precision_bits = 0;
    spectrum_kind kind = spectrum_kind::eigenvalues;
};

inline dense_matrix<bigfloat> to_bigfloat(const rational_matrix& m, long bits) {
    return m.map([bits](const rational& q) { return bigfloat(q, bits); });
}

// Eigenvalues of expand(b) certified by agreement between precision levels.
inline spectrum_result eigenvalues(const bidiagonal_decomposition& b, const precision_policy& policy = {}) {
    const rational_matrix a = expand(b);
    bigfloat worst_imag(0.0, 64);
    auto compute = [&](long bits) {
        const auto ev = general_eigenvalues(to_bigfloat(a, bits));
        std::vector<bigfloat> re;
        worst_imag = bigfloat(0.0, bits);
        for (const auto& e : ev) {
            re.push_back(e.re);
            if (!e.im.is_zero()) {
                const bigfloat ratio = e.re.is_zero() ? abs(e.im) : abs(e.im) / abs(e.re);
                if (ratio > worst_imag) worst_imag = ratio;
            }
        }
        return re;
    };
    auto refined = refine_until_stable(compute, policy);
    if (worst_imag > policy.agreement_rtol)
        throw non_real_spectrum("eigenvalue with relative imaginary part " + worst_imag.str(6));
    return {std::move(refined.values), refined.achieved_bits, spectrum_kind::eigenvalues};
}

// Singular values of expand(b) by one-sided Jacobi at each precision level;
// rotation threshold 2^(-bits/2), at most 30 sweeps per level.
inline spectrum_result singular_values(const bidiagonal_decomposition& b, const precision_policy& policy = {}) {
    const rational_matrix a = expand(b);
    auto compute = [&](long bits) {
        jacobi_options opt;
        opt.tol_log2 = -static_cast<double>(bits) / 2.0;
        opt.max_sweeps = 30;
        auto r = one_sided_jacobi(to_bigfloat(a, bits), opt);
        if (!r.converged) throw no_convergence("Jacobi sweeps exhausted at " + std::to_string(bits) + " bits");
        return r.values;
    };
    auto refined = refine_until_stable(compute, policy);
    return {std::move(refined.values), refined.achieved_bits, spectrum_kind::singular_values};
}

// Plain double precision baselines, no accuracy safeguards.

// Real parts of the eigenvalues, descending. NaN entries signal that the
// QR iteration broke down.
inline std::vector<double> naive_eigenvalues(const dense_matrix<double>& a) {
    try {
        const auto ev = general_eigenvalues(a, 30);
        std::vector<double> out;
        for (const auto& e : ev) out.push_back(e.re);
        return out;
    } catch (const no_convergence&) {
        return std::vector<double>(a.rows(), std::numeric_limits<double>::quiet_NaN());
    }
}

// Golub-Kahan bidiagonalization with implicit QR (LAPACK dgesvd), the
// conventional normwise-stable SVD.
inline std::vector<double> naive_singular_values(const dense_matrix<double>& a) {
    const auto m = static_cast<lapack_int>(a.rows());
    const auto n = static_cast<lapack_int>(a.cols());
    if (m == 0 || n == 0) return {};
    std::vector<double> work(a.data());
    std::vector<double> s(static_cast<std::size_t>(std::min(m, n)));
    std::vector<double> superb(s.size() > 1 ? s.size() - 1 : 1);
    const lapack_int info = LAPACKE_dgesvd(LAPACK_ROW_MAJOR, 'N', 'N', m, n, work.data(), n, s.data(),
                                           nullptr, 1, nullptr, 1, superb.data());
    if (info != 0) return std::vector<double>(s.size(), std::numeric_limits<double>::quiet_NaN());
    return s;
}

namespace detail {

struct lu_factors {
    dense_matrix<double> lu;
    std::vector<std::size_t> perm;
};

inline lu_factors lu_partial_pivot(dense_matrix<double> a) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(a(i, k)) > std::fabs(a(p, k))) p = i;
        if (a(p, k) == 0.0) throw singular_matrix("matrix is singular to working precision");
        a.swap_rows(p, k);
        std::swap(perm[p], perm[k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            a(i, k) /= a(k, k);
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= a(i, k) * a(k, j);
        }
    }
    return {std::move(a), std::move(perm)};
}

inline std::vector<double> lu_solve(const lu_factors& f, const std::vector<double>& b) {
    const std::size_t n = f.lu.rows();
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
        x[i] /= f.lu(i, i);
    }
    return x;
}

} // namespace detail

// Gaussian elimination with partial pivoting.
inline std::vector<double> naive_solve(const dense_matrix<double>& a, const std::vector<double>& b) {
    if (!a.square() || a.rows() != b.size()) throw dimension_mismatch("naive solve shape mismatch");
    return detail::lu_solve(detail::lu_partial_pivot(a), b);
}

inline dense_matrix<double> naive_inverse(const dense_matrix<double>& a) {
    if (!a.square()) throw dimension_mismatch("inverse of a non-square matrix");
    const std::size_t n = a.rows();
    const auto f = detail::lu_partial_pivot(a);
    dense_matrix<double> inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        const auto col = detail::lu_solve(f, e);
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
}

inline std::vector<double> relative_errors(const std::vector<double>& approx, const std::vector<double>& reference) {
    if (approx.size() != reference.size()) throw dimension_mismatch("relative_errors: length mismatch");
    std::vector<double> out(approx.size());
    for (std::size_t i = 0; i < approx.size(); ++i) {
        if (reference[i] == 0.0) throw division_by_zero("relative error against a zero reference");
        out[i] = std::fabs(approx[i] - reference[i]) / std::fabs(reference[i]);
    }
    return out;
}

} // namespace tpbd
