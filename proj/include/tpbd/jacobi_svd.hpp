#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "bigfloat.hpp"
#include "errors.hpp"
#include "matrix.hpp"

namespace tpbd {

struct jacobi_options {
    // A column pair (i, j) is rotated while |a_i . a_j| > tol |a_i| |a_j|.
    double tol_log2 = -26.0; // tol = 2^tol_log2
    int max_sweeps = 30;
};

template <typename T>
struct jacobi_result {
    std::vector<T> values; // descending
    int sweeps = 0;
    bool converged = false;
};

// Singular values by one-sided (Hestenes) Jacobi orthogonalization of the
// columns. Does not throw on non-convergence; the caller inspects
// `converged`.
template <typename T>
jacobi_result<T> one_sided_jacobi(dense_matrix<T> a, const jacobi_options& opt) {
    using std::abs;
    using std::sqrt;
    using traits = scalar_traits<T>;
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    jacobi_result<T> res;
    if (n == 0) {
        res.converged = true;
        return res;
    }
    const T zero = traits::make(a(0, 0), 0.0);
    const T one = traits::make(a(0, 0), 1.0);
    const T tol = traits::ldexp(one, static_cast<int>(opt.tol_log2));

    std::vector<T> norm2(n, zero);
    auto column_norm2 = [&](std::size_t j) {
        T s = zero;
        for (std::size_t i = 0; i < m; ++i) s += a(i, j) * a(i, j);
        return s;
    };
    for (std::size_t j = 0; j < n; ++j) norm2[j] = column_norm2(j);

    for (res.sweeps = 1; res.sweeps <= opt.max_sweeps; ++res.sweeps) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                T gamma = zero;
                for (std::size_t k = 0; k < m; ++k) gamma += a(k, i) * a(k, j);
                if (gamma == 0.0) continue;
                const T alpha = norm2[i];
                const T beta = norm2[j];
                if (!(abs(gamma) > tol * sqrt(T(alpha * beta)))) continue;
                rotated = true;
                const T zeta = (beta - alpha) / (gamma * 2.0);
                const T root = sqrt(T(one + zeta * zeta));
                const T tn = zeta >= 0.0 ? T(one / (zeta + root)) : T(-one / (root - zeta));
                const T c = one / sqrt(T(one + tn * tn));
                const T s = c * tn;
                for (std::size_t k = 0; k < m; ++k) {
                    const T ai = a(k, i);
                    const T aj = a(k, j);
                    a(k, i) = c * ai - s * aj;
                    a(k, j) = s * ai + c * aj;
                }
                norm2[i] = column_norm2(i);
                norm2[j] = column_norm2(j);
            }
        if (!rotated) {
            res.converged = true;
            break;
        }
    }
    if (res.sweeps > opt.max_sweeps) res.sweeps = opt.max_sweeps;
    res.values.reserve(n);
    for (std::size_t j = 0; j < n; ++j) res.values.push_back(sqrt(norm2[j]));
    std::sort(res.values.begin(), res.values.end(), [](const T& u, const T& v) { return u > v; });
    return res;
}

} // namespace tpbd
