#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "bigfloat.hpp"
#include "errors.hpp"
#include "matrix.hpp"

// Nonsymmetric eigenvalues for a generic real scalar type: radix-2
// balancing, Householder reduction to upper Hessenberg form and the
// Francis double-shift QR iteration. Instantiated with double for the
// baseline and with bigfloat for the multiprecision path.

namespace tpbd {

template <typename T>
struct complex_value {
    T re;
    T im;
};

namespace detail {

template <typename T>
T sign_like(const T& mag, const T& s) {
    using std::abs;
    return s >= 0.0 ? T(abs(mag)) : T(-abs(mag));
}

} // namespace detail

// Similarity scaling by powers of two so that row and column norms are
// comparable. Scaling is exact in binary arithmetic.
template <typename T>
void balance(dense_matrix<T>& a) {
    using std::abs;
    using traits = scalar_traits<T>;
    const std::size_t n = a.rows();
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            T r = traits::make(a(0, 0), 0.0);
            T c = r;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) {
                    c += abs(a(j, i));
                    r += abs(a(i, j));
                }
            if (c == 0.0 || r == 0.0) continue;
            T g = r / 2.0;
            int e = 0;
            const T s = c + r;
            while (c < g) {
                ++e;
                c *= 4.0;
            }
            g = r * 2.0;
            while (c > g) {
                --e;
                c /= 4.0;
            }
            // (c + r) / f < 0.95 s with f = 2^e
            if (e != 0 && traits::ldexp(c + r, -e) < s * 0.95) {
                done = false;
                for (std::size_t j = 0; j < n; ++j) a(i, j) = traits::ldexp(a(i, j), -e);
                for (std::size_t j = 0; j < n; ++j) a(j, i) = traits::ldexp(a(j, i), e);
            }
        }
    }
}

template <typename T>
void reduce_to_hessenberg(dense_matrix<T>& a) {
    using std::abs;
    using std::sqrt;
    using traits = scalar_traits<T>;
    const std::size_t n = a.rows();
    if (n < 3) return;
    std::vector<T> v(n, traits::make(a(0, 0), 0.0));
    for (std::size_t k = 0; k + 2 < n; ++k) {
        T scale = traits::make(a(0, 0), 0.0);
        for (std::size_t i = k + 1; i < n; ++i) scale += abs(a(i, k));
        if (scale == 0.0) continue;
        T norm2 = traits::make(a(0, 0), 0.0);
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k) / scale;
            norm2 += v[i] * v[i];
        }
        const T alpha = detail::sign_like(T(sqrt(norm2)), v[k + 1]);
        // v = x + sign(x_0) |x| e_0, H = I - v v^T / (alpha v_0)
        v[k + 1] += alpha;
        const T beta = alpha * v[k + 1];
        if (beta == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            T dot = traits::make(a(0, 0), 0.0);
            for (std::size_t i = k + 1; i < n; ++i) dot += v[i] * a(i, j);
            dot /= beta;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= dot * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            T dot = traits::make(a(0, 0), 0.0);
            for (std::size_t j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
            dot /= beta;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= dot * v[j];
        }
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = traits::make(a(0, 0), 0.0);
    }
}

// Eigenvalues of an upper Hessenberg matrix (destroyed). Throws
// no_convergence when one eigenvalue needs more than `max_its` iterations.
template <typename T>
std::vector<complex_value<T>> hessenberg_qr(dense_matrix<T>& a, int max_its = 60) {
    using std::abs;
    using std::sqrt;
    using traits = scalar_traits<T>;
    const int n = static_cast<int>(a.rows());
    const T zero = traits::make(a(0, 0), 0.0);
    const T eps = traits::epsilon(a(0, 0));
    std::vector<complex_value<T>> ev(static_cast<std::size_t>(n), {zero, zero});
    auto A = [&](int i, int j) -> T& { return a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };

    T anorm = zero;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += abs(A(i, j));

    int nn = n - 1;
    T t = zero;
    T p = zero, q = zero, r = zero, s = zero, w = zero, x = zero, y = zero, z = zero;
    while (nn >= 0) {
        int its = 0;
        int l = 0;
        do {
            for (l = nn; l >= 1; --l) {
                s = abs(A(l - 1, l - 1)) + abs(A(l, l));
                if (s == 0.0) s = anorm;
                if (abs(A(l, l - 1)) <= eps * s) {
                    A(l, l - 1) = zero;
                    break;
                }
            }
            x = A(nn, nn);
            if (l == nn) {
                ev[nn] = {x + t, zero};
                --nn;
            } else {
                y = A(nn - 1, nn - 1);
                w = A(nn, nn - 1) * A(nn - 1, nn);
                if (l == nn - 1) {
                    p = (y - x) * 0.5;
                    q = p * p + w;
                    z = sqrt(T(abs(q)));
                    x += t;
                    if (q >= 0.0) {
                        z = p + detail::sign_like(z, p);
                        ev[nn - 1] = {x + z, zero};
                        ev[nn] = {x + z, zero};
                        if (z != 0.0) ev[nn].re = x - w / z;
                    } else {
                        ev[nn - 1] = {x + p, -z};
                        ev[nn] = {x + p, z};
                    }
                    nn -= 2;
                } else {
                    if (its == max_its) throw no_convergence("QR iteration did not converge");
                    if (its > 0 && its % 10 == 0) {
                        t += x;
                        for (int i = 0; i <= nn; ++i) A(i, i) -= x;
                        s = abs(A(nn, nn - 1)) + abs(A(nn - 1, nn - 2));
                        x = s * 0.75;
                        y = x;
                        w = s * s * -0.4375;
                    }
                    ++its;
                    int m = nn - 2;
                    for (; m >= l; --m) {
                        z = A(m, m);
                        r = x - z;
                        s = y - z;
                        p = (r * s - w) / A(m + 1, m) + A(m, m + 1);
                        q = A(m + 1, m + 1) - z - r - s;
                        r = A(m + 2, m + 1);
                        s = abs(p) + abs(q) + abs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        const T u = abs(A(m, m - 1)) * (abs(q) + abs(r));
                        const T v = abs(p) * (abs(A(m - 1, m - 1)) + abs(z) + abs(A(m + 1, m + 1)));
                        if (u <= eps * v) break;
                    }
                    for (int i = m + 2; i <= nn; ++i) {
                        A(i, i - 2) = zero;
                        if (i != m + 2) A(i, i - 3) = zero;
                    }
                    for (int k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = A(k, k - 1);
                            q = A(k + 1, k - 1);
                            r = zero;
                            if (k != nn - 1) r = A(k + 2, k - 1);
                            x = abs(p) + abs(q) + abs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        s = detail::sign_like(T(sqrt(T(p * p + q * q + r * r))), p);
                        if (s != 0.0) {
                            if (k == m) {
                                if (l != m) A(k, k - 1) = -A(k, k - 1);
                            } else {
                                A(k, k - 1) = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for (int j = k; j <= nn; ++j) {
                                p = A(k, j) + q * A(k + 1, j);
                                if (k != nn - 1) {
                                    p += r * A(k + 2, j);
                                    A(k + 2, j) -= p * z;
                                }
                                A(k + 1, j) -= p * y;
                                A(k, j) -= p * x;
                            }
                            const int mmin = nn < k + 3 ? nn : k + 3;
                            for (int i = l; i <= mmin; ++i) {
                                p = x * A(i, k) + y * A(i, k + 1);
                                if (k != nn - 1) {
                                    p += z * A(i, k + 2);
                                    A(i, k + 2) -= p * r;
                                }
                                A(i, k + 1) -= p * q;
                                A(i, k) -= p;
                            }
                        }
                    }
                }
            }
        } while (l < nn - 1);
    }
    return ev;
}

// All eigenvalues of a general square matrix, sorted by decreasing real part.
template <typename T>
std::vector<complex_value<T>> general_eigenvalues(dense_matrix<T> a, int max_its = 60) {
    if (!a.square()) throw dimension_mismatch("eigenvalues need a square matrix");
    if (a.rows() == 0) return {};
    balance(a);
    reduce_to_hessenberg(a);
    auto ev = hessenberg_qr(a, max_its);
    std::sort(ev.begin(), ev.end(), [](const auto& u, const auto& v) { return u.re > v.re; });
    return ev;
}

} // namespace tpbd
