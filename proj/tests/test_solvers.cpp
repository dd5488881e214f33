#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tpbd/bessel.hpp"
#include "tpbd/reference.hpp"
#include "tpbd/solvers.hpp"

using tpbd::basis_kind;
using tpbd::bidiagonal_decomposition;
using tpbd::bigfloat;
using tpbd::rational;
using tpbd::rational_matrix;

namespace {

rational_matrix ints(std::initializer_list<std::initializer_list<long>> rows) {
    rational_matrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (long v : r) m(i, j++) = rational(v);
        ++i;
    }
    return m;
}

std::vector<rational> vec(std::initializer_list<long> v) {
    std::vector<rational> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

const bidiagonal_decomposition& m2() {
    static const auto b = tpbd::bd_from_matrix(ints({{1, 2}, {1, 3}}));
    return b;
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

std::vector<bidiagonal_decomposition> family(std::size_t max_n) {
    std::vector<bidiagonal_decomposition> out;
    std::mt19937_64 rng(61);
    for (std::size_t n = 2; n <= max_n; ++n) {
        const auto ints_n = tpbd::node_sequence::integers(n);
        out.push_back(tpbd::bd_bessel_collocation(ints_n));
        out.push_back(tpbd::bd_reverse_bessel_collocation(ints_n));
        const auto nodes = oracle::to_nodes(oracle::random_nodes(rng, n));
        out.push_back(tpbd::bd_bessel_collocation(nodes));
        out.push_back(tpbd::bd_reverse_bessel_collocation(nodes));
    }
    return out;
}

} // namespace

TEST(Determinant, Examples) {
    EXPECT_EQ(tpbd::determinant(tpbd::bd_from_matrix(rational_matrix::identity(4))), rational(1));
    EXPECT_EQ(tpbd::determinant(m2()), rational(1));
    EXPECT_EQ(tpbd::determinant(tpbd::bd_of_A(4)), rational(45));
    for (const auto& b : family(7)) EXPECT_EQ(tpbd::determinant(b), tpbd::determinant_exact(tpbd::expand(b)));
}

TEST(SignPattern, Classification) {
    EXPECT_EQ(tpbd::classify_signs(vec({1, -2, 3})), tpbd::sign_pattern::alternating);
    EXPECT_EQ(tpbd::classify_signs(vec({1, 0, -3})), tpbd::sign_pattern::alternating);
    EXPECT_EQ(tpbd::classify_signs(vec({0, 4, 0})), tpbd::sign_pattern::single_support);
    EXPECT_EQ(tpbd::classify_signs(vec({1, 1})), tpbd::sign_pattern::general);
    EXPECT_EQ(tpbd::classify_signs(vec({0, 0})), tpbd::sign_pattern::general);
}

TEST(Solve, Examples) {
    const auto id = tpbd::bd_from_matrix(rational_matrix::identity(3));
    EXPECT_EQ(tpbd::solve(id, vec({4, -1, 7})), vec({4, -1, 7}));
    EXPECT_EQ(tpbd::solve(m2(), vec({1, -1})), vec({5, -2}));
    EXPECT_EQ(tpbd::solve(m2(), vec({1, 1})), vec({1, 0}));
    EXPECT_THROW(tpbd::solve(m2(), vec({1})), tpbd::dimension_mismatch);
}

TEST(Solve, ExactResidual) {
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<long> d(-1000, 1000);
    for (const auto& b : family(9)) {
        std::vector<rational> rhs;
        for (std::size_t i = 0; i < b.size(); ++i) rhs.emplace_back(d(rng), 7);
        EXPECT_EQ(tpbd::expand(b) * tpbd::solve(b, rhs), rhs);
    }
}

TEST(Solve, AlternatingSignsSurviveEveryFactor) {
    std::mt19937_64 rng(71);
    std::uniform_int_distribution<long> d(1, 1000);
    for (const auto& b : family(10)) {
        std::vector<rational> rhs;
        for (std::size_t i = 0; i < b.size(); ++i) rhs.emplace_back(i % 2 ? -d(rng) : d(rng));
        int factors = 0;
        tpbd::cancellation_audit audit;
        const auto x = tpbd::solve(b, rhs, [&](const std::vector<rational>& v) {
            ++factors;
            EXPECT_EQ(tpbd::classify_signs(v), tpbd::sign_pattern::alternating);
            for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i].sign(), i % 2 ? -1 : 1);
        });
        EXPECT_EQ(audit.cancellations(), 0u);
        EXPECT_EQ(factors, static_cast<int>(2 * b.size() - 1));
    }
}

TEST(Inverse, Examples) {
    EXPECT_EQ(tpbd::inverse(tpbd::bd_from_matrix(rational_matrix::identity(3))), rational_matrix::identity(3));
    EXPECT_EQ(tpbd::inverse(m2()), ints({{3, -2}, {-1, 1}}));
    const auto a6 = tpbd::bd_of_A(6);
    EXPECT_EQ(tpbd::inverse(a6) * tpbd::expand(a6), rational_matrix::identity(6));
}

TEST(Inverse, CheckerboardAndExact) {
    for (const auto& b : family(10)) {
        const auto inv = tpbd::inverse(b);
        EXPECT_EQ(inv, tpbd::inverse_exact(tpbd::expand(b)));
        for (std::size_t i = 0; i < inv.rows(); ++i)
            for (std::size_t j = 0; j < inv.cols(); ++j)
                if (!inv(i, j).is_zero()) {
                    EXPECT_EQ(inv(i, j).sign(), (i + j) % 2 ? -1 : 1);
                }
    }
}

TEST(Eigenvalues, Examples) {
    const auto one = tpbd::eigenvalues(bidiagonal_decomposition(ints({{5}})));
    EXPECT_EQ(one.values, std::vector<double>{5.0});
    const auto two = tpbd::eigenvalues(m2());
    const bigfloat s3 = tpbd::sqrt(bigfloat(3.0, 200));
    ASSERT_EQ(two.values.size(), 2u);
    EXPECT_EQ(two.values[0], (s3 + 2.0).to_double());
    EXPECT_EQ(two.values[1], (bigfloat(2.0, 200) - s3).to_double());
    EXPECT_NEAR(two.values[0], 3.7320508075688772, 1e-15);
    EXPECT_NEAR(two.values[1], 0.2679491924311228, 1e-15);
    EXPECT_GE(two.achieved_precision_bits, 512);
    EXPECT_EQ(two.kind, tpbd::spectrum_kind::eigenvalues);
}

TEST(SingularValues, Examples) {
    EXPECT_EQ(tpbd::singular_values(bidiagonal_decomposition(ints({{5}}))).values, std::vector<double>{5.0});
    const auto sv = tpbd::singular_values(m2());
    const bigfloat r221 = tpbd::sqrt(bigfloat(221.0, 200));
    const double big = tpbd::sqrt(bigfloat((r221 + 15.0) / 2.0)).to_double();
    const double small = tpbd::sqrt(bigfloat((bigfloat(15.0, 200) - r221) / 2.0)).to_double();
    EXPECT_EQ(sv.values[0], big);
    EXPECT_EQ(sv.values[1], small);
    EXPECT_NEAR(sv.values[0] * sv.values[1], 1.0, 1e-15);
    EXPECT_EQ(sv.kind, tpbd::spectrum_kind::singular_values);
}

TEST(Spectra, PositiveDistinctAndProductIdentities) {
    for (const auto& b : family(10)) {
        const auto ev = tpbd::eigenvalues(b);
        const auto sv = tpbd::singular_values(b);
        const double det = tpbd::round_to_double(tpbd::determinant(b));
        double pe = 1, ps = 1;
        for (std::size_t i = 0; i < ev.values.size(); ++i) {
            EXPECT_GT(ev.values[i], 0.0);
            if (i) {
                EXPECT_LT(ev.values[i], ev.values[i - 1]);
                EXPECT_LE(sv.values[i], sv.values[i - 1]);
            }
            pe *= ev.values[i];
            ps *= sv.values[i] * sv.values[i];
        }
        EXPECT_LT(rel(pe, det), 1e-12);
        EXPECT_LT(rel(ps, det * det), 1e-12);
    }
}

TEST(Spectra, AgreeWithCharacteristicPolynomialRoots) {
    for (const auto& b : family(6)) {
        const auto m = tpbd::expand(b);
        const auto ref_e = tpbd::reference::to_doubles(tpbd::reference::eigenvalues(m));
        const auto ref_s = tpbd::reference::to_doubles(tpbd::reference::singular_values(m));
        const auto ev = tpbd::eigenvalues(b).values;
        const auto sv = tpbd::singular_values(b).values;
        for (std::size_t i = 0; i < ev.size(); ++i) {
            EXPECT_LE(rel(ev[i], ref_e[i]), 1e-13);
            EXPECT_LE(rel(sv[i], ref_s[i]), 1e-13);
        }
    }
}

TEST(Spectra, NonRealSpectrumRejected) {
    // not a valid BD (negative entry); expands to [[1,-1],[1,0]] with
    // eigenvalues (1 +- i sqrt 3)/2
    const bidiagonal_decomposition b(ints({{1, -1}, {1, 1}}));
    EXPECT_FALSE(tpbd::validate(b).empty());
    EXPECT_THROW(tpbd::eigenvalues(b), tpbd::non_real_spectrum);
}

TEST(Reference, CharacteristicPolynomialOracle) {
    std::mt19937_64 rng(73);
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto m = tpbd::collocation_matrix(basis_kind::bessel, oracle::to_nodes(oracle::random_nodes(rng, n)));
        const auto p = tpbd::reference::characteristic_polynomial(m);
        ASSERT_EQ(p.size(), n + 1);
        EXPECT_EQ(p.back(), rational(1));
        // p(x) = det(xI - M) at a few rational points
        for (long x : {-3L, 0L, 2L, 11L}) {
            rational_matrix xm = m;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) xm(i, j) = (i == j ? rational(x) : rational(0)) - m(i, j);
            rational val = 0, xp = 1;
            for (const auto& c : p) {
                val += c * xp;
                xp *= rational(x);
            }
            EXPECT_EQ(val.value(), oracle::det(xm));
        }
    }
}

TEST(Reference, RootIsolation) {
    // (x - 1/3)(x - 2)(x - 1000)
    const std::vector<rational> p{rational(-2000, 3), rational(6002, 3) + rational(1000, 3), rational(-3007, 3), rational(1)};
    const auto r = tpbd::reference::positive_real_roots(p, 3);
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(r[0].to_double(), 1000.0);
    EXPECT_EQ(r[1].to_double(), 2.0);
    EXPECT_EQ(r[2].to_double(), 1.0 / 3.0);
    EXPECT_THROW(tpbd::reference::positive_real_roots({rational(1), rational(0), rational(1)}, 2), tpbd::no_convergence);
}

TEST(Naive, Examples) {
    const auto id = tpbd::dense_matrix<double>::identity(3);
    EXPECT_EQ(tpbd::naive_eigenvalues(id), (std::vector<double>{1, 1, 1}));
    EXPECT_EQ(tpbd::naive_singular_values(id), (std::vector<double>{1, 1, 1}));
    const tpbd::dense_matrix<double> m{{1.0, 2.0}, {1.0, 3.0}};
    const auto hra_e = tpbd::eigenvalues(m2()).values;
    const auto hra_s = tpbd::singular_values(m2()).values;
    const auto ne = tpbd::naive_eigenvalues(m);
    const auto ns = tpbd::naive_singular_values(m);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_LT(rel(ne[i], hra_e[i]), 1e-14);
        EXPECT_LT(rel(ns[i], hra_s[i]), 1e-14);
    }
    const auto x = tpbd::naive_solve(m, {1.0, -1.0});
    EXPECT_NEAR(x[0], 5.0, 1e-14);
    EXPECT_NEAR(x[1], -2.0, 1e-14);
    const auto inv = tpbd::naive_inverse(m);
    EXPECT_NEAR(inv(0, 1), -2.0, 1e-14);
    EXPECT_THROW(tpbd::naive_solve(tpbd::dense_matrix<double>{{1.0, 2.0}, {2.0, 4.0}}, {1.0, 1.0}),
                 tpbd::singular_matrix);
}

TEST(Naive, BlowUpOnM20) {
    const auto b = tpbd::bd_bessel_collocation(tpbd::node_sequence::integers(20));
    const auto ev = tpbd::eigenvalues(b).values;
    const auto ne = tpbd::naive_eigenvalues(tpbd::to_double(tpbd::expand(b)));
    EXPECT_GT(rel(ne.back(), ev.back()), 1.0);
}

TEST(RelativeErrors, Examples) {
    EXPECT_EQ(tpbd::relative_errors({1, 2}, {1, 2}), (std::vector<double>{0, 0}));
    EXPECT_NEAR(tpbd::relative_errors({1.1}, {1.0})[0], 0.1, 1e-15);
    EXPECT_EQ(tpbd::relative_errors({0.0}, {2.0})[0], 1.0);
    EXPECT_THROW(tpbd::relative_errors({1.0}, {0.0}), tpbd::division_by_zero);
    EXPECT_THROW(tpbd::relative_errors({1.0}, {1.0, 2.0}), tpbd::dimension_mismatch);
}
