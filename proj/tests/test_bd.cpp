#include <algorithm>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tpbd/bessel.hpp"
#include "tpbd/bidiagonal.hpp"
#include "tpbd/neville.hpp"

using tpbd::bidiagonal_decomposition;
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

bidiagonal_decomposition packed(std::initializer_list<std::initializer_list<long>> rows) {
    return bidiagonal_decomposition(ints(rows));
}

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
    return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

// Random valid BD: positive diagonal, nonnegative multipliers whose zeros
// respect both uniqueness implications.
bidiagonal_decomposition random_bd(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<long> num(1, 9), den(1, 5), coin(0, 3);
    rational_matrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) p(i, i) = rational(num(rng), den(rng));
    for (std::size_t j = 0; j < n; ++j) {
        bool dead_lower = false, dead_upper = false;
        for (std::size_t i = j + 1; i < n; ++i) {
            dead_lower = dead_lower || coin(rng) == 0;
            dead_upper = dead_upper || coin(rng) == 0;
            p(i, j) = dead_lower ? rational(0) : rational(num(rng), den(rng));
            p(j, i) = dead_upper ? rational(0) : rational(num(rng), den(rng));
        }
    }
    return bidiagonal_decomposition(p);
}

} // namespace

TEST(BdFromMatrix, Examples) {
    const auto id = tpbd::bd_from_matrix(rational_matrix::identity(3));
    EXPECT_EQ(id.packed(), rational_matrix::identity(3));

    const auto m = tpbd::bd_from_matrix(ints({{1, 2}, {1, 3}}));
    EXPECT_EQ(m.packed(), ints({{1, 2}, {1, 1}}));

    const auto v = tpbd::bd_from_matrix(tpbd::vandermonde_matrix(tpbd::node_sequence::integers(3)));
    EXPECT_EQ(v.packed(), ints({{1, 1, 1}, {1, 1, 2}, {1, 1, 2}}));

    EXPECT_THROW(tpbd::bd_from_matrix(ints({{1, 2}, {3, 1}})), tpbd::not_totally_positive);
}

TEST(Expand, Examples) {
    EXPECT_EQ(tpbd::expand(packed({{1, 0}, {0, 1}})), rational_matrix::identity(2));
    EXPECT_EQ(tpbd::expand(packed({{1, 2}, {1, 1}})), ints({{1, 2}, {1, 3}}));
    const auto a5 = tpbd::basis_matrix_A(5);
    EXPECT_EQ(tpbd::expand(tpbd::bd_from_matrix(a5)), a5);
    EXPECT_EQ(tpbd::expand(packed({{7}})), ints({{7}}));
}

TEST(Expand, MatchesExplicitFactorProduct) {
    // F_{n-1} ... F_1 D G_1 ... G_{n-1} multiplied out as dense matrices
    std::mt19937_64 rng(29);
    for (int k = 0; k < 20; ++k) {
        const std::size_t n = 1 + k % 5;
        const auto b = random_bd(rng, n);
        rational_matrix prod = rational_matrix::identity(n);
        for (std::size_t f = n - 1; f >= 1; --f) {
            rational_matrix F = rational_matrix::identity(n);
            for (std::size_t r = f; r < n; ++r) F(r, r - 1) = b.lower(r, r - f);
            prod = prod * F;
        }
        rational_matrix D(n, n);
        for (std::size_t i = 0; i < n; ++i) D(i, i) = b.diag(i);
        prod = prod * D;
        for (std::size_t g = 1; g < n; ++g) {
            rational_matrix G = rational_matrix::identity(n);
            for (std::size_t r = g; r < n; ++r) G(r - 1, r) = b.upper(r - g, r);
            prod = prod * G;
        }
        EXPECT_EQ(tpbd::expand(b), prod);
    }
}

TEST(Expand, RoundTripUniqueness) {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 60; ++k) {
        const auto b = random_bd(rng, 1 + k % 6);
        ASSERT_TRUE(tpbd::validate(b).empty());
        const auto a = tpbd::expand(b);
        EXPECT_EQ(tpbd::bd_from_matrix(a), b);
        mpq_class d = 1;
        for (std::size_t i = 0; i < b.size(); ++i) d *= b.diag(i).value();
        EXPECT_EQ(tpbd::determinant_exact(a).value(), d);
    }
}

TEST(Expand, SubtractionFree) {
    std::mt19937_64 rng(37);
    for (int k = 0; k < 20; ++k) {
        const auto b = random_bd(rng, 2 + k % 6);
        tpbd::cancellation_audit audit;
        (void)tpbd::expand(b);
        EXPECT_EQ(audit.cancellations(), 0u);
        EXPECT_GT(audit.additive_operations(), 0u);
    }
}

TEST(Transpose, Examples) {
    const auto sym = packed({{2, 3, 3}, {3, 1, 3}, {3, 3, 5}});
    EXPECT_EQ(tpbd::bd_transpose(sym), sym);
    const auto t = tpbd::bd_transpose(packed({{1, 2}, {1, 1}}));
    EXPECT_EQ(t.packed(), ints({{1, 1}, {2, 1}}));
    EXPECT_EQ(tpbd::expand(t), ints({{1, 1}, {2, 3}}));
    std::mt19937_64 rng(41);
    for (int k = 0; k < 10; ++k) {
        const auto b = random_bd(rng, 4);
        EXPECT_EQ(tpbd::bd_transpose(tpbd::bd_transpose(b)), b);
        EXPECT_EQ(tpbd::expand(tpbd::bd_transpose(b)), tpbd::expand(b).transposed());
    }
}

TEST(Product, Examples) {
    const auto b = packed({{1, 2}, {1, 1}});
    EXPECT_EQ(tpbd::bd_product(tpbd::bd_from_matrix(rational_matrix::identity(2)), b), b);
    const auto p = tpbd::bd_product(packed({{1, 0}, {1, 1}}), packed({{1, 1}, {0, 1}}));
    EXPECT_EQ(tpbd::expand(p), ints({{1, 1}, {1, 2}}));
    EXPECT_EQ(p.packed(), ints({{1, 1}, {1, 1}}));
    const auto va = tpbd::bd_product(tpbd::bd_vandermonde(tpbd::node_sequence::parse("1,2")),
                                     tpbd::bd_transpose(tpbd::bd_of_A(2)));
    EXPECT_EQ(tpbd::expand(va), ints({{1, 2}, {1, 3}}));
    EXPECT_THROW(tpbd::bd_product(b, packed({{1}})), tpbd::dimension_mismatch);
}

TEST(Product, MatchesExpandedProduct) {
    std::mt19937_64 rng(43);
    for (int k = 0; k < 20; ++k) {
        const std::size_t n = 2 + k % 4;
        const auto x = random_bd(rng, n);
        const auto y = random_bd(rng, n);
        const auto p = tpbd::bd_product(x, y);
        EXPECT_EQ(tpbd::expand(p), tpbd::expand(x) * tpbd::expand(y));
        EXPECT_TRUE(tpbd::validate(p).empty());
    }
}

TEST(Validate, Examples) {
    EXPECT_TRUE(tpbd::validate(tpbd::bd_from_matrix(ints({{1, 2}, {1, 3}}))).empty());
    const auto v1 = tpbd::validate(packed({{1, 0}, {0, 0}}));
    EXPECT_TRUE(mentions(v1, "d_2 not positive"));
    const auto v2 = tpbd::validate(packed({{1, 0, 0, 0}, {1, 1, 0, 0}, {0, 1, 1, 0}, {2, 1, 1, 1}}));
    ASSERT_FALSE(v2.empty());
    EXPECT_TRUE(mentions(v2, "m_31=0")) << v2.front();
    const auto v3 = tpbd::validate(packed({{1, 0, 1}, {0, 1, 0}, {0, 0, 1}}));
    EXPECT_FALSE(v3.empty());
    const auto v4 = tpbd::validate(packed({{1, -1}, {0, 1}}));
    EXPECT_FALSE(v4.empty());
}

TEST(Bdf, RoundTripAndErrors) {
    const auto b = tpbd::bd_bessel_collocation(tpbd::node_sequence::parse("1/2,1,7/3"));
    std::ostringstream out;
    tpbd::write_bdf(out, b);
    EXPECT_EQ(out.str().rfind("BDF1 3\n", 0), 0u);
    std::istringstream in(out.str());
    EXPECT_EQ(tpbd::read_bdf(in), b);

    std::istringstream bad_magic("BDF2 1\n1\n");
    EXPECT_THROW(tpbd::read_bdf(bad_magic), tpbd::parse_error);
    std::istringstream short_data("BDF1 2\n1 2\n3\n");
    EXPECT_THROW(tpbd::read_bdf(short_data), tpbd::parse_error);
    std::istringstream junk("BDF1 1\n1/x\n");
    EXPECT_THROW(tpbd::read_bdf(junk), tpbd::parse_error);
}
