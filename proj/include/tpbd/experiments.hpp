#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <future>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "bessel.hpp"
#include "bidiagonal.hpp"
#include "bigfloat.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "precision.hpp"
#include "rational.hpp"
#include "reference.hpp"
#include "solvers.hpp"

namespace tpbd::experiments {

// 64-bit LCG (Knuth's MMIX constants); draws integers in [1, 1000] from the
// high bits of the state.
class lcg {
public:
    static constexpr std::uint64_t multiplier = 6364136223846793005ULL;
    static constexpr std::uint64_t increment = 1442695040888963407ULL;

    explicit lcg(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ = state_ * multiplier + increment;
        return state_;
    }
    long draw_1_1000() { return static_cast<long>((next() >> 33) % 1000) + 1; }

private:
    std::uint64_t state_;
};

// b2 with entries in [1, 1000]; b1_i = (-1)^(i+1) b2_i (1-based i).
struct rhs_pair {
    std::vector<rational> alternating; // b1
    std::vector<rational> positive;    // b2
};

inline rhs_pair make_rhs(std::size_t n, std::uint64_t seed) {
    lcg rng(seed);
    rhs_pair r;
    for (std::size_t i = 0; i < n; ++i) {
        const long v = rng.draw_1_1000();
        r.positive.emplace_back(v);
        r.alternating.emplace_back(i % 2 == 0 ? v : -v);
    }
    return r;
}

// |approx - exact| / |exact| evaluated exactly, then rounded.
inline double relative_error(double approx, const rational& exact) {
    if (exact.is_zero()) throw division_by_zero("relative error against a zero reference");
    if (!std::isfinite(approx)) return std::numeric_limits<double>::infinity();
    const rational e = abs(rational::from_double(approx) - exact) / abs(exact);
    return e.is_zero() ? 0.0 : bigfloat(e, 64).to_double();
}

inline double relative_error(double approx, const bigfloat& reference) {
    if (reference.is_zero()) throw division_by_zero("relative error against a zero reference");
    if (!std::isfinite(approx)) return std::numeric_limits<double>::infinity();
    const bigfloat a(approx, reference.precision());
    return (abs(a - reference) / abs(reference)).to_double();
}

struct table_row {
    std::string label;
    double reference = 0.0;
    double relerr_hra = 0.0;
    double relerr_naive = 0.0;
};

struct table {
    int id = 0;
    bool summary = false; // `stat,...` rows instead of `i,reference,...`
    std::vector<table_row> rows;
};

struct table_config {
    basis_kind basis = basis_kind::bessel;
    std::size_t n = 20;
    std::uint64_t seed = 1;
    precision_policy policy{};
};

inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

inline void write_csv(std::ostream& out, const table& t) {
    out << (t.summary ? "stat,relerr_hra,relerr_naive\n" : "i,reference,relerr_hra,relerr_naive\n");
    for (const auto& r : t.rows) {
        out << r.label << ',';
        if (!t.summary) out << format_number(r.reference) << ',';
        out << format_number(r.relerr_hra) << ',' << format_number(r.relerr_naive) << '\n';
    }
}

struct inverse_errors {
    double mean_hra = 0, max_hra = 0, mean_naive = 0, max_naive = 0;
    bool checkerboard = true;
};

// Componentwise errors of the BD inverse (rounded once) and of the double
// LU inverse, against Gauss-Jordan elimination in exact arithmetic.
inline inverse_errors compare_inverses(const bidiagonal_decomposition& b) {
    const rational_matrix m = expand(b);
    const rational_matrix exact = inverse_exact(m);
    const rational_matrix hra = inverse(b);
    const auto naive = naive_inverse(to_double(m));
    inverse_errors e;
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const int expected_sign = (i + j) % 2 == 0 ? 1 : -1;
            if (!hra(i, j).is_zero() && hra(i, j).sign() != expected_sign) e.checkerboard = false;
            if (exact(i, j).is_zero()) continue;
            const double eh = relative_error(round_to_double(hra(i, j)), exact(i, j));
            const double en = relative_error(naive(i, j), exact(i, j));
            e.mean_hra += eh;
            e.mean_naive += en;
            e.max_hra = std::max(e.max_hra, eh);
            e.max_naive = std::max(e.max_naive, en);
        }
    e.mean_hra /= static_cast<double>(n * n);
    e.mean_naive /= static_cast<double>(n * n);
    return e;
}

struct solve_errors {
    std::vector<rational> exact;
    std::vector<double> hra;
    std::vector<double> naive;
    std::vector<double> relerr_hra;
    std::vector<double> relerr_naive;
};

inline solve_errors compare_solves(const bidiagonal_decomposition& b, const std::vector<rational>& rhs) {
    const rational_matrix m = expand(b);
    solve_errors s;
    s.exact = solve_exact(m, rhs);
    for (const auto& x : solve(b, rhs)) s.hra.push_back(round_to_double(x));
    std::vector<double> rhs_d;
    for (const auto& v : rhs) rhs_d.push_back(round_to_double(v));
    s.naive = naive_solve(to_double(m), rhs_d);
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        s.relerr_hra.push_back(relative_error(s.hra[i], s.exact[i]));
        s.relerr_naive.push_back(relative_error(s.naive[i], s.exact[i]));
    }
    return s;
}

// Tables 1-5: 1 eigenvalues, 2 singular values, 3 inverse (mean/max),
// 4 solve with alternating rhs, 5 solve with positive rhs.
inline table run_table(int id, const table_config& cfg) {
    if (id < 1 || id > 5) throw parse_error("table id must be 1..5");
    if (cfg.n < 2) throw range_error("experiments need n >= 2");
    const auto nodes = node_sequence::integers(cfg.n);
    const auto b = bd_collocation(cfg.basis, nodes);
    const rational_matrix m = expand(b);
    table t;
    t.id = id;
    auto index = [](std::size_t i) { return std::to_string(i + 1); };

    if (id == 1 || id == 2) {
        const bool eig = id == 1;
        const auto hra = eig ? eigenvalues(b, cfg.policy) : singular_values(b, cfg.policy);
        const auto ref = eig ? reference::eigenvalues(m) : reference::singular_values(m);
        const auto naive = eig ? naive_eigenvalues(to_double(m)) : naive_singular_values(to_double(m));
        for (std::size_t i = 0; i < ref.size(); ++i)
            t.rows.push_back({index(i), ref[i].to_double(), relative_error(hra.values[i], ref[i]),
                              relative_error(naive[i], ref[i])});
    } else if (id == 3) {
        const auto e = compare_inverses(b);
        t.summary = true;
        t.rows.push_back({"mean", 0.0, e.mean_hra, e.mean_naive});
        t.rows.push_back({"max", 0.0, e.max_hra, e.max_naive});
    } else {
        const auto rhs = make_rhs(cfg.n, cfg.seed);
        const auto s = compare_solves(b, id == 4 ? rhs.alternating : rhs.positive);
        for (std::size_t i = 0; i < cfg.n; ++i)
            t.rows.push_back({index(i), round_to_double(s.exact[i]), s.relerr_hra[i], s.relerr_naive[i]});
    }
    return t;
}

enum class figure_kind { values, inverse };

struct figure_id {
    figure_kind kind;
    basis_kind basis;
};

inline figure_id parse_figure_id(const std::string& s) {
    if (s == "val") return {figure_kind::values, basis_kind::bessel};
    if (s == "inv") return {figure_kind::inverse, basis_kind::bessel};
    if (s == "valR") return {figure_kind::values, basis_kind::reverse_bessel};
    if (s == "invR") return {figure_kind::inverse, basis_kind::reverse_bessel};
    throw parse_error("figure id must be one of val, inv, valR, invR");
}

// One row per order n; the four series depend on the figure kind:
//   values:  eig_hra, eig_naive, svd_hra, svd_naive (smallest eigen/singular value)
//   inverse: mean_hra, mean_naive, max_hra, max_naive
struct figure_data {
    figure_id id;
    std::vector<std::string> series;
    std::vector<std::size_t> orders;
    std::vector<std::vector<double>> values; // values[row][series]
};

inline std::vector<double> figure_row(const figure_id& id, std::size_t n, const precision_policy& policy) {
    const auto b = bd_collocation(id.basis, node_sequence::integers(n));
    if (id.kind == figure_kind::inverse) {
        const auto e = compare_inverses(b);
        return {e.mean_hra, e.mean_naive, e.max_hra, e.max_naive};
    }
    const rational_matrix m = expand(b);
    const auto md = to_double(m);
    const auto ev = eigenvalues(b, policy);
    const auto sv = singular_values(b, policy);
    const auto ref_e = reference::eigenvalues(m);
    const auto ref_s = reference::singular_values(m);
    const auto ne = naive_eigenvalues(md);
    const auto ns = naive_singular_values(md);
    return {relative_error(ev.values.back(), ref_e.back()), relative_error(ne.back(), ref_e.back()),
            relative_error(sv.values.back(), ref_s.back()), relative_error(ns.back(), ref_s.back())};
}

// Orders 2..n_max at integer nodes; orders run concurrently and are merged
// in order.
inline figure_data run_figure(const figure_id& id, std::size_t n_max, const precision_policy& policy = {}) {
    if (n_max < 2 || n_max > 25) throw range_error("figure sweeps need 2 <= n_max <= 25");
    figure_data f;
    f.id = id;
    f.series = id.kind == figure_kind::values
                   ? std::vector<std::string>{"eig_hra", "eig_naive", "svd_hra", "svd_naive"}
                   : std::vector<std::string>{"mean_hra", "mean_naive", "max_hra", "max_naive"};
    std::vector<std::future<std::vector<double>>> jobs;
    for (std::size_t n = 2; n <= n_max; ++n)
        jobs.push_back(std::async(std::launch::async, [&id, &policy, n] { return figure_row(id, n, policy); }));
    for (std::size_t n = 2; n <= n_max; ++n) {
        f.orders.push_back(n);
        f.values.push_back(jobs[n - 2].get());
    }
    return f;
}

inline void write_csv(std::ostream& out, const figure_data& f) {
    out << 'n';
    for (const auto& s : f.series) out << ',' << s;
    out << '\n';
    for (std::size_t r = 0; r < f.orders.size(); ++r) {
        out << f.orders[r];
        for (double v : f.values[r]) out << ',' << format_number(v);
        out << '\n';
    }
}

// Log-scale line chart; zero errors are drawn at the 1e-17 floor.
inline void write_svg(std::ostream& out, const figure_data& f, const std::string& title) {
    constexpr double width = 640, height = 420, left = 70, right = 150, top = 40, bottom = 50;
    constexpr double floor_value = 1e-17;
    double lo = 1e300, hi = -1e300;
    for (const auto& row : f.values)
        for (double v : row) {
            const double l = std::log10(std::max(v, floor_value));
            if (std::isfinite(l)) {
                lo = std::min(lo, l);
                hi = std::max(hi, l);
            }
        }
    lo = std::floor(lo);
    hi = std::max(std::ceil(hi), lo + 1);
    const double n0 = static_cast<double>(f.orders.front());
    const double n1 = std::max(static_cast<double>(f.orders.back()), n0 + 1);
    auto px = [&](double n) { return left + (n - n0) / (n1 - n0) * (width - left - right); };
    auto py = [&](double v) {
        const double l = std::log10(std::max(v, floor_value));
        return top + (hi - l) / (hi - lo) * (height - top - bottom);
    };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e"};
    char buf[256];

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << left << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
    std::snprintf(buf, sizeof buf, "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"black\"/>\n",
                  left, top, width - left - right, height - top - bottom);
    out << buf;
    for (double e = lo; e <= hi; e += std::max(1.0, std::ceil((hi - lo) / 10))) {
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">1e%+03d</text>\n",
                      left - 4, py(std::pow(10.0, e)) + 3, static_cast<int>(e));
        out << buf;
    }
    for (std::size_t n : f.orders) {
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">%zu</text>\n",
                      px(static_cast<double>(n)), height - bottom + 14, n);
        out << buf;
    }
    for (std::size_t s = 0; s < f.series.size(); ++s) {
        out << "<polyline fill=\"none\" stroke=\"" << colors[s % 4] << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t r = 0; r < f.orders.size(); ++r) {
            std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", r ? " " : "", px(static_cast<double>(f.orders[r])),
                          py(f.values[r][s]));
            out << buf;
        }
        out << "\"/>\n";
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\" fill=\"%s\">%s</text>\n",
                      width - right + 10, top + 16.0 * static_cast<double>(s + 1), colors[s % 4], f.series[s].c_str());
        out << buf;
    }
    out << "</svg>\n";
}

} // namespace tpbd::experiments
