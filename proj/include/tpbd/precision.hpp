#pragma once

#include <string>
#include <vector>

#include "bigfloat.hpp"
#include "errors.hpp"

namespace tpbd {

struct precision_policy {
    long initial_bits = 256;
    long max_bits = 16384;
    double agreement_rtol = 1e-19; // 1e-3 x the default 1e-16 target

    // Policy whose agreement tolerance is 1e-3 of the requested accuracy.
    static precision_policy for_target(double target_rtol) {
        precision_policy p;
        p.agreement_rtol = 1e-3 * target_rtol;
        return p;
    }

    void check() const {
        if (initial_bits < 64 || max_bits < initial_bits || !(agreement_rtol > 0.0) ||
            !(agreement_rtol < 1.0))
            throw range_error("invalid precision policy");
    }
};

struct refined_values {
    std::vector<double> values;
    std::vector<bigfloat> high_precision;
    long achieved_bits = 0;
};

namespace detail {

inline bool agree(const std::vector<bigfloat>& lo, const std::vector<bigfloat>& hi, double rtol) {
    if (lo.size() != hi.size()) return false;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!lo[i].is_finite() || !hi[i].is_finite()) return false;
        const bigfloat diff = abs(hi[i] - lo[i]);
        if (hi[i].is_zero()) {
            if (diff > rtol) return false;
        } else if (diff > abs(hi[i]) * rtol) {
            return false;
        }
    }
    return true;
}

} // namespace detail

// Runs `compute(bits)` at the initial precision and keeps doubling until
// two consecutive runs agree componentwise to `agreement_rtol`; the result
// is the higher-precision run rounded to double. A run that throws
// no_convergence counts as a disagreement.
//
// `compute` must be deterministic for a given precision and return a
// std::vector<bigfloat>.
template <typename Compute>
refined_values refine_until_stable(Compute&& compute, const precision_policy& policy) {
    policy.check();
    auto attempt = [&](long bits, std::vector<bigfloat>& out) {
        try {
            out = compute(bits);
            return true;
        } catch (const no_convergence&) {
            return false;
        }
    };

    std::vector<bigfloat> prev;
    bool have_prev = attempt(policy.initial_bits, prev);
    for (long bits = policy.initial_bits * 2; bits <= policy.max_bits; bits *= 2) {
        std::vector<bigfloat> cur;
        const bool ok = attempt(bits, cur);
        if (ok && have_prev && detail::agree(prev, cur, policy.agreement_rtol)) {
            refined_values r;
            r.values.reserve(cur.size());
            for (const auto& v : cur) r.values.push_back(v.to_double());
            r.high_precision = std::move(cur);
            r.achieved_bits = bits;
            return r;
        }
        prev = std::move(cur);
        have_prev = ok;
    }
    throw no_convergence("no agreement between precision levels up to " +
                         std::to_string(policy.max_bits) + " bits");
}

} // namespace tpbd
