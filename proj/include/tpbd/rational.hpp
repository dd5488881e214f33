#pragma once

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <mpfr.h>

#include "errors.hpp"

namespace tpbd {

namespace detail {

struct audit_state {
    bool enabled = false;
    std::uint64_t cancellations = 0;
    std::uint64_t operations = 0;
};

inline audit_state& audit() {
    thread_local audit_state state;
    return state;
}

} // namespace detail

// Records, on the current thread, every addition or subtraction whose
// nonzero operands can cancel: a - b with sign(a) == sign(b), or a + b with
// opposite signs. Scopes do not nest; the innermost one owns the counters.
class cancellation_audit {
public:
    cancellation_audit() {
        auto& s = detail::audit();
        saved_ = s;
        s = detail::audit_state{true, 0, 0};
    }
    ~cancellation_audit() { detail::audit() = saved_; }

    cancellation_audit(const cancellation_audit&) = delete;
    cancellation_audit& operator=(const cancellation_audit&) = delete;

    std::uint64_t cancellations() const { return detail::audit().cancellations; }
    std::uint64_t additive_operations() const { return detail::audit().operations; }

private:
    detail::audit_state saved_;
};

// Exact rational number, always in canonical form (positive denominator,
// coprime numerator and denominator).
class rational {
public:
    rational() = default;
    rational(int v) : q_(v) {}
    rational(long v) : q_(v) {}
    rational(long long v) : q_(mpz_class(std::to_string(v))) {}
    rational(unsigned long v) : q_(v) {}
    explicit rational(const mpz_class& z) : q_(z) {}
    explicit rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw division_by_zero("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }

    // Exact value of a finite double.
    static rational from_double(double v) {
        if (!std::isfinite(v)) throw range_error("non-finite double has no rational value");
        rational r;
        mpq_set_d(r.q_.get_mpq_t(), v);
        return r;
    }

    // Accepts `p/q` or `p` with optional sign on p; no whitespace inside.
    static rational parse(std::string_view text) {
        auto digits_ok = [](std::string_view s, bool allow_sign) {
            if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
            if (s.empty()) return false;
            for (char c : s)
                if (c < '0' || c > '9') return false;
            return true;
        };
        const auto slash = text.find('/');
        std::string_view num = text.substr(0, slash);
        std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                              : text.substr(slash + 1);
        if (!digits_ok(num, true) || !digits_ok(den, false))
            throw parse_error("invalid rational token '" + std::string(text) + "'");
        std::string n(num);
        if (!n.empty() && n[0] == '+') n.erase(0, 1);
        mpz_class zn(n, 10), zd(std::string(den), 10);
        if (zd == 0) throw parse_error("zero denominator in '" + std::string(text) + "'");
        return rational(zn, zd);
    }

    const mpq_class& value() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sign() == 0; }

    std::string str() const { return q_.get_str(10); }

    rational operator-() const { return rational(mpq_class(-q_)); }

    rational& operator+=(const rational& o) {
        note(sign() * o.sign() < 0);
        q_ += o.q_;
        return *this;
    }
    rational& operator-=(const rational& o) {
        note(sign() * o.sign() > 0);
        q_ -= o.q_;
        return *this;
    }
    rational& operator*=(const rational& o) {
        q_ *= o.q_;
        return *this;
    }
    rational& operator/=(const rational& o) {
        if (o.is_zero()) throw division_by_zero("rational division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend rational operator+(rational a, const rational& b) { return a += b; }
    friend rational operator-(rational a, const rational& b) { return a -= b; }
    friend rational operator*(rational a, const rational& b) { return a *= b; }
    friend rational operator/(rational a, const rational& b) { return a /= b; }

    friend bool operator==(const rational& a, const rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const rational& a, const rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const rational& a, const rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const rational& a, const rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const rational& a, const rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const rational& a, const rational& b) { return a.q_ >= b.q_; }

    friend std::ostream& operator<<(std::ostream& os, const rational& r) { return os << r.str(); }

private:
    static void note(bool cancelling) {
        auto& s = detail::audit();
        if (!s.enabled) return;
        ++s.operations;
        if (cancelling) ++s.cancellations;
    }

    mpq_class q_;
};

inline rational abs(const rational& x) { return x.sign() < 0 ? -x : x; }

inline rational pow(const rational& x, unsigned k) {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), x.value().get_num_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), x.value().get_den_mpz_t(), k);
    return rational(n, d);
}

// Nearest double to x (ties to even). Throws range_error when x overflows
// the finite range or is a nonzero value below the normal range, where the
// relative error bound of a single rounding no longer holds.
inline double round_to_double(const rational& x) {
    if (x.is_zero()) return 0.0;
    mpfr_t tmp;
    mpfr_init2(tmp, 53);
    mpfr_set_q(tmp, x.value().get_mpq_t(), MPFR_RNDN);
    const double d = mpfr_get_d(tmp, MPFR_RNDN);
    mpfr_clear(tmp);
    if (std::isinf(d) || std::fabs(d) > DBL_MAX)
        throw range_error("rational magnitude exceeds the double range");
    if (std::fabs(d) < DBL_MIN)
        throw range_error("rational magnitude below the normal double range");
    return d;
}

} // namespace tpbd
