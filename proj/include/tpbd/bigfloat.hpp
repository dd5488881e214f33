#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <utility>

#include <mpfr.h>

#include "rational.hpp"

namespace tpbd {

// Binary floating-point number with an explicit precision in bits. Every
// operation rounds to nearest; a binary operation is carried out at the
// larger precision of its operands. Mixed operations with double keep the
// precision of the bigfloat operand.
class bigfloat {
public:
    bigfloat() : bigfloat(0.0, 64) {}
    bigfloat(double v, mpfr_prec_t bits) {
        mpfr_init2(x_, bits);
        mpfr_set_d(x_, v, MPFR_RNDN);
    }
    bigfloat(const rational& q, mpfr_prec_t bits) {
        mpfr_init2(x_, bits);
        mpfr_set_q(x_, q.value().get_mpq_t(), MPFR_RNDN);
    }

    bigfloat(const bigfloat& o) {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    bigfloat(bigfloat&& o) noexcept {
        mpfr_init2(x_, MPFR_PREC_MIN);
        mpfr_swap(x_, o.x_);
    }
    bigfloat& operator=(const bigfloat& o) {
        if (this != &o) {
            mpfr_set_prec(x_, mpfr_get_prec(o.x_));
            mpfr_set(x_, o.x_, MPFR_RNDN);
        }
        return *this;
    }
    bigfloat& operator=(bigfloat&& o) noexcept {
        mpfr_swap(x_, o.x_);
        return *this;
    }
    ~bigfloat() { mpfr_clear(x_); }

    mpfr_prec_t precision() const { return mpfr_get_prec(x_); }
    mpfr_srcptr get() const { return x_; }
    mpfr_ptr get() { return x_; }

    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    int sign() const { return mpfr_sgn(x_); }
    bool is_zero() const { return mpfr_zero_p(x_) != 0; }
    bool is_finite() const { return mpfr_number_p(x_) != 0; }

    // Exact value (the significand is finite).
    rational to_rational() const {
        mpq_class q;
        mpfr_get_q(q.get_mpq_t(), x_);
        return rational(q);
    }

    std::string str(int digits = 20) const {
        char buf[256];
        mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, x_);
        return buf;
    }

    bigfloat operator-() const {
        bigfloat r(*this);
        mpfr_neg(r.x_, r.x_, MPFR_RNDN);
        return r;
    }

#define TPBD_BIGFLOAT_OP(op, fn, fn_d)                                          \
    bigfloat& operator op##=(const bigfloat& o) {                               \
        if (o.precision() > precision()) mpfr_prec_round(x_, o.precision(), MPFR_RNDN); \
        fn(x_, x_, o.x_, MPFR_RNDN);                                            \
        return *this;                                                           \
    }                                                                           \
    bigfloat& operator op##=(double d) {                                        \
        fn_d(x_, x_, d, MPFR_RNDN);                                             \
        return *this;                                                           \
    }                                                                           \
    friend bigfloat operator op(const bigfloat& a, const bigfloat& b) {         \
        bigfloat r(0.0, std::max(a.precision(), b.precision()));                \
        fn(r.x_, a.x_, b.x_, MPFR_RNDN);                                        \
        return r;                                                               \
    }                                                                           \
    friend bigfloat operator op(const bigfloat& a, double b) {                  \
        bigfloat r(0.0, a.precision());                                         \
        fn_d(r.x_, a.x_, b, MPFR_RNDN);                                         \
        return r;                                                               \
    }

    TPBD_BIGFLOAT_OP(+, mpfr_add, mpfr_add_d)
    TPBD_BIGFLOAT_OP(-, mpfr_sub, mpfr_sub_d)
    TPBD_BIGFLOAT_OP(*, mpfr_mul, mpfr_mul_d)
    TPBD_BIGFLOAT_OP(/, mpfr_div, mpfr_div_d)
#undef TPBD_BIGFLOAT_OP

    friend bigfloat operator+(double a, const bigfloat& b) { return b + a; }
    friend bigfloat operator*(double a, const bigfloat& b) { return b * a; }
    friend bigfloat operator-(double a, const bigfloat& b) {
        bigfloat r(0.0, b.precision());
        mpfr_d_sub(r.x_, a, b.x_, MPFR_RNDN);
        return r;
    }
    friend bigfloat operator/(double a, const bigfloat& b) {
        bigfloat r(0.0, b.precision());
        mpfr_d_div(r.x_, a, b.x_, MPFR_RNDN);
        return r;
    }

    friend bool operator==(const bigfloat& a, const bigfloat& b) { return mpfr_equal_p(a.x_, b.x_); }
    friend bool operator!=(const bigfloat& a, const bigfloat& b) { return !(a == b); }
    friend bool operator<(const bigfloat& a, const bigfloat& b) { return mpfr_less_p(a.x_, b.x_); }
    friend bool operator<=(const bigfloat& a, const bigfloat& b) { return mpfr_lessequal_p(a.x_, b.x_); }
    friend bool operator>(const bigfloat& a, const bigfloat& b) { return mpfr_greater_p(a.x_, b.x_); }
    friend bool operator>=(const bigfloat& a, const bigfloat& b) { return mpfr_greaterequal_p(a.x_, b.x_); }
    friend bool operator<(const bigfloat& a, double b) { return mpfr_cmp_d(a.x_, b) < 0; }
    friend bool operator>(const bigfloat& a, double b) { return mpfr_cmp_d(a.x_, b) > 0; }
    friend bool operator<=(const bigfloat& a, double b) { return mpfr_cmp_d(a.x_, b) <= 0; }
    friend bool operator>=(const bigfloat& a, double b) { return mpfr_cmp_d(a.x_, b) >= 0; }
    friend bool operator==(const bigfloat& a, double b) { return mpfr_cmp_d(a.x_, b) == 0; }
    friend bool operator!=(const bigfloat& a, double b) { return mpfr_cmp_d(a.x_, b) != 0; }

    friend std::ostream& operator<<(std::ostream& os, const bigfloat& x) { return os << x.str(); }

private:
    mpfr_t x_;
};

inline bigfloat abs(const bigfloat& x) {
    bigfloat r(x);
    mpfr_abs(r.get(), r.get(), MPFR_RNDN);
    return r;
}

inline bigfloat sqrt(const bigfloat& x) {
    bigfloat r(0.0, x.precision());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

inline bigfloat hypot(const bigfloat& a, const bigfloat& b) {
    bigfloat r(0.0, std::max(a.precision(), b.precision()));
    mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

// x * 2^e, exact.
inline bigfloat ldexp(const bigfloat& x, long e) {
    bigfloat r(x);
    mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

inline bigfloat copysign(const bigfloat& mag, const bigfloat& sgn) {
    bigfloat r(mag);
    mpfr_setsign(r.get(), mag.get(), mpfr_signbit(sgn.get()), MPFR_RNDN);
    return r;
}

// Scalar-kind glue for the generic dense kernels. `make(like, v)` builds a
// constant with the precision of `like`; `epsilon(like)` is the unit
// roundoff spacing at 1.
template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static double make(double, double v) { return v; }
    static double epsilon(double) { return 0x1p-52; }
    static double to_double(double x) { return x; }
    static double ldexp(double x, int e) { return std::ldexp(x, e); }
};

template <>
struct scalar_traits<bigfloat> {
    static bigfloat make(const bigfloat& like, double v) { return bigfloat(v, like.precision()); }
    static bigfloat epsilon(const bigfloat& like) {
        return tpbd::ldexp(bigfloat(1.0, like.precision()), 1 - static_cast<long>(like.precision()));
    }
    static double to_double(const bigfloat& x) { return x.to_double(); }
    static bigfloat ldexp(const bigfloat& x, int e) { return tpbd::ldexp(x, e); }
};

} // namespace tpbd
