#pragma once

// Extended-precision real for the verification oracle: a thin RAII wrapper
// over MPFR. Every value carries its own working precision (in decimal
// digits); binary operations compute at the larger of the two operand
// precisions. No global precision state, so concurrent oracle calls with
// different precisions do not interact.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "kummer/error.hpp"

namespace kummer {

class BigReal {
  public:
    static mpfr_prec_t bits_for_digits(unsigned digits10) {
        // log2(10) = 3.3219...; a few guard bits on top
        return static_cast<mpfr_prec_t>(digits10 * 3.3219280948873623 + 16.0);
    }

    BigReal(double x, unsigned digits10) {
        mpfr_init2(v_, bits_for_digits(digits10));
        mpfr_set_d(v_, x, MPFR_RNDN);
    }

    BigReal(const BigReal& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }

    BigReal(BigReal&& o) noexcept {
        mpfr_init2(v_, 64);
        mpfr_swap(v_, o.v_);
    }

    BigReal& operator=(const BigReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    BigReal& operator=(BigReal&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }

    ~BigReal() { mpfr_clear(v_); }

    mpfr_prec_t precision_bits() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_integer() const { return mpfr_integer_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    /// Decimal string with the given number of significant digits.
    std::string to_string(int digits10) const {
        char* raw = nullptr;
        if (mpfr_asprintf(&raw, "%.*Rg", digits10, v_) < 0)
            return "?";
        std::string out(raw);
        mpfr_free_str(raw);
        return out;
    }

    // -- arithmetic ------------------------------------------------------

    friend BigReal operator+(const BigReal& a, const BigReal& b) {
        BigReal r(combined(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator-(const BigReal& a, const BigReal& b) {
        BigReal r(combined(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator*(const BigReal& a, const BigReal& b) {
        BigReal r(combined(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator/(const BigReal& a, const BigReal& b) {
        BigReal r(combined(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator-(const BigReal& a) {
        BigReal r(same(a));
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend BigReal operator+(const BigReal& a, double b) {
        BigReal r(same(a));
        mpfr_add_d(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigReal operator-(const BigReal& a, double b) {
        BigReal r(same(a));
        mpfr_sub_d(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigReal operator*(const BigReal& a, double b) {
        BigReal r(same(a));
        mpfr_mul_d(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigReal operator/(const BigReal& a, double b) {
        BigReal r(same(a));
        mpfr_div_d(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigReal operator-(double a, const BigReal& b) {
        BigReal r(same(b));
        mpfr_d_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator/(double a, const BigReal& b) {
        BigReal r(same(b));
        mpfr_d_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator*(double a, const BigReal& b) { return b * a; }
    friend BigReal operator+(double a, const BigReal& b) { return b + a; }

    BigReal& operator+=(const BigReal& o) {
        bump(o);
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigReal& operator-=(const BigReal& o) {
        bump(o);
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigReal& operator*=(const BigReal& o) {
        bump(o);
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigReal& operator/=(const BigReal& o) {
        bump(o);
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }

    friend int compare(const BigReal& a, const BigReal& b) {
        return mpfr_cmp(a.v_, b.v_);
    }
    friend bool operator<(const BigReal& a, const BigReal& b) {
        return compare(a, b) < 0;
    }
    friend bool operator>(const BigReal& a, const BigReal& b) {
        return compare(a, b) > 0;
    }
    friend bool operator<=(const BigReal& a, const BigReal& b) {
        return compare(a, b) <= 0;
    }
    friend bool operator>=(const BigReal& a, const BigReal& b) {
        return compare(a, b) >= 0;
    }
    friend bool operator==(const BigReal& a, const BigReal& b) {
        return mpfr_equal_p(a.v_, b.v_) != 0;
    }

    // -- functions -------------------------------------------------------

    friend BigReal abs(const BigReal& a) {
        BigReal r(same(a));
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal sqrt(const BigReal& a) {
        BigReal r(same(a));
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal exp(const BigReal& a) {
        BigReal r(same(a));
        mpfr_exp(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal log(const BigReal& a) {
        BigReal r(same(a));
        mpfr_log(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal log1p(const BigReal& a) {
        BigReal r(same(a));
        mpfr_log1p(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal cosh(const BigReal& a) {
        BigReal r(same(a));
        mpfr_cosh(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal sinh(const BigReal& a) {
        BigReal r(same(a));
        mpfr_sinh(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    /// Gamma function; MPFR handles negative non-integer arguments.
    friend BigReal tgamma(const BigReal& a) {
        BigReal r(same(a));
        mpfr_gamma(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal pow(const BigReal& a, const BigReal& b) {
        BigReal r(combined(a, b));
        mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    static BigReal pi(unsigned digits10) {
        BigReal r(0.0, digits10);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

  private:
    struct raw_prec {
        mpfr_prec_t bits;
    };
    explicit BigReal(raw_prec p) { mpfr_init2(v_, p.bits); }
    static raw_prec same(const BigReal& a) {
        return raw_prec{mpfr_get_prec(a.v_)};
    }
    static raw_prec combined(const BigReal& a, const BigReal& b) {
        return raw_prec{std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_))};
    }
    void bump(const BigReal& o) {
        if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) {
            mpfr_t tmp;
            mpfr_init2(tmp, mpfr_get_prec(o.v_));
            mpfr_set(tmp, v_, MPFR_RNDN);
            mpfr_swap(tmp, v_);
            mpfr_clear(tmp);
        }
    }

    mpfr_t v_;
};

} // namespace kummer
