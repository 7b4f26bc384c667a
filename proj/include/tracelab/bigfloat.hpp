#pragma once

#include <mpfr.h>

#include <atomic>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "tracelab/rational.hpp"

namespace tracelab {

/// Arbitrary-precision binary float, a thin RAII wrapper over mpfr_t.
/// Default precision is 256 bits; binary operations widen to the larger
/// operand precision. Comparisons are on the stored values, exact.
class BigFloat {
  public:
    static mpfr_prec_t default_precision() { return default_prec_.load(); }
    static void set_default_precision(mpfr_prec_t p) {
        // 16 bits is already useless for the geometry here; treat anything
        // below it (or absurdly large) as a configuration mistake.
        if (p < 16 || p > 1'000'000) throw BadInput("unreasonable precision: " + std::to_string(p));
        default_prec_.store(p);
    }

    BigFloat() : BigFloat(default_precision()) {}
    explicit BigFloat(mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(BigFloat o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat of(double x, mpfr_prec_t prec = default_precision()) {
        BigFloat r(prec);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }
    static BigFloat of(long x, mpfr_prec_t prec = default_precision()) {
        BigFloat r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static BigFloat of(const Int& x, mpfr_prec_t prec = default_precision()) {
        BigFloat r(prec);
        mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static BigFloat of(const Rat& x, mpfr_prec_t prec = default_precision()) {
        BigFloat r(prec);
        mpfr_set_q(r.v_, x.get_mpq_t(), MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    std::string str(int digits = 30) const {
        char buf[2048];
        mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, v_);
        return buf;
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return binop(mpfr_add, a, b); }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return binop(mpfr_sub, a, b); }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return binop(mpfr_mul, a, b); }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return binop(mpfr_div, a, b); }
    BigFloat operator-() const {
        BigFloat r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    int cmp_rat(const Rat& q) const { return mpfr_cmp_q(v_, q.get_mpq_t()); }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    friend BigFloat abs(const BigFloat& a) { return unop(mpfr_abs, a); }
    friend BigFloat sqrt(const BigFloat& a) { return unop(mpfr_sqrt, a); }
    friend BigFloat log(const BigFloat& a) { return unop(mpfr_log, a); }
    friend BigFloat cosh(const BigFloat& a) { return unop(mpfr_cosh, a); }
    friend BigFloat sinh(const BigFloat& a) { return unop(mpfr_sinh, a); }
    friend BigFloat acosh(const BigFloat& a) { return unop(mpfr_acosh, a); }

  private:
    using unfn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
    using binfn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

    static BigFloat unop(unfn f, const BigFloat& a) {
        BigFloat r(a.prec());
        f(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat binop(binfn f, const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    static inline std::atomic<mpfr_prec_t> default_prec_{256};

    mpfr_t v_;
};

} // namespace tracelab
