#pragma once

#include <random>
#include <string>

#include "tracelab/moebius.hpp"

namespace tlt {

using tracelab::Int;
using tracelab::Mat2;
using tracelab::MoebiusTransform;
using tracelab::Rat;

/// Deterministic random rationals with numerator/denominator bounded by
/// `bound` in absolute value; denominator positive.
class RatGen {
  public:
    explicit RatGen(std::uint64_t seed, long bound = 20) : rng_(seed), bound_(bound) {}

    Rat next() {
        std::uniform_int_distribution<long> num(-bound_, bound_);
        std::uniform_int_distribution<long> den(1, bound_);
        return Rat(num(rng_)) / Rat(den(rng_));
    }

    Rat next_nonzero() {
        for (;;) {
            Rat q = next();
            if (q != 0) return q;
        }
    }

    /// Random determinant-1 matrix: pick a, c != 0, d and solve for b.
    Mat2 next_sl2() {
        Rat a = next(), c = next_nonzero(), d = next();
        Rat b = (a * d - 1) / c;
        return {a, b, c, d};
    }

    MoebiusTransform next_psl2() { return MoebiusTransform(next_sl2()); }

    MoebiusTransform next_hyperbolic() {
        for (;;) {
            Mat2 m = next_sl2();
            if (cmp(abs(m.trace_signed()), 2) > 0) return MoebiusTransform(m);
        }
    }

  private:
    std::mt19937_64 rng_;
    long bound_;
};

/// Exact complex rational x + iy, just enough for checking circle images
/// under fractional linear maps.
struct RatComplex {
    Rat re, im;

    friend RatComplex operator+(const RatComplex& a, const RatComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend RatComplex operator*(const RatComplex& a, const RatComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    RatComplex conj() const { return {re, -im}; }
    Rat norm2() const { return re * re + im * im; }
};

inline RatComplex rc(const Rat& re, const Rat& im = Rat(0)) { return {re, im}; }

/// T(z) = (az + b) / (cz + d), exactly.
inline RatComplex apply_moebius(const MoebiusTransform& t, const RatComplex& z) {
    RatComplex num = rc(t.a()) * z + rc(t.b());
    RatComplex den = rc(t.c()) * z + rc(t.d());
    Rat n2 = den.norm2();
    RatComplex prod = num * den.conj();
    return {prod.re / n2, prod.im / n2};
}

} // namespace tlt
