#pragma once

#include <string>
#include <variant>

#include "tracelab/bigfloat.hpp"
#include "tracelab/errors.hpp"
#include "tracelab/poly.hpp"
#include "tracelab/rational.hpp"

namespace tracelab {

/// A trace, in one of three representations:
///  - exact non-negative rational,
///  - integer polynomial in an indeterminate z (symbolic families),
///  - arbitrary-precision float (geometric/limit computations only).
class TraceValue {
  public:
    enum class Kind { Rational, Symbolic, Float };

    static TraceValue rational(Rat q) {
        if (sgn(q) < 0) throw BadInput("trace values are non-negative");
        return TraceValue(std::move(q));
    }
    static TraceValue rational(long q) { return rational(Rat(q)); }
    static TraceValue symbolic(IntPoly p) { return TraceValue(std::move(p)); }
    static TraceValue floating(BigFloat f) {
        if (f.is_nan() || f.sign() < 0) throw BadInput("trace values are non-negative");
        return TraceValue(std::move(f));
    }

    Kind kind() const { return static_cast<Kind>(v_.index()); }
    bool is_rational() const { return kind() == Kind::Rational; }
    bool is_symbolic() const { return kind() == Kind::Symbolic; }
    bool is_float() const { return kind() == Kind::Float; }
    /// Rational or symbolic, i.e. usable in exact rule arithmetic.
    bool is_exact() const { return !is_float(); }

    const Rat& rat() const {
        if (!is_rational()) throw SymbolicInput("expected an exact rational trace");
        return std::get<Rat>(v_);
    }
    const IntPoly& poly() const {
        if (!is_symbolic()) throw BadInput("expected a symbolic trace");
        return std::get<IntPoly>(v_);
    }
    const BigFloat& flt() const {
        if (!is_float()) throw BadInput("expected a float trace");
        return std::get<BigFloat>(v_);
    }

    /// Promote to a polynomial; only integral rationals embed into Z[z].
    IntPoly as_poly() const {
        if (is_symbolic()) return poly();
        if (is_rational()) {
            const Rat& q = rat();
            if (!is_integer(q))
                throw SymbolicInput("cannot mix non-integer rationals with symbolic traces");
            return IntPoly::constant(q.get_num());
        }
        throw BadInput("float traces have no exact form");
    }

    friend bool operator==(const TraceValue& a, const TraceValue& b) { return a.v_ == b.v_; }

    std::string str() const {
        switch (kind()) {
            case Kind::Rational: return rat_string(rat());
            case Kind::Symbolic: return poly().str();
            default: return flt().str();
        }
    }

  private:
    explicit TraceValue(Rat q) : v_(std::move(q)) {}
    explicit TraceValue(IntPoly p) : v_(std::move(p)) {}
    explicit TraceValue(BigFloat f) : v_(std::move(f)) {}

    std::variant<Rat, IntPoly, BigFloat> v_;
};

} // namespace tracelab
