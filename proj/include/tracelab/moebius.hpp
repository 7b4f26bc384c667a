#pragma once

#include <string>

#include "tracelab/errors.hpp"
#include "tracelab/trace_value.hpp"

namespace tracelab {

/// Raw 2x2 matrix with exact rational entries. Carries the *signed*
/// representative of an element of SL(2,R) / PSL(2,R); no sign
/// canonicalization is applied. Used wherever a predicate depends on
/// the choice of sign (the disjointness predicate takes these).
struct Mat2 {
    Rat a, b, c, d;

    Rat det() const { return a * d - b * c; }
    Rat trace_signed() const { return a + d; }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    /// Inverse assuming det = 1 (the adjugate).
    Mat2 inverse() const { return {d, -b, -c, a}; }

    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
};

/// Normalized representative of an element of PSL(2,R): det = 1 exactly
/// and c > 0, or c = 0 and d > 0. Equality of group elements is then
/// plain entry equality.
class MoebiusTransform {
  public:
    MoebiusTransform() : m_{1, 0, 0, 1} {}
    MoebiusTransform(Rat a, Rat b, Rat c, Rat d) : m_{std::move(a), std::move(b), std::move(c), std::move(d)} {
        normalize();
    }
    explicit MoebiusTransform(Mat2 m) : m_(std::move(m)) { normalize(); }

    static MoebiusTransform identity() { return {}; }

    const Rat& a() const { return m_.a; }
    const Rat& b() const { return m_.b; }
    const Rat& c() const { return m_.c; }
    const Rat& d() const { return m_.d; }
    const Mat2& mat() const { return m_; }

    bool is_identity() const { return m_.a == 1 && m_.b == 0 && m_.c == 0 && m_.d == 1; }

    friend bool operator==(const MoebiusTransform& x, const MoebiusTransform& y) {
        return x.m_ == y.m_;
    }

    std::string str() const {
        return "[[" + rat_string(m_.a) + ", " + rat_string(m_.b) + "], [" + rat_string(m_.c) +
               ", " + rat_string(m_.d) + "]]";
    }

  private:
    void normalize() {
        if (m_.det() != 1) throw BadInput("matrix must have determinant 1, got " + rat_string(m_.det()));
        int cs = sgn(m_.c);
        if (cs < 0 || (cs == 0 && sgn(m_.d) < 0)) {
            m_.a = -m_.a;
            m_.b = -m_.b;
            m_.c = -m_.c;
            m_.d = -m_.d;
        }
    }

    Mat2 m_;
};

enum class ElementType { Hyperbolic, Parabolic, Elliptic, Identity };

inline const char* element_type_name(ElementType t) {
    switch (t) {
        case ElementType::Hyperbolic: return "hyperbolic";
        case ElementType::Parabolic: return "parabolic";
        case ElementType::Elliptic: return "elliptic";
        default: return "identity";
    }
}

/// Euclidean circle centered on the real axis; radius kept squared so
/// everything stays rational.
struct Circle {
    Rat center_x;
    Rat radius_sq;
};

inline Circle make_circle(Rat center_x, Rat radius_sq) {
    if (sgn(radius_sq) <= 0) throw BadInput("circle needs radius_sq > 0");
    return {std::move(center_x), std::move(radius_sq)};
}

/// tr(T) = |a + d|, as an exact rational.
inline Rat trace_rat(const MoebiusTransform& t) {
    return abs(t.a() + t.d());
}

inline TraceValue trace(const MoebiusTransform& t) {
    return TraceValue::rational(trace_rat(t));
}

inline ElementType classify(const MoebiusTransform& t) {
    if (t.is_identity()) return ElementType::Identity;
    int c = cmp(trace_rat(t), 2);
    if (c > 0) return ElementType::Hyperbolic;
    if (c == 0) return ElementType::Parabolic;
    return ElementType::Elliptic;
}

/// I(T): center -d/c, radius 1/|c|; the locus where T acts as a
/// Euclidean isometry. Undefined for c = 0.
inline Circle isometric_circle(const MoebiusTransform& t) {
    if (t.c() == 0) throw DegenerateIsometricCircle();
    Rat c2 = t.c() * t.c();
    return make_circle(-t.d() / t.c(), Rat(1) / c2);
}

/// C(T) as a Euclidean circle: center (a-d)/(2c), radius^2 = ((a+d)^2-4)/(4c^2).
inline Circle axis_circle(const MoebiusTransform& t) {
    if (classify(t) != ElementType::Hyperbolic) throw NotHyperbolic();
    if (t.c() == 0) throw DegenerateAxis();
    Rat s = t.a() + t.d();
    Rat c2 = t.c() * t.c();
    return make_circle((t.a() - t.d()) / (2 * t.c()), (s * s - 4) / (4 * c2));
}

/// |MN|^2 = r1^2 + r2^2 for the centers/radii of I(T) and C(T); holds
/// identically for hyperbolic T with c != 0, and is checked exactly.
inline bool axis_orthogonal_to_isometric_circle(const MoebiusTransform& t) {
    if (classify(t) != ElementType::Hyperbolic) throw NotHyperbolic();
    Circle i = isometric_circle(t);
    Circle ax = axis_circle(t);
    Rat mn = ax.center_x - i.center_x;
    return mn * mn == i.radius_sq + ax.radius_sq;
}

/// Disjointness certificate for axes of T1 = [[a1,b1],[c,d]] and
/// T2 = [[a2,b2],[lambda*c,lambda*d]]: true when (a1+d)(a2+lambda*d) < 0.
/// Takes raw signed matrices: the sign of a trace sum is not a PSL
/// invariant, so callers must pass the representatives they mean.
inline bool axes_disjoint(const Mat2& t1, const Mat2& t2, const Rat& lambda) {
    if (sgn(lambda) <= 0) throw BadInput("lambda must be positive");
    if (t1.c == 0) throw BadInput("axes_disjoint requires c != 0");
    if (t2.c != lambda * t1.c || t2.d != lambda * t1.d) throw StructureMismatch();
    if (abs(t1.trace_signed()) <= 2 || abs(t2.trace_signed()) <= 2) throw NotHyperbolic();
    // t2.d equals lambda*d, so (a2 + lambda*d) is t2's signed trace.
    return sgn(t1.trace_signed()) * sgn(t2.trace_signed()) < 0;
}

inline MoebiusTransform compose(const MoebiusTransform& x, const MoebiusTransform& y) {
    return MoebiusTransform(x.mat() * y.mat());
}

inline MoebiusTransform invert(const MoebiusTransform& t) {
    return MoebiusTransform(t.mat().inverse());
}

/// R T R^-1.
inline MoebiusTransform conjugate(const MoebiusTransform& t, const MoebiusTransform& r) {
    return MoebiusTransform(r.mat() * t.mat() * r.mat().inverse());
}

/// L = 2 arccosh(t/2): geodesic length from trace. Requires t >= 2.
inline BigFloat trace_to_length(const TraceValue& t, mpfr_prec_t prec = BigFloat::default_precision()) {
    BigFloat tf(prec);
    if (t.is_rational()) {
        if (cmp(t.rat(), 2) < 0) throw TraceBelowTwo();
        tf = BigFloat::of(t.rat(), prec);
    } else if (t.is_float()) {
        if (t.flt().cmp_rat(Rat(2)) < 0) throw TraceBelowTwo();
        tf = t.flt();
    } else {
        throw SymbolicInput("cannot take the length of a symbolic trace");
    }
    return BigFloat::of(2L, prec) * acosh(tf / BigFloat::of(2L, prec));
}

/// t = 2 cosh(L/2). Requires L >= 0.
inline BigFloat length_to_trace(const BigFloat& len) {
    if (len.sign() < 0 || len.is_nan()) throw BadInput("length must be non-negative");
    BigFloat two = BigFloat::of(2L, len.prec());
    return two * cosh(len / two);
}

} // namespace tracelab
