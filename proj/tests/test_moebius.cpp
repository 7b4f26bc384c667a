#include <catch2/catch.hpp>

#include "helpers.hpp"
#include "tracelab/moebius.hpp"

using namespace tracelab;
using tlt::RatGen;

namespace {
MoebiusTransform mt(long a, long b, long c, long d) {
    return MoebiusTransform(Rat(a), Rat(b), Rat(c), Rat(d));
}
} // namespace

TEST_CASE("determinant is validated and signs are canonicalized") {
    CHECK_THROWS_AS(mt(1, 0, 0, 2), BadInput);
    // -I normalizes to I
    MoebiusTransform neg(Rat(-1), Rat(0), Rat(0), Rat(-1));
    CHECK(neg.is_identity());
    // c < 0 flips
    MoebiusTransform m(Rat(-2), Rat(3), Rat(1), Rat(-2));
    CHECK(m.c() > 0);
    CHECK(MoebiusTransform(Rat(2), Rat(-3), Rat(-1), Rat(2)) == m);
}

TEST_CASE("trace of PSL representatives") {
    CHECK(trace_rat(mt(1, 1, 0, 1)) == 2);
    CHECK(trace_rat(mt(3, -1, 1, 0)) == 3);
    CHECK(trace_rat(mt(0, -1, 1, 0)) == 0);
}

TEST_CASE("classification by trace") {
    CHECK(classify(mt(1, 1, 0, 1)) == ElementType::Parabolic);
    CHECK(classify(mt(3, -1, 1, 0)) == ElementType::Hyperbolic);
    CHECK(classify(mt(0, -1, 1, 0)) == ElementType::Elliptic);
    CHECK(classify(MoebiusTransform::identity()) == ElementType::Identity);
    CHECK(classify(MoebiusTransform(Rat(-1), Rat(0), Rat(0), Rat(-1))) == ElementType::Identity);
}

TEST_CASE("isometric circles") {
    Circle c1 = isometric_circle(mt(0, -1, 1, 0));
    CHECK(c1.center_x == 0);
    CHECK(c1.radius_sq == 1);
    Circle c2 = isometric_circle(mt(3, -1, 1, 0));
    CHECK(c2.center_x == 0);
    CHECK(c2.radius_sq == 1);
    Circle c3 = isometric_circle(mt(2, 3, 1, 2));
    CHECK(c3.center_x == -2);
    CHECK(c3.radius_sq == 1);
    CHECK_THROWS_AS(isometric_circle(mt(1, 1, 0, 1)), DegenerateIsometricCircle);
}

TEST_CASE("axis circles of hyperbolic elements") {
    Circle a1 = axis_circle(mt(3, -1, 1, 0));
    CHECK(a1.center_x == Rat(3, 2));
    CHECK(a1.radius_sq == Rat(5, 4));
    Circle a2 = axis_circle(mt(2, 1, 1, 1));
    CHECK(a2.center_x == Rat(1, 2));
    CHECK(a2.radius_sq == Rat(5, 4));
    CHECK_THROWS_AS(axis_circle(mt(1, 1, 0, 1)), NotHyperbolic);
    CHECK_THROWS_AS(axis_circle(mt(0, -1, 1, 0)), NotHyperbolic);
    // hyperbolic but upper triangular: vertical axis is reported, not modeled
    CHECK_THROWS_AS(axis_circle(MoebiusTransform(Rat(2), Rat(0), Rat(0), Rat(1, 2))), DegenerateAxis);
}

TEST_CASE("axis meets isometric circle orthogonally, exactly") {
    CHECK(axis_orthogonal_to_isometric_circle(mt(3, -1, 1, 0)));
    CHECK(axis_orthogonal_to_isometric_circle(mt(2, 1, 1, 1)));
    CHECK(axis_orthogonal_to_isometric_circle(mt(5, 2, 2, 1)));
    CHECK_THROWS_AS(axis_orthogonal_to_isometric_circle(mt(1, 1, 0, 1)), NotHyperbolic);

    RatGen gen(0xA11CE, 30);
    for (int i = 0; i < 300; ++i) {
        MoebiusTransform t = gen.next_hyperbolic();
        CHECK(axis_orthogonal_to_isometric_circle(t));
    }
}

TEST_CASE("axes_disjoint takes signed representatives") {
    Mat2 t1{Rat(3), Rat(-1), Rat(1), Rat(0)};
    Mat2 t2{Rat(-3), Rat(-1), Rat(1), Rat(0)};
    CHECK(axes_disjoint(t1, t2, Rat(1)));
    Mat2 t3{Rat(4), Rat(-1), Rat(1), Rat(0)};
    CHECK_FALSE(axes_disjoint(t1, t3, Rat(1)));
    // proportional second row with lambda = 2 (raw entries, no det check)
    Mat2 t4{Rat(-5), Rat(-1), Rat(2), Rat(0)};
    CHECK(axes_disjoint(t1, t4, Rat(2)));
    CHECK_THROWS_AS(axes_disjoint(t1, t4, Rat(1)), StructureMismatch);
    CHECK_THROWS_AS(axes_disjoint(t1, t2, Rat(-1)), BadInput);
    Mat2 par{Rat(1), Rat(1), Rat(0), Rat(1)};
    CHECK_THROWS_AS(axes_disjoint(par, par, Rat(1)), BadInput);
    Mat2 ell{Rat(0), Rat(-1), Rat(1), Rat(0)};
    CHECK_THROWS_AS(axes_disjoint(ell, t2, Rat(1)), NotHyperbolic);
}

TEST_CASE("compose, invert, conjugate") {
    CHECK(compose(mt(1, 1, 0, 1), mt(1, -1, 0, 1)).is_identity());
    MoebiusTransform inv = invert(mt(2, 3, 1, 2));
    // adjugate [[2,-3],[-1,2]] normalizes to [[-2,3],[1,-2]]
    CHECK(inv == MoebiusTransform(Rat(-2), Rat(3), Rat(1), Rat(-2)));
    CHECK(compose(mt(2, 3, 1, 2), inv).is_identity());
    MoebiusTransform t = mt(3, -1, 1, 0);
    CHECK(conjugate(t, MoebiusTransform::identity()) == t);

    RatGen gen(0xBEEF, 15);
    for (int i = 0; i < 200; ++i) {
        MoebiusTransform a = gen.next_psl2();
        MoebiusTransform r = gen.next_psl2();
        // det preserved exactly by every operation
        CHECK(compose(a, r).mat().det() == 1);
        CHECK(invert(a).mat().det() == 1);
        MoebiusTransform c = conjugate(a, r);
        CHECK(c.mat().det() == 1);
        // trace is a conjugation invariant
        CHECK(trace_rat(c) == trace_rat(a));
    }
}

TEST_CASE("I(T) and I(T^-1) share a radius; T maps I(T) onto I(T^-1)") {
    RatGen gen(0xC0FFEE, 12);
    int checked = 0;
    for (int i = 0; checked < 120; ++i) {
        MoebiusTransform t = gen.next_psl2();
        if (t.c() == 0) continue;
        ++checked;
        MoebiusTransform ti = invert(t);
        Circle it = isometric_circle(t);
        Circle iti = isometric_circle(ti);
        CHECK(it.radius_sq == iti.radius_sq);
        // three exact boundary points of I(T): center +/- r and center + i r
        Rat r = Rat(1) / t.c(); // radius (c > 0 after normalization)
        std::vector<tlt::RatComplex> pts = {
            tlt::rc(it.center_x + r), tlt::rc(it.center_x - r), {it.center_x, r}};
        for (const auto& z : pts) {
            tlt::RatComplex w = tlt::apply_moebius(t, z);
            // w must satisfy |c' w + d'| = 1 for T^-1 = [[a',b'],[c',d']]
            tlt::RatComplex lhs = tlt::rc(ti.c()) * w + tlt::rc(ti.d());
            CHECK(lhs.norm2() == 1);
        }
    }
}

TEST_CASE("squaring identity tr(T^2) = tr(T)^2 - 2 for tr >= 2") {
    RatGen gen(0xD00D, 10);
    int checked = 0;
    for (int i = 0; checked < 150; ++i) {
        MoebiusTransform t = gen.next_psl2();
        Rat tr = trace_rat(t);
        if (cmp(tr, 2) < 0) continue;
        ++checked;
        CHECK(trace_rat(compose(t, t)) == tr * tr - 2);
    }
}

TEST_CASE("trace/length conversions") {
    BigFloat zero = trace_to_length(TraceValue::rational(Rat(2)));
    CHECK(abs(zero) < BigFloat::of(1e-70));
    CHECK(length_to_trace(BigFloat::of(0L)).cmp_rat(Rat(2)) == 0);
    CHECK_THROWS_AS(trace_to_length(TraceValue::rational(Rat(3, 2))), TraceBelowTwo);
    CHECK_THROWS_AS(length_to_trace(BigFloat::of(-1L)), BadInput);

    // independent libm cross-check at double precision
    BigFloat len = trace_to_length(TraceValue::rational(Rat(3)));
    CHECK(std::abs(len.to_double() - 2 * std::acosh(1.5)) < 1e-12);
    CHECK(len.to_double() == Approx(1.9248473002384139).epsilon(1e-12));

    // round trip well below 2^-(prec-8)
    for (long t : {2, 3, 7, 1000}) {
        BigFloat back = length_to_trace(trace_to_length(TraceValue::rational(Rat(t))));
        BigFloat rel = abs(back - BigFloat::of(t)) / BigFloat::of(t);
        mpfr_t tol;
        mpfr_init2(tol, 64);
        mpfr_set_ui_2exp(tol, 1, -(256 - 8), MPFR_RNDN);
        CHECK(mpfr_cmp(rel.raw(), tol) < 0);
        mpfr_clear(tol);
    }
}
