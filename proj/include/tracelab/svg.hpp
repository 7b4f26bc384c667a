#pragma once

#include <sstream>
#include <vector>

#include "tracelab/bigfloat.hpp"
#include "tracelab/moebius.hpp"

namespace tracelab {

// Raw circle emission for upper-half-plane figures: every circle is
// centered on the real axis (cy = 0) and the viewBox flips y upward.

struct LabeledCircle {
    std::string label;
    Circle circle;
};

namespace detail {

inline std::string fixed_decimal(const BigFloat& x, int digits = 9) {
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "%.*Rf", digits, x.raw());
    return buf;
}

} // namespace detail

inline std::string svg_circles(const std::vector<LabeledCircle>& circles) {
    // Bounding box over centers +/- radii.
    BigFloat lo = BigFloat::of(0L), hi = BigFloat::of(0L), rmax = BigFloat::of(0L);
    bool first = true;
    std::ostringstream body;
    for (const auto& lc : circles) {
        BigFloat cx = BigFloat::of(lc.circle.center_x);
        BigFloat r = sqrt(BigFloat::of(lc.circle.radius_sq));
        if (first || cx - r < lo) lo = cx - r;
        if (first || cx + r > hi) hi = cx + r;
        if (first || r > rmax) rmax = r;
        first = false;
        body << "  <circle class=\"" << lc.label << "\" cx=\"" << detail::fixed_decimal(cx)
             << "\" cy=\"0\" r=\"" << detail::fixed_decimal(r)
             << "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.02\"/>\n";
    }
    if (first) {
        lo = BigFloat::of(-1L);
        hi = BigFloat::of(1L);
        rmax = BigFloat::of(1L);
    }
    BigFloat margin = (hi - lo) * BigFloat::of(0.05) + BigFloat::of(0.1);
    BigFloat x0 = lo - margin;
    BigFloat width = hi - lo + margin + margin;
    BigFloat y0 = -(rmax + margin);
    BigFloat height = (rmax + margin) * BigFloat::of(2L);

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << detail::fixed_decimal(x0)
        << " " << detail::fixed_decimal(y0) << " " << detail::fixed_decimal(width) << " "
        << detail::fixed_decimal(height) << "\">\n";
    // y axis up: flip, so the upper half plane is drawn above the real line.
    out << " <g transform=\"scale(1,-1)\">\n";
    out << "  <line x1=\"" << detail::fixed_decimal(x0) << "\" y1=\"0\" x2=\""
        << detail::fixed_decimal(x0 + width) << "\" y2=\"0\" stroke=\"gray\" stroke-width=\"0.01\"/>\n";
    out << body.str();
    out << " </g>\n</svg>\n";
    return out.str();
}

/// The figure circles for a generator pair: I(Tu), I(Tu^-1), and the axes
/// of whichever generators are hyperbolic.
inline std::vector<LabeledCircle> pair_figure(const MoebiusTransform& tu, const MoebiusTransform& tv) {
    std::vector<LabeledCircle> out;
    if (tu.c() != 0) {
        out.push_back({"isometric-tu", isometric_circle(tu)});
        out.push_back({"isometric-tu-inverse", isometric_circle(invert(tu))});
    }
    if (classify(tu) == ElementType::Hyperbolic && tu.c() != 0)
        out.push_back({"axis-tu", axis_circle(tu)});
    if (classify(tv) == ElementType::Hyperbolic && tv.c() != 0)
        out.push_back({"axis-tv", axis_circle(tv)});
    return out;
}

} // namespace tracelab
