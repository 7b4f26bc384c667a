#pragma once

#include "tracelab/moebius.hpp"

namespace tracelab {

/// Boundary data for Y(x, y, 0)-style pieces. Trace 2 encodes a cusp
/// (boundary length 0). x_elliptic marks a degenerate piece whose first
/// "boundary" is an elliptic fixed point, trace in [0, 2).
struct YPieceSpec {
    TraceValue tx, ty, tz;
    bool x_elliptic = false;
};

inline YPieceSpec make_ypiece(TraceValue tx, TraceValue ty, TraceValue tz, bool x_elliptic = false) {
    if (tx.is_rational()) {
        if (x_elliptic) {
            if (cmp(tx.rat(), 2) >= 0)
                throw InvalidYPiece("elliptic boundary needs trace in [0, 2), got " + tx.str());
        } else if (cmp(tx.rat(), 2) < 0) {
            throw InvalidYPiece("boundary trace below 2 (pass the elliptic flag for degenerate pieces): " + tx.str());
        }
    }
    if (ty.is_rational() && cmp(ty.rat(), 2) < 0)
        throw InvalidYPiece("second boundary trace must be >= 2, got " + ty.str());
    if (tz.is_rational() && cmp(tz.rat(), 2) < 0)
        throw InvalidYPiece("third boundary trace must be >= 2, got " + tz.str());
    return {std::move(tx), std::move(ty), std::move(tz), x_elliptic};
}

inline YPieceSpec make_ypiece_cusped(TraceValue tx, TraceValue ty, bool x_elliptic = false) {
    return make_ypiece(std::move(tx), std::move(ty), TraceValue::rational(2), x_elliptic);
}

/// Two generators sharing a second row (c, d), with signed trace sums of
/// opposite sign, so that Tu * Tv^-1 is parabolic. The generated group's
/// quotient surface contains Y(u, v, 0).
struct GeneratorPair {
    MoebiusTransform tu, tv;
    int epsilon = 1;
    MoebiusTransform parabolic_product; // Tu * Tv^-1, cached
};

namespace detail {

inline GeneratorPair finish_pair(const MoebiusTransform& tu, const MoebiusTransform& tv) {
    GeneratorPair pair;
    pair.tu = tu;
    pair.tv = tv;
    int eps = sgn(tu.mat().trace_signed());
    pair.epsilon = eps == 0 ? 1 : eps;
    pair.parabolic_product = compose(tu, invert(tv));
    return pair;
}

} // namespace detail

/// Canonical generators for Y(u, v, 0) with a cusp third boundary:
/// Tu = [[tx, -1], [1, 0]], Tv = [[-ty, -1], [1, 0]] (epsilon = +1).
/// Fixing c = 1, d = 0 forces b = -1 by the determinant and makes the
/// output reproducible; Tu Tv^-1 = [[1, tx+ty], [0, 1]].
inline GeneratorPair build_generators(const YPieceSpec& spec) {
    if (!spec.tz.is_rational() || cmp(spec.tz.rat(), 2) != 0) throw UnsupportedThirdBoundary();
    if (!spec.tx.is_rational() || !spec.ty.is_rational())
        throw SymbolicInput("generator construction needs rational boundary traces");
    const Rat& tx = spec.tx.rat();
    const Rat& ty = spec.ty.rat();
    MoebiusTransform tu(tx, Rat(-1), Rat(1), Rat(0));
    MoebiusTransform tv(-ty, Rat(-1), Rat(1), Rat(0));
    return detail::finish_pair(tu, tv);
}

struct CompletionResult {
    GeneratorPair pair;
    Int shift; // the chosen power k' of [[1,1],[0,1]]
};

/// Given Tu with c != 0 in a group containing T = [[1,1],[0,1]], pick the
/// smallest |k'| (ties toward negative) with (a1+d)(a1+k'c+d) <= 0 and
/// |a1+k'c+d| >= 2, and return (Tu, Tv = T^k' Tu).
inline CompletionResult complete_to_ypiece(const MoebiusTransform& tu) {
    if (tu.c() == 0) throw UpperTriangularInput();
    const Rat s = tu.mat().trace_signed(); // a1 + d
    const Rat& c = tu.c();                 // > 0 after normalization
    // One-sided in k: for s > 0 only s + kc <= -2 qualifies, for s < 0
    // only s + kc >= 2; s = 0 qualifies both ways and ties go negative.
    Int k;
    if (sgn(s) >= 0)
        k = floor_rat((Rat(-2) - s) / c);
    else
        k = ceil_rat((Rat(2) - s) / c);
    Rat kq(k);
    Mat2 shifted{tu.a() + kq * tu.c(), tu.b() + kq * tu.d(), tu.c(), tu.d()};
    return {detail::finish_pair(tu, MoebiusTransform(shifted)), k};
}

/// Recover (tx, ty, 2) from the pair's traces.
inline YPieceSpec spec_of_pair(const GeneratorPair& pair) {
    Rat tx = trace_rat(pair.tu);
    Rat ty = trace_rat(pair.tv);
    bool elliptic = cmp(tx, 2) < 0;
    return make_ypiece_cusped(TraceValue::rational(tx), TraceValue::rational(ty), elliptic);
}

} // namespace tracelab
