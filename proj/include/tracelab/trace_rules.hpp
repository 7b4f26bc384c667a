#pragma once

#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <vector>

#include "tracelab/ypiece.hpp"

namespace tracelab {

// The containment rules for cusped Y-pieces, as trace arithmetic:
//   NU_N:      Y(x,y,0) -> Y(nu_n, y, 0),        tr nu_n = n(tx+ty) - ty
//   LAMBDA_MU: Y(x,0,0) -> Y(lambda_k, mu_m, 0), k(tx+2)+2 and m(tx+2)-2
//   DOUBLE_Y:  Y(x,y,0) -> Y(nu, 2y, 0),         tr nu = 2 + tx*ty
//   COLLAPSE:  Y(x,y,0) -> Y(nu, 0, 0),          tr nu = (tx+ty)^2 - 2
// All four are exact on rational and symbolic inputs.

enum class TraceRule { NuN, LambdaMu, DoubleY, Collapse };

inline const char* trace_rule_name(TraceRule r) {
    switch (r) {
        case TraceRule::NuN: return "nu";
        case TraceRule::LambdaMu: return "lambda_mu";
        case TraceRule::DoubleY: return "double_y";
        default: return "collapse";
    }
}

struct TraceRuleApplication {
    TraceRule rule;
    std::vector<Int> params;
    TraceValue in_tx, in_ty;
    YPieceSpec output;
};

namespace detail {

inline void require_exact(const TraceValue& t, const char* who) {
    if (!t.is_exact()) throw BadInput(std::string(who) + " requires rational or symbolic traces");
}

inline void require_at_least_two(const TraceValue& t, const char* who) {
    if (t.is_rational() && cmp(t.rat(), 2) < 0)
        throw BadInput(std::string(who) + ": trace must be >= 2, got " + t.str());
}

// Exact tx + ty, tx * ty and friends, promoting integral rationals into
// Z[z] when one side is symbolic.
inline TraceValue tv_add(const TraceValue& a, const TraceValue& b) {
    if (a.is_rational() && b.is_rational()) return TraceValue::rational(Rat(a.rat() + b.rat()));
    return TraceValue::symbolic(a.as_poly() + b.as_poly());
}

inline TraceValue tv_mul(const TraceValue& a, const TraceValue& b) {
    if (a.is_rational() && b.is_rational()) return TraceValue::rational(Rat(a.rat() * b.rat()));
    return TraceValue::symbolic(a.as_poly() * b.as_poly());
}

inline TraceValue tv_affine(const Int& scale, const TraceValue& t, const Int& offset) {
    // scale * t + offset
    if (t.is_rational()) return TraceValue::rational(Rat(Rat(scale) * t.rat() + Rat(offset)));
    return TraceValue::symbolic(scale * t.poly() + IntPoly::constant(offset));
}

inline bool rational_elliptic(const TraceValue& t) {
    return t.is_rational() && cmp(t.rat(), 2) < 0;
}

} // namespace detail

/// Y(nu_n, y, 0) with tr(nu_n) = n(tx + ty) - ty. Degenerate-elliptic tx
/// is allowed; ty must be a genuine boundary (>= 2).
inline YPieceSpec rule_nu_n(const TraceValue& tx, const TraceValue& ty, const Int& n) {
    if (n < 1) throw BadInput("rule_nu_n: n must be >= 1");
    detail::require_exact(tx, "rule_nu_n");
    detail::require_exact(ty, "rule_nu_n");
    detail::require_at_least_two(ty, "rule_nu_n (y boundary)");
    TraceValue nu = [&] {
        if (tx.is_rational() && ty.is_rational())
            return TraceValue::rational(Rat(Rat(n) * (tx.rat() + ty.rat()) - ty.rat()));
        return TraceValue::symbolic(n * (tx.as_poly() + ty.as_poly()) - ty.as_poly());
    }();
    return make_ypiece_cusped(nu, ty, detail::rational_elliptic(nu));
}

/// Y(lambda_k, mu_m, 0) inside Y(x,0,0): k(tx+2)+2 and m(tx+2)-2.
inline YPieceSpec rule_lambda_mu(const TraceValue& tx, const Int& k, const Int& m) {
    if (k < 1 || m < 1) throw BadInput("rule_lambda_mu: k and m must be >= 1");
    detail::require_exact(tx, "rule_lambda_mu");
    detail::require_at_least_two(tx, "rule_lambda_mu");
    TraceValue base = detail::tv_affine(1, tx, 2); // tx + 2
    TraceValue lambda = detail::tv_affine(k, base, 2);
    TraceValue mu = detail::tv_affine(m, base, -2);
    return make_ypiece_cusped(lambda, mu);
}

/// Y(nu, 2y, 0) inside Y(x,y,0): tr nu = 2 + tx*ty. The doubled boundary
/// is stored as its trace, 2cosh(y) = ty^2 - 2.
inline YPieceSpec rule_double_y(const TraceValue& tx, const TraceValue& ty) {
    detail::require_exact(tx, "rule_double_y");
    detail::require_exact(ty, "rule_double_y");
    detail::require_at_least_two(tx, "rule_double_y");
    detail::require_at_least_two(ty, "rule_double_y");
    TraceValue nu = detail::tv_affine(1, detail::tv_mul(tx, ty), 2);
    TraceValue doubled = detail::tv_affine(1, detail::tv_mul(ty, ty), -2);
    return make_ypiece_cusped(nu, doubled);
}

/// Y(nu, 0, 0) inside Y(x,y,0): tr nu = (tx+ty)^2 - 2.
inline YPieceSpec rule_collapse(const TraceValue& tx, const TraceValue& ty) {
    detail::require_exact(tx, "rule_collapse");
    detail::require_exact(ty, "rule_collapse");
    detail::require_at_least_two(tx, "rule_collapse");
    detail::require_at_least_two(ty, "rule_collapse");
    TraceValue sum = detail::tv_add(tx, ty);
    TraceValue nu = detail::tv_affine(1, detail::tv_mul(sum, sum), -2);
    return make_ypiece_cusped(nu, TraceValue::rational(2));
}

/// Uniform dispatch over the four rules, recording inputs, parameters and
/// the produced Y-piece in one application record.
inline TraceRuleApplication apply_rule(TraceRule rule, const std::vector<Int>& params,
                                       const TraceValue& tx, const TraceValue& ty) {
    auto need = [&](std::size_t n) {
        if (params.size() != n)
            throw BadInput(std::string(trace_rule_name(rule)) + " takes " + std::to_string(n) +
                           " parameter(s)");
    };
    switch (rule) {
        case TraceRule::NuN:
            need(1);
            return {rule, params, tx, ty, rule_nu_n(tx, ty, params[0])};
        case TraceRule::LambdaMu:
            need(2);
            if (!ty.is_rational() || cmp(ty.rat(), 2) != 0)
                throw BadInput("lambda_mu applies to Y(x,0,0): second boundary must be a cusp");
            return {rule, params, tx, ty, rule_lambda_mu(tx, params[0], params[1])};
        case TraceRule::DoubleY:
            need(0);
            return {rule, params, tx, ty, rule_double_y(tx, ty)};
        default:
            need(0);
            return {rule, params, tx, ty, rule_collapse(tx, ty)};
    }
}

struct GeneratedTrace {
    Rat value;
    std::string rule_chain; // first derivation found, in BFS order
};

struct TraceSetResult {
    std::vector<GeneratedTrace> traces; // sorted by value, duplicate free
    bool truncated = false;             // budget stopped a still-growing frontier
};

/// Breadth-first closure of the four rules from a rational seed, keeping
/// boundary traces in [2, cap]. Deterministic: rules fire in the order
/// NU_N < LAMBDA_MU < DOUBLE_Y < COLLAPSE with ascending parameters, and
/// the output is sorted. A trace collected at depth d needed d rule
/// applications; budget bounds that depth. max_nodes guards the frontier
/// itself (combinatorial blowups at deep budgets surface as BudgetError,
/// distinct from the informational truncation flag).
inline TraceSetResult generate_trace_set(const YPieceSpec& seed, const Rat& cap, int budget,
                                         long long max_nodes = 1'000'000) {
    if (cmp(cap, 2) < 0) throw BadInput("trace cap must be >= 2");
    if (budget < 0) throw BadInput("rule budget must be >= 0");
    if (!seed.tx.is_rational() || !seed.ty.is_rational() || !seed.tz.is_rational())
        throw SymbolicInput("trace-set generation needs a rational seed");
    if (cmp(seed.tz.rat(), 2) != 0) throw UnsupportedThirdBoundary();

    struct Node {
        Rat tx, ty;
        int depth;
        std::string chain;
    };
    using Key = std::pair<Rat, Rat>;
    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const {
            int c = cmp(a.first, b.first);
            if (c != 0) return c < 0;
            return cmp(a.second, b.second) < 0;
        }
    };

    std::map<Rat, std::string, RatLess> collected;
    auto collect = [&](const Rat& v, const std::string& chain) {
        if (cmp(v, 2) >= 0 && cmp(v, cap) <= 0) collected.try_emplace(v, chain);
    };

    struct Child {
        Rat tx, ty;
        std::string tag;
    };
    auto expand = [&](const Node& node) {
        std::vector<Child> out;
        const Rat& tx = node.tx;
        const Rat& ty = node.ty;
        bool elliptic = cmp(tx, 2) < 0;
        Rat sum = tx + ty;
        // NU_N, n ascending while the new trace stays under the cap.
        for (Int n = 1;; ++n) {
            Rat nu = Rat(n) * sum - ty;
            if (cmp(nu, cap) > 0) break;
            out.push_back({nu, ty, "nu[n=" + n.get_str() + "]"});
        }
        if (!elliptic) {
            if (cmp(ty, 2) == 0) {
                // LAMBDA_MU on Y(x,0,0). Parameter ranges bounded by the cap
                // on each side; a single k (resp. m) is kept when only the
                // other side can stay under the cap.
                Rat base = tx + 2;
                Int kmax = floor_rat((cap - 2) / base);
                Int mmax = floor_rat((cap + 2) / base);
                if (kmax >= 1 || mmax >= 1) {
                    Int klim = kmax >= 1 ? kmax : Int(1);
                    Int mlim = mmax >= 1 ? mmax : Int(1);
                    for (Int k = 1; k <= klim; ++k)
                        for (Int m = 1; m <= mlim; ++m)
                            out.push_back({Rat(k) * base + 2, Rat(m) * base - 2,
                                           "lambda_mu[k=" + k.get_str() + ",m=" + m.get_str() + "]"});
                }
            }
            out.push_back({tx * ty + 2, ty * ty - 2, "double_y"});
            out.push_back({sum * sum - 2, Rat(2), "collapse"});
        }
        return out;
    };

    TraceSetResult result;
    std::set<Key, KeyLess> visited;
    std::deque<Node> queue;

    Node root{seed.tx.rat(), seed.ty.rat(), 0, "seed"};
    collect(root.tx, root.chain);
    collect(root.ty, root.chain);
    visited.insert({root.tx, root.ty});
    queue.push_back(std::move(root));

    long long expanded = 0;
    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();
        if (++expanded > max_nodes)
            throw BudgetError("trace-set engine expanded more than " + std::to_string(max_nodes) +
                              " specs; lower the budget or the cap");
        auto children = expand(node);
        for (auto& ch : children) {
            bool in_cap = cmp(ch.tx, cap) <= 0 || cmp(ch.ty, cap) <= 0;
            bool novel = !visited.count({ch.tx, ch.ty});
            if (node.depth >= budget) {
                // Expansion beyond the budget: only note that more was reachable.
                if (novel && in_cap) result.truncated = true;
                continue;
            }
            std::string chain = node.chain == "seed" ? ch.tag : node.chain + ";" + ch.tag;
            collect(ch.tx, chain);
            collect(ch.ty, chain);
            if (novel && in_cap) {
                visited.insert({ch.tx, ch.ty});
                queue.push_back({std::move(ch.tx), std::move(ch.ty), node.depth + 1, std::move(chain)});
            }
        }
    }

    for (auto& [v, chain] : collected) result.traces.push_back({v, chain});
    return result;
}

/// a5 = arccosh(cosh a2 sinh a1 sinh a3 - cosh a1 cosh a3), the side of a
/// convex right-angled hexagon opposite the (a1, a2, a3) run.
inline BigFloat hexagon_side(const BigFloat& a1, const BigFloat& a2, const BigFloat& a3) {
    if (a1.sign() <= 0 || a2.sign() <= 0 || a3.sign() <= 0)
        throw BadInput("hexagon sides must be positive");
    BigFloat arg = cosh(a2) * sinh(a1) * sinh(a3) - cosh(a1) * cosh(a3);
    if (arg.cmp_rat(Rat(1)) < 0) throw NoSuchHexagon();
    return acosh(arg);
}

struct NuLimitSample {
    BigFloat eps;
    BigFloat value; // 2 cosh(nu_n / 2) at this eps
    BigFloat error; // |value - target|
};

struct NuLimitReport {
    Rat target; // n(tx + ty) - ty
    std::vector<NuLimitSample> samples;
    bool monotone = true; // errors non-increasing along the eps list
    bool has_slope = false;
    double slope = 0.0; // log-log fit of error vs eps
};

/// Finite-eps hexagon computation behind the nu_n limit: the degenerate
/// third boundary is replaced by length 2*eps, the trace of nu_n is
/// evaluated exactly as in the two-hexagon identity, and its distance to
/// the limit value n(tx+ty) - ty is reported per eps. cosh(gamma)*sinh(y/2)
/// is kept as a single factor so cusped seeds (ty = 2) stay finite.
inline NuLimitReport verify_nu_limit(const TraceValue& tx, const TraceValue& ty, const Int& n,
                                     const std::vector<BigFloat>& eps_list,
                                     mpfr_prec_t prec = BigFloat::default_precision()) {
    if (n < 1) throw BadInput("verify_nu_limit: n must be >= 1");
    if (!tx.is_rational() || !ty.is_rational())
        throw SymbolicInput("verify_nu_limit needs rational traces");
    if (cmp(tx.rat(), 2) < 0 || cmp(ty.rat(), 2) < 0)
        throw BadInput("verify_nu_limit: traces must be >= 2");

    NuLimitReport rep;
    rep.target = Rat(n) * (tx.rat() + ty.rat()) - ty.rat();

    BigFloat half_x = BigFloat::of(Rat(tx.rat() / 2), prec); // cosh(x/2)
    BigFloat half_y = BigFloat::of(Rat(ty.rat() / 2), prec); // cosh(y/2)
    BigFloat two = BigFloat::of(2L, prec);
    BigFloat nf = BigFloat::of(Int(n), prec);
    BigFloat target = BigFloat::of(rep.target, prec);

    // Errors at or below the working-precision noise floor count as zero
    // (the n = 1 case is exact up to rounding).
    BigFloat floor_bf = BigFloat::of(Rat(abs(rep.target) + 1), prec);
    mpfr_mul_2si(floor_bf.raw(), floor_bf.raw(), -(prec - 32), MPFR_RNDN);

    const NuLimitSample* prev = nullptr;
    for (const BigFloat& eps0 : eps_list) {
        if (eps0.sign() <= 0) throw BadInput("eps values must be positive");
        BigFloat eps(prec);
        eps = eps0;
        // W = cosh(gamma) sinh(y/2) = (cosh(x/2) + cosh(y/2) cosh eps) / sinh eps
        BigFloat w = (half_x + half_y * cosh(eps)) / sinh(eps);
        BigFloat value = two * (w * sinh(nf * eps) - half_y * cosh(nf * eps));
        NuLimitSample s{eps, value, abs(value - target)};
        if (prev && s.error > prev->error && s.error > floor_bf) rep.monotone = false;
        rep.samples.push_back(std::move(s));
        prev = &rep.samples.back();
    }

    // Least-squares slope of log(error) against log(eps), over samples with
    // an error genuinely above the noise floor.
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : rep.samples) {
        if (s.error > floor_bf) {
            double le = std::log(s.eps.to_double());
            double lerr = std::log(s.error.to_double());
            if (std::isfinite(le) && std::isfinite(lerr)) pts.emplace_back(le, lerr);
        }
    }
    if (pts.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto [x, y] : pts) {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double k = pts.size();
        double denom = k * sxx - sx * sx;
        if (denom != 0) {
            rep.slope = (k * sxy - sx * sy) / denom;
            rep.has_slope = true;
        }
    }
    return rep;
}

} // namespace tracelab
