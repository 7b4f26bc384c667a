#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "tracelab/trace_value.hpp"

namespace tracelab {

// Clustering statistics, the divisor-sum machinery, and the S_n / B_n
// counting argument in the counterexample regime a > b^2.

struct GrowthReport {
    Int range_max;
    std::map<Int, long long> bins;       // occupied bins only: n -> #traces in [n, n+1)
    std::map<Int, long long> cumulative; // #traces <= n, recorded at each occupied bin index
    long long bc_bound_estimate = 0;     // max bin count within the range
    std::optional<Rat> gap;              // min positive pairwise difference (all-rational samples)
    std::optional<BigFloat> gap_float;   // same, when float traces are present
    Rat linear_c = 0;                    // minimal C with count(n) <= D + n C over the range
    long long linear_d = 0;              // D, pinned to the count at n = 2
    long long total = 0;                 // sample size after dedup
    long long in_range = 0;              // values <= range_max
};

/// Bin/cumulative/B-C/gap statistics over a sample of traces. Exact for
/// rational inputs; symbolic traces cannot be binned. Bins are sparse, so
/// witness values with astronomically large integer parts are fine.
inline GrowthReport cluster_report(const std::vector<TraceValue>& traces, const Int& range_max) {
    if (range_max < 0) throw BadInput("range_max must be >= 0");
    bool any_float = false;
    for (const auto& t : traces) {
        if (t.is_symbolic()) throw SymbolicInput("symbolic traces cannot be binned");
        if (t.is_float()) any_float = true;
    }

    GrowthReport rep;
    rep.range_max = range_max;

    // Work over exact rationals; float samples are floored/compared through
    // MPFR and only the gap loses exactness.
    std::vector<Rat> vals;
    if (!any_float) {
        for (const auto& t : traces) vals.push_back(t.rat());
        std::sort(vals.begin(), vals.end(), RatLess{});
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        for (std::size_t i = 1; i < vals.size(); ++i) {
            Rat d = vals[i] - vals[i - 1];
            if (!rep.gap || cmp(d, *rep.gap) < 0) rep.gap = d;
        }
    } else {
        std::vector<BigFloat> fvals;
        for (const auto& t : traces)
            fvals.push_back(t.is_float() ? t.flt() : BigFloat::of(t.rat()));
        std::sort(fvals.begin(), fvals.end());
        fvals.erase(std::unique(fvals.begin(), fvals.end()), fvals.end());
        for (std::size_t i = 1; i < fvals.size(); ++i) {
            BigFloat d = fvals[i] - fvals[i - 1];
            if (!rep.gap_float || d < *rep.gap_float) rep.gap_float = d;
        }
        // Exact-rational snapshot of each float for binning and counting.
        for (const auto& f : fvals) {
            mpq_class q;
            mpfr_get_q(q.get_mpq_t(), f.raw());
            vals.push_back(Rat(q));
        }
    }
    rep.total = static_cast<long long>(vals.size());

    for (const auto& v : vals) {
        if (cmp(v, range_max) > 0) continue;
        rep.in_range += 1;
        rep.bins[floor_rat(v)] += 1;
    }
    for (auto& [n, c] : rep.bins) rep.bc_bound_estimate = std::max(rep.bc_bound_estimate, c);

    // cumulative(n) = #{a <= n} at each occupied bin index, by a single
    // walk over the sorted values.
    {
        std::size_t idx = 0;
        long long seen = 0;
        for (auto& [n, c] : rep.bins) {
            while (idx < vals.size() && cmp(vals[idx], Rat(n)) <= 0) {
                ++idx;
                ++seen;
            }
            rep.cumulative[n] = seen;
        }
    }

    // Canonical linear-growth witness: D = count at n = 2; C is the least
    // rational with count(n) <= D + nC for every integer n in the range.
    // The constraint is tightest just as the step function jumps, i.e. at
    // n = ceil(v) for sample values v, so scanning those suffices.
    for (const auto& v : vals)
        if (cmp(v, 2) <= 0) rep.linear_d += 1;
    {
        std::size_t idx = 0;
        long long seen = 0;
        Int last_n(-1);
        for (const auto& v : vals) {
            if (cmp(v, range_max) > 0) break;
            Int n = ceil_rat(v);
            if (n < 1) n = 1;
            if (n == last_n) continue;
            last_n = n;
            while (idx < vals.size() && cmp(vals[idx], Rat(n)) <= 0) {
                ++idx;
                ++seen;
            }
            Rat c = Rat(static_cast<long>(seen - rep.linear_d)) / Rat(n);
            if (cmp(c, rep.linear_c) > 0) rep.linear_c = c;
        }
    }
    return rep;
}

/// Number of positive divisors, by trial division up to sqrt(i); memoized.
inline long long sigma0(unsigned long i) {
    if (i < 1) throw BadInput("sigma0 needs i >= 1");
    static std::unordered_map<unsigned long, long long> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(i);
        if (it != cache.end()) return it->second;
    }
    long long count = 0;
    for (unsigned long d = 1; d * d <= i; ++d) {
        if (i % d == 0) count += (d * d == i) ? 1 : 2;
    }
    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(i, count);
    return count;
}

/// sum_{i<=N} sigma0(i) = sum_{j<=N} floor(N/j), computed by the floor
/// identity with sqrt(N) blocking over equal quotients.
inline unsigned long long sigma0_sum(unsigned long N) {
    if (N < 1) throw BadInput("sigma0_sum needs N >= 1");
    unsigned long long total = 0;
    unsigned long j = 1;
    while (j <= N) {
        unsigned long v = N / j;
        unsigned long j_hi = N / v;
        total += static_cast<unsigned long long>(v) * (j_hi - j + 1);
        j = j_hi + 1;
    }
    return total;
}

/// (N ln N - N, N ln N + N); sigma0_sum(N) lies between them for N >= 2.
inline std::pair<BigFloat, BigFloat> sigma0_sum_bounds(unsigned long N,
                                                       mpfr_prec_t prec = BigFloat::default_precision()) {
    if (N < 1) throw BadInput("sigma0_sum_bounds needs N >= 1");
    BigFloat n = BigFloat::of(static_cast<long>(N), prec);
    BigFloat nlogn = n * log(n);
    return {nlogn - n, nlogn + n};
}

/// Distinct symbolic traces mk z^2 - 2(k-m) z - 2 over k >= m >= 1 with
/// mk <= N. Verifies that the count equals the unordered-factorization
/// count sum ceil(sigma0(i)/2) (pairwise distinctness as polynomials) and
/// dominates sigma0_sum(N)/2.
inline long long irrational_family_count(unsigned long N) {
    if (N < 1) throw BadInput("irrational_family_count needs N >= 1");
    std::set<IntPoly> polys;
    long long pairs = 0;
    for (unsigned long m = 1; m * m <= N; ++m) {
        for (unsigned long k = m; m * k <= N; ++k) {
            Int mk = Int(m) * Int(k);
            Int lin = -2 * (Int(k) - Int(m));
            polys.insert(IntPoly({Int(-2), lin, mk}));
            pairs += 1;
        }
    }
    long long expected = 0;
    for (unsigned long i = 1; i <= N; ++i) expected += (sigma0(i) + 1) / 2;
    if (static_cast<long long>(polys.size()) != pairs || pairs != expected)
        throw Error("polynomial family collision: the z^2 traces were not pairwise distinct");
    if (2 * static_cast<unsigned long long>(expected) < sigma0_sum(N))
        throw Error("family count fell below sigma0_sum/2");
    return expected;
}

struct SnElement {
    Int m, k; // first (m, k) pair attaining the value, in row-major order
    Rat value;
    Int j; // B_n witness: value = (a/b^2)^(2^n) * j - 2
    long long multiplicity = 1;
};

struct SnFamily {
    Int a, b;
    int level = 0;
    std::vector<SnElement> elements; // sorted by value, duplicate free
};

/// Materialize S_n = { mk z^(2^(n+1)) - 2(k-m) z^(2^n) - 2 } intersected
/// with (0, cap], z = a/b, and exhibit for every element its B_n witness
/// j = mk a^g - 2(k-m) b^g (g = 2^n).
inline SnFamily sn_family(const Int& a, const Int& b, int level, const Rat& cap) {
    if (b <= 1 || a <= b || gcd(a, b) != 1)
        throw BadInput("sn_family needs coprime a > b > 1");
    unsigned long g = pow2_ul(level);
    Rat z = make_rat(a, b);
    Rat zg = pow_rat(z, g);
    Rat z2g = zg * zg;
    Rat base = pow_rat(make_rat(a, b * b), g); // (a/b^2)^g
    Int ag = pow_int(a, g), bg = pow_int(b, g);

    std::map<Rat, SnElement, RatLess> found;
    auto consider = [&](const Int& m, const Int& k, const Rat& w) {
        if (sgn(w) <= 0 || cmp(w, cap) > 0) return;
        // Two routes to the B_n witness: solve for j, and the closed form.
        Rat j_rat = (w + 2) / base;
        Int j_formula = m * k * ag - 2 * (k - m) * bg;
        if (!is_integer(j_rat) || j_rat.get_num() != j_formula || j_formula <= 0)
            throw Error("S_n element escaped B_n (broken witness)");
        auto [it, inserted] = found.try_emplace(w, SnElement{m, k, w, j_formula});
        if (!inserted) it->second.multiplicity += 1;
    };

    // w(m,k) strictly increases in m. In k it increases iff m z^g > 2,
    // which holds for every m >= 2 (z > 1); only the m = 1 row can be
    // decreasing, when z^g < 2.
    for (Int m = 1;; ++m) {
        Rat w_first = Rat(m) * z2g + 2 * (Rat(m) - 1) * zg - 2; // k = 1
        bool row_increasing = cmp(Rat(m) * zg, 2) > 0;
        if (cmp(w_first, cap) > 0 && row_increasing) break;
        for (Int k = 1;; ++k) {
            Rat w = Rat(m) * Rat(k) * z2g - 2 * (Rat(k) - Rat(m)) * zg - 2;
            if (row_increasing && cmp(w, cap) > 0) break;
            if (!row_increasing && sgn(w) <= 0) break;
            consider(m, k, w);
        }
    }

    SnFamily fam{a, b, level, {}};
    for (auto& [w, e] : found) fam.elements.push_back(e);
    return fam;
}

struct UnionCountResult {
    long long actual_count = 0;
    Rat bound; // (N+2) * sum_{n<=K} (b^2/a)^(2^n)
};

/// Exact count of (union of S_n, n <= K) within (0, N], against the B_n
/// covering bound. Requires the convergent regime a > b^2.
inline UnionCountResult union_sn_count_bound(const Int& a, const Int& b, int max_level,
                                             long long value_cap) {
    if (a <= b * b) throw RegimeViolation("counterexample regime needs a > b^2");
    if (max_level < 0) throw BadInput("max_level must be >= 0");
    if (value_cap < 1) throw BadInput("value cap must be >= 1");
    std::set<Rat, RatLess> values;
    Rat cap(static_cast<long>(value_cap));
    for (int n = 0; n <= max_level; ++n) {
        SnFamily fam = sn_family(a, b, n, cap);
        for (const auto& e : fam.elements) values.insert(e.value);
    }
    Rat ratio = make_rat(b * b, a);
    Rat series(0);
    for (int n = 0; n <= max_level; ++n) series += pow_rat(ratio, pow2_ul(n));
    UnionCountResult res;
    res.actual_count = static_cast<long long>(values.size());
    res.bound = Rat(static_cast<long>(value_cap + 2)) * series;
    if (cmp(Rat(static_cast<long>(res.actual_count)), res.bound) > 0)
        throw Error("S_n union exceeded its B_n covering bound");
    return res;
}

struct InequalityCheckDetail {
    int level = 0;
    bool power_ok = false;      // b^g z^(2g) > b^(2g), exactly
    bool analytic_ok = false;   // b^(2g) > (1/2) b^g (ln b^g + 1), directed rounding
    bool enumerated = false;    // b^g small enough to sum sigma0 directly
    bool enumeration_ok = true; // (1/2) b^g (ln b^g + 1) >= (1/2) sigma0_sum(b^g)
};

/// The chain that blocks the divisor-sum lower bound in the a > b^2
/// regime: b^g z^(2g) > b^(2g) > (1/2) b^g (ln b^g + 1) >= (1/2) sum sigma0.
/// The first comparison is exact big-integer arithmetic; the transcendental
/// ones use directed rounding. Enumeration is skipped above b^g = 10^6.
inline InequalityCheckDetail counterexample_inequality_detail(const Int& a, const Int& b, int level) {
    if (b <= 1 || gcd(a, b) != 1) throw BadInput("needs coprime a, b with b > 1");
    if (a <= b * b) throw RegimeViolation("counterexample regime needs a > b^2");
    unsigned long g = pow2_ul(level);
    InequalityCheckDetail det;
    det.level = level;

    // (i) b^g (a/b)^(2g) > b^(2g)  <=>  a^(2g) > b^(3g).
    det.power_ok = pow_int(a, 2 * g) > pow_int(b, 3 * g);

    // (ii) 2 b^g > g ln b + 1, with the right side rounded up.
    Int bg = pow_int(b, g);
    mpfr_t rhs;
    mpfr_init2(rhs, 256);
    mpfr_set_z(rhs, b.get_mpz_t(), MPFR_RNDU);
    mpfr_log(rhs, rhs, MPFR_RNDU);
    mpfr_mul_ui(rhs, rhs, g, MPFR_RNDU);
    mpfr_add_ui(rhs, rhs, 1, MPFR_RNDU);
    Int two_bg = 2 * bg;
    det.analytic_ok = mpfr_cmp_z(rhs, two_bg.get_mpz_t()) < 0;
    mpfr_clear(rhs);

    // (iii) b^g (g ln b + 1) >= sigma0_sum(b^g), left side rounded down.
    if (bg <= 1'000'000) {
        det.enumerated = true;
        unsigned long long s = sigma0_sum(bg.get_ui());
        mpfr_t lhs;
        mpfr_init2(lhs, 256);
        mpfr_set_z(lhs, b.get_mpz_t(), MPFR_RNDD);
        mpfr_log(lhs, lhs, MPFR_RNDD);
        mpfr_mul_ui(lhs, lhs, g, MPFR_RNDD);
        mpfr_add_ui(lhs, lhs, 1, MPFR_RNDD);
        mpfr_mul_z(lhs, lhs, bg.get_mpz_t(), MPFR_RNDD);
        Int sum_int(static_cast<unsigned long>(s));
        det.enumeration_ok = mpfr_cmp_z(lhs, sum_int.get_mpz_t()) >= 0;
        mpfr_clear(lhs);
    }
    return det;
}

inline bool counterexample_inequality(const Int& a, const Int& b, int level) {
    InequalityCheckDetail det = counterexample_inequality_detail(a, b, level);
    return det.power_ok && det.analytic_ok && det.enumeration_ok;
}

} // namespace tracelab
