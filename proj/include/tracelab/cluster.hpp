#pragma once

#include <string>
#include <vector>

#include "tracelab/rational.hpp"

namespace tracelab {

// Constructive refutation of bounded clustering for rational non-integer
// traces: a Bezout variant avoiding a chosen prime, a doubly exponential
// exponent schedule, and the backward assembly of arbitrarily many trace
// values m_i (a/b)^(2^f(i)) - 2 packed into a unit interval.

struct BezoutResult {
    Int u, v;
};

/// Positive u, v with |ua - vb| = 1, v < a and p not dividing v (hence
/// gcd(v, a) = gcd(u, b) = 1). Follows the constructive path: extended
/// Euclid, reduce v modulo a, and if p divides the remainder apply the
/// a - r correction. The contract is the postcondition, not the path.
inline BezoutResult bezout_variant(const Int& a, const Int& b, const Int& p) {
    if (a <= 1 || b <= 1) throw BadInput("bezout_variant needs a, b > 1");
    if (gcd(a, b) != 1) throw BadInput("bezout_variant needs coprime a, b");
    if (!is_prime(p) || !mpz_divisible_p(b.get_mpz_t(), p.get_mpz_t()))
        throw BadInput("p must be a prime divisor of b");

    Int g, s, t; // s a + t b = 1
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    // Exactly one of s, t is negative (a, b > 1); fold signs into |ua - vb| = 1.
    Int u_tilde = s > 0 ? s : -s;
    Int v_tilde = t > 0 ? t : -t;

    Int q, r; // v_tilde = q a + r, 0 < r < a (r != 0 since gcd(v_tilde, a) = 1)
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v_tilde.get_mpz_t(), a.get_mpz_t());

    BezoutResult res;
    if (!mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t())) {
        res.u = u_tilde - q * b;
        res.v = r;
    } else {
        res.u = (q + 1) * b - u_tilde;
        res.v = a - r;
    }

    Int diff = abs(res.u * a - res.v * b);
    if (res.u <= 0 || res.v <= 0 || diff != 1 || res.v >= a ||
        mpz_divisible_p(res.v.get_mpz_t(), p.get_mpz_t()))
        throw Error("bezout_variant postcondition failed for a=" + a.get_str() + " b=" + b.get_str() +
                    " p=" + p.get_str());
    return res;
}

/// Exponent schedule f(0..n): f(0) = 0 and each f(k) is the smallest
/// integer with b^(2^f(k)) > 2 * prod_{i<k} a^(2^f(i)); minimality keeps
/// the doubly exponential integers as small as possible. The sequence is
/// strictly increasing automatically.
inline std::vector<int> choose_schedule(const Int& a, const Int& b, int n) {
    if (a <= 1 || b <= 1) throw BadInput("choose_schedule needs a, b > 1");
    if (n < 0) throw BadInput("schedule length must be >= 0");
    std::vector<int> f{0};
    Int rhs = 2 * a; // 2 * prod a^(2^f(i)), starting from f(0) = 0
    for (int k = 1; k <= n; ++k) {
        int cand = 0;
        while (true) {
            Int lhs = pow_int(b, pow2_ul(cand));
            if (lhs > rhs) break;
            ++cand;
            if (cand > 64) throw Error("schedule exponent ran away");
        }
        f.push_back(cand);
        if (k < n) rhs *= pow_int(a, pow2_ul(cand));
    }
    return f;
}

struct ClusterWitness {
    Int a, b;
    Int p;         // smallest prime factor of b
    int d_exp = 0; // exponent of p in b
    int n = 0;
    bool below_geometric_regime = false; // 2 < a/b <= 4: valid arithmetic, elliptic-side geometry
    std::vector<int> f;     // schedule, size n+1, f[0] = 0
    std::vector<Int> u, v;  // size n; u[i-1], v[i-1] hold u_i, v_i
    std::vector<Int> m;     // size n+1; m[0] = v_1...v_n, m[i] = v_1...v_{i-1} u_i
    std::vector<Rat> values; // size n+1; values[i] = m_i (a/b)^(2^f(i)) - 2
};

/// Full independent re-check of every witness invariant, in exact
/// arithmetic. Throws on the first violation.
inline void validate_witness(const ClusterWitness& w) {
    auto fail = [](const std::string& msg) { throw Error("witness invalid: " + msg); };
    if (w.b <= 1 || w.a <= 2 * w.b || gcd(w.a, w.b) != 1) fail("regime");
    if (w.n < 1 || w.f.size() != static_cast<std::size_t>(w.n) + 1 || w.f[0] != 0) fail("schedule shape");
    if (w.u.size() != static_cast<std::size_t>(w.n) || w.v.size() != w.u.size()) fail("u/v shape");
    if (w.m.size() != static_cast<std::size_t>(w.n) + 1 || w.values.size() != w.m.size()) fail("m shape");
    if (!is_prime(w.p) || !mpz_divisible_p(w.b.get_mpz_t(), w.p.get_mpz_t())) fail("p");
    if (static_cast<int>(padic_valuation(w.b, w.p)) != w.d_exp) fail("d_exp");

    // Schedule inequality b^(2^f(k)) > 2 prod_{i<k} a^(2^f(i)), and growth.
    for (int k = 1; k <= w.n; ++k) {
        if (w.f[k] <= w.f[k - 1]) fail("schedule not increasing");
        Int rhs = 2;
        for (int i = 0; i < k; ++i) rhs *= pow_int(w.a, pow2_ul(w.f[i]));
        if (pow_int(w.b, pow2_ul(w.f[k])) <= rhs) fail("schedule inequality at k=" + std::to_string(k));
    }

    // Bezout rows: |u_i a^(g(i)-1) - v_i...v_n b^(g(i)-1)| = 1 plus the
    // side conditions of the Bezout variant.
    for (int i = 1; i <= w.n; ++i) {
        unsigned long gi = pow2_ul(w.f[i]);
        const Int& ui = w.u[i - 1];
        const Int& vi = w.v[i - 1];
        if (ui <= 0 || vi <= 0) fail("u, v must be positive");
        Int vtail = 1;
        for (int j = i; j <= w.n; ++j) vtail *= w.v[j - 1];
        Int lhs = abs(ui * pow_int(w.a, gi - 1) - vtail * pow_int(w.b, gi - 1));
        if (lhs != 1) fail("bezout row at i=" + std::to_string(i));
        if (vi >= pow_int(w.a, gi - 1)) fail("v_i too large");
        if (gcd(vi, w.a) != 1 || mpz_divisible_p(vi.get_mpz_t(), w.p.get_mpz_t())) fail("v_i divisibility");
        if (gcd(ui, w.b) != 1) fail("u_i divisibility");
    }

    // m_0 = v_1...v_n, m_i = v_1...v_{i-1} u_i.
    Int m0 = 1;
    for (int j = 1; j <= w.n; ++j) m0 *= w.v[j - 1];
    if (w.m[0] != m0) fail("m_0");
    Int prefix = 1;
    for (int i = 1; i <= w.n; ++i) {
        if (w.m[i] != prefix * w.u[i - 1]) fail("m_" + std::to_string(i));
        prefix *= w.v[i - 1];
    }

    // Values, the unit-interval packing, and Step-5 distinctness via the
    // p-adic valuation of the reduced denominators.
    Rat z = make_rat(w.a, w.b);
    for (int i = 0; i <= w.n; ++i) {
        Rat expect = Rat(w.m[i]) * pow_rat(z, pow2_ul(w.f[i])) - 2;
        if (w.values[i] != expect) fail("value formula at i=" + std::to_string(i));
        if (i >= 1) {
            Rat dev = abs(w.values[i] - w.values[0]);
            if (cmp(dev, make_rat(1, 2)) >= 0) fail("value strayed >= 1/2 from values[0]");
            // Analytic form of the same bound, from the schedule choice.
            Int num = 1;
            for (int j = 0; j < i; ++j) num *= pow_int(w.a, pow2_ul(w.f[j]));
            if (2 * num >= pow_int(w.b, pow2_ul(w.f[i]))) fail("step-4 bound chain");
        }
        unsigned long want = static_cast<unsigned long>(w.d_exp) * pow2_ul(w.f[i]);
        if (padic_valuation(w.values[i].get_den(), w.p) != want)
            fail("p-adic valuation at i=" + std::to_string(i));
    }
    for (int i = 0; i <= w.n; ++i)
        for (int j = i + 1; j <= w.n; ++j)
            if (w.values[i] == w.values[j]) fail("values not pairwise distinct");
}

/// Build the Prop-style witness: pick p as the smallest prime factor of b,
/// choose the minimal schedule, then assemble u_i, v_i backwards (i = n
/// down to 1), feeding the growing product v_{i+1}...v_n into each Bezout
/// step. Coprimality of every consumed pair is checked, not assumed.
inline ClusterWitness build_witness(const Int& a, const Int& b, int n) {
    if (b == 1) throw BadRegime("integer trace: no witness exists");
    if (b < 1 || a <= 2 * b) throw BadRegime("need z = a/b > 2 (trace above the parabolic bound)");
    if (gcd(a, b) != 1) throw BadInput("a and b must be coprime");
    if (n < 1) throw BadInput("witness size n must be >= 1");

    ClusterWitness w;
    w.a = a;
    w.b = b;
    w.n = n;
    w.p = smallest_prime_factor(b);
    w.d_exp = static_cast<int>(padic_valuation(b, w.p));
    w.below_geometric_regime = (a <= 4 * b);
    w.f = choose_schedule(a, b, n);

    w.u.assign(n, Int(0));
    w.v.assign(n, Int(0));
    Int vtail = 1; // v_{i+1} ... v_n during the backward pass
    for (int i = n; i >= 1; --i) {
        unsigned long gi = pow2_ul(w.f[i]);
        Int lhs = pow_int(a, gi - 1);
        Int rhs = vtail * pow_int(b, gi - 1);
        if (gcd(lhs, rhs) != 1)
            throw Error("backward step lost coprimality at i=" + std::to_string(i));
        BezoutResult bz = bezout_variant(lhs, rhs, w.p);
        w.u[i - 1] = bz.u;
        w.v[i - 1] = bz.v;
        vtail *= bz.v;
    }

    w.m.assign(n + 1, Int(1));
    for (int j = 1; j <= n; ++j) w.m[0] *= w.v[j - 1];
    Int prefix = 1;
    for (int i = 1; i <= n; ++i) {
        w.m[i] = prefix * w.u[i - 1];
        prefix *= w.v[i - 1];
    }

    Rat z = make_rat(a, b);
    for (int i = 0; i <= n; ++i)
        w.values.push_back(Rat(w.m[i]) * pow_rat(z, pow2_ul(w.f[i])) - 2);

    validate_witness(w);
    return w;
}

/// A witness with target_bound + 1 distinct trace values in one unit
/// interval: no clustering bound B = target_bound can hold.
inline ClusterWitness refute_bc(const Int& a, const Int& b, int target_bound) {
    if (target_bound < 1) throw BadInput("target bound must be >= 1");
    return build_witness(a, b, target_bound);
}

/// Each value must be m (a/b)^(2^f(i)) - 2 with the recorded positive m,
/// i.e. lie in the rule-generated subfamily of Tr(Y(x,0,0)).
inline bool values_in_generated_set(const ClusterWitness& w) {
    if (w.values.size() != w.m.size() || w.f.size() != w.m.size()) return false;
    Rat z = make_rat(w.a, w.b);
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        if (w.m[i] <= 0) return false;
        if (w.f[i] < 0) return false;
        if (w.values[i] != Rat(w.m[i]) * pow_rat(z, pow2_ul(w.f[i])) - 2) return false;
    }
    return true;
}

/// Largest bit size among the witness integers (numerators and
/// denominators included); the schedule makes these doubly exponential.
inline std::size_t witness_max_bits(const ClusterWitness& w) {
    std::size_t bits = 0;
    auto note = [&](const Int& x) { bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2)); };
    for (const auto& x : w.u) note(x);
    for (const auto& x : w.v) note(x);
    for (const auto& x : w.m) note(x);
    for (const auto& q : w.values) {
        note(q.get_num());
        note(q.get_den());
    }
    return bits;
}

} // namespace tracelab
