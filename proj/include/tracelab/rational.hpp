#pragma once

#include <gmpxx.h>

#include <string>

#include "tracelab/errors.hpp"

namespace tracelab {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw BadInput("zero denominator");
    Rat q(num);
    q /= Rat(den);
    return q; // mpq division canonicalizes
}

inline bool is_integer(const Rat& q) {
    return q.get_den() == 1;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline unsigned long pow2_ul(int e) {
    if (e < 0 || e > 62) throw BadInput("power-of-two exponent out of range");
    return 1ul << e;
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
    Rat r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), e);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), e);
    return r; // base canonical => base^e canonical
}

inline Int floor_rat(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline Int ceil_rat(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

/// Exponent of prime p in x (x != 0).
inline unsigned long padic_valuation(const Int& x, const Int& p) {
    if (x == 0) throw BadInput("valuation of zero");
    Int rest;
    return mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
}

inline bool is_prime(const Int& p) {
    return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

inline Int smallest_prime_factor(const Int& b) {
    if (b < 2) throw BadInput("no prime factor below 2");
    if (mpz_even_p(b.get_mpz_t())) return 2;
    Int f = 3;
    while (f * f <= b) {
        if (mpz_divisible_p(b.get_mpz_t(), f.get_mpz_t())) return f;
        f += 2;
    }
    return b;
}

/// "p/q" for non-integers, plain "p" otherwise. Tolerates values built via
/// the raw two-argument constructor, which gmpxx does not canonicalize.
inline std::string rat_string(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    if (is_integer(c)) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/// Accepts "p/q", an integer string, or a decimal string ("1.5" -> 3/2, exactly).
inline Rat parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
        Int n, d;
        if (n.set_str(ns, 10) != 0 || ds.empty() || d.set_str(ds, 10) != 0)
            throw ParseError("bad rational literal: " + s);
        if (d == 0) throw ParseError("zero denominator: " + s);
        return make_rat(n, d);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        Int n;
        if (n.set_str(s, 10) != 0) throw ParseError("bad integer literal: " + s);
        return Rat(n);
    }
    std::string head = s.substr(0, dot), frac = s.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (!head.empty() && (head[0] == '+' || head[0] == '-')) head = head.substr(1);
    if (head.empty()) head = "0";
    if (frac.empty()) frac = "0";
    Int ipart, fpart;
    if (ipart.set_str(head, 10) != 0 || fpart.set_str(frac, 10) != 0 || ipart < 0 || fpart < 0)
        throw ParseError("bad decimal literal: " + s);
    Int den = pow_int(10, static_cast<unsigned long>(frac.size()));
    Rat q = Rat(ipart) + make_rat(fpart, den);
    return neg ? Rat(-q) : q;
}

struct RatLess {
    bool operator()(const Rat& a, const Rat& b) const { return cmp(a, b) < 0; }
};

} // namespace tracelab
