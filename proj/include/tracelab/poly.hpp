#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "tracelab/rational.hpp"

namespace tracelab {

/// Polynomial over Z in one indeterminate, coefficients stored lowest
/// degree first with no trailing zeros (the zero polynomial is empty).
class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { strip(); }
    IntPoly(std::initializer_list<long> coeffs) {
        for (long x : coeffs) c_.emplace_back(x);
        strip();
    }

    static IntPoly constant(const Int& a) {
        IntPoly p;
        if (a != 0) p.c_ = {a};
        return p;
    }
    static IntPoly monomial(const Int& coeff, std::size_t deg) {
        IntPoly p;
        if (coeff != 0) {
            p.c_.assign(deg + 1, Int(0));
            p.c_[deg] = coeff;
        }
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    Int coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Int(0); }
    const std::vector<Int>& coeffs() const { return c_; }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return IntPoly(std::move(r));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Int> r(a.c_.size() + b.c_.size() - 1, Int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(const Int& s, const IntPoly& p) {
        std::vector<Int> r = p.c_;
        for (auto& x : r) x *= s;
        return IntPoly(std::move(r));
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }
    /// Total order (by degree, then coefficients from the top), for use in sets.
    friend bool operator<(const IntPoly& a, const IntPoly& b) {
        if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
        for (std::size_t i = a.c_.size(); i-- > 0;)
            if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
        return false;
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + Rat(c_[i]);
        return acc;
    }

    /// Substitute z -> z^e. Used to lift level-0 trace polynomials to level n.
    IntPoly compose_power(std::size_t e) const {
        if (e == 0) throw BadInput("compose_power needs e >= 1");
        IntPoly r;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) r = r + monomial(c_[i], i * e);
        return r;
    }

    std::string str(const char* var = "z") const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            const Int& a = c_[i];
            if (a == 0) continue;
            if (!out.empty()) out += (a > 0) ? " + " : " - ";
            else if (a < 0) out += "-";
            Int mag = abs(a);
            bool unit = (mag == 1) && i > 0;
            if (!unit) out += mag.get_str();
            if (i > 0) {
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

  private:
    void strip() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Int> c_;
};

} // namespace tracelab
