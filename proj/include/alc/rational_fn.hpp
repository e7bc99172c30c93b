#pragma once

#include <map>
#include <string>

#include "alc/poly.hpp"

namespace alc {

// Quotient of polynomials. The denominator is kept monic; common factors are removed by
// exact division, by trial division against cached factors, and by a univariate gcd when
// the denominator involves a single variable.
class RationalFn {
public:
    RationalFn() : num_(0), den_(1) {}
    RationalFn(long c) : num_(c), den_(1) {}
    RationalFn(const mpq_class& c) : num_(c), den_(1) {}
    RationalFn(const Poly& p) : num_(p), den_(1) {}
    RationalFn(const Poly& num, const Poly& den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_ == Poly(1); }
    Poly as_poly() const;  // throws unless the denominator is 1

    RationalFn operator+(const RationalFn& o) const;
    RationalFn operator-(const RationalFn& o) const;
    RationalFn operator*(const RationalFn& o) const;
    RationalFn operator/(const RationalFn& o) const;
    RationalFn operator-() const;
    RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
    RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }
    RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }
    bool operator==(const RationalFn& o) const;
    bool operator!=(const RationalFn& o) const { return !(*this == o); }

    RationalFn pow(unsigned n) const;
    RationalFn diff(int var) const;
    RationalFn eval(const std::map<int, mpq_class>& values) const;
    RationalFn rename(const std::map<int, int>& ren) const;
    RationalFn reduce(const SqrtRel& rel) const;  // also rationalizes the denominator

    std::string str() const;

private:
    void normalize();
    Poly num_, den_;
};

// Register a polynomial as a known factor for trial division.
void register_factor(const Poly& f);

// Exact composition; bindings map variables to rational functions.
RationalFn substitute(const Poly& f, const std::map<int, RationalFn>& bindings);
RationalFn substitute(const RationalFn& f, const std::map<int, RationalFn>& bindings);

// Parse "3/2*x^2*y - (a+1)/(alpha+4)*y" style expressions.
RationalFn parse_expr(const std::string& text);
Poly parse_poly(const std::string& text);  // throws if the result is not a polynomial

}  // namespace alc
