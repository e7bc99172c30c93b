#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <vector>

#include "alc/poly.hpp"

namespace alc {

// Dense univariate polynomial over Q; c[i] is the coefficient of t^i.
class UPoly {
public:
    std::vector<mpq_class> c;

    UPoly() = default;
    explicit UPoly(std::vector<mpq_class> coeffs);
    static UPoly constant(const mpq_class& v);
    static UPoly from_poly(const Poly& p, int var);  // p must be univariate in var
    Poly to_poly(int var) const;

    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c.empty(); }
    const mpq_class& lead() const { return c.back(); }
    void trim();

    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly operator*(const mpq_class& s) const;
    UPoly operator-() const;
    bool operator==(const UPoly& o) const { return c == o.c; }

    void divmod(const UPoly& d, UPoly& q, UPoly& r) const;
    UPoly operator%(const UPoly& d) const;
    UPoly operator/(const UPoly& d) const;
    UPoly derivative() const;
    UPoly monic() const;

    mpq_class eval(const mpq_class& t) const;
    double eval(double t) const;
    std::complex<double> eval(std::complex<double> t) const;
    int sign_at(const mpq_class& t) const;
};

UPoly gcd(UPoly a, UPoly b);
UPoly squarefree_part(const UPoly& p);
// inverse of a modulo m, nullopt if not invertible
std::optional<UPoly> inverse_mod(const UPoly& a, const UPoly& m);

struct RootInterval {
    mpq_class lo, hi;            // root in (lo, hi], or exact when lo == hi
    bool exact = false;
    mpq_class value() const { return exact ? lo : (lo + hi) / 2; }
};

// Real roots of a squarefree polynomial isolated by Sturm bisection, refined to width < eps.
std::vector<RootInterval> real_roots(const UPoly& p, const mpq_class& eps);
int sturm_count(const std::vector<UPoly>& seq, const mpq_class& lo, const mpq_class& hi);
std::vector<UPoly> sturm_sequence(const UPoly& p);
mpq_class cauchy_bound(const UPoly& p);

// Rational roots found by refinement plus continued-fraction recognition, verified exactly.
std::vector<mpq_class> rational_roots(const UPoly& p);
// simplest rational in [lo, hi]
mpq_class simplest_between(mpq_class lo, mpq_class hi);

// All complex roots (companion matrix eigenvalues, Newton polished). Input need not be squarefree.
std::vector<std::complex<double>> complex_roots(const UPoly& p);

// Resultant of two polynomials in (x, y) with rational coefficients, eliminating y; result in x.
UPoly resultant_y(const Poly& p, const Poly& q, int xv, int yv);
// Resultant of two univariate polynomials.
mpq_class resultant(const UPoly& a, const UPoly& b);

mpq_class det(std::vector<std::vector<mpq_class>> m);

}  // namespace alc
