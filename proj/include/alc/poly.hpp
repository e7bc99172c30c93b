#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace alc {

// Variables are interned once; the interning order is the lexicographic
// order used by the graded-lex term ordering.
int var_id(const std::string& name);
const std::string& var_name(int id);
int var_count();

using Monomial = std::vector<int>;  // exponent per variable id, trailing zeros trimmed

int mono_degree(const Monomial& m);
int mono_exp(const Monomial& m, int var);
Monomial mono_mul(const Monomial& a, const Monomial& b);
bool mono_divides(const Monomial& a, const Monomial& b);  // a | b
Monomial mono_div(const Monomial& b, const Monomial& a);  // b / a, requires a | b
void mono_trim(Monomial& m);

struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class PolyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Poly {
public:
    using Terms = std::map<Monomial, mpq_class, GrlexGreater>;

    Poly() = default;
    Poly(long c);
    Poly(const mpq_class& c);
    static Poly var(const std::string& name);
    static Poly var(int id);
    static Poly term(const mpq_class& c, const Monomial& m);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    mpq_class constant_term() const;
    size_t size() const { return terms_.size(); }

    int total_degree() const;
    int degree_in(int var) const;
    int degree_in(const std::vector<int>& vars) const;
    int min_degree_in(const std::vector<int>& vars) const;  // -1 for zero
    std::vector<int> variables() const;
    bool depends_on(int var) const;
    bool depends_on_any(const std::vector<int>& vars) const;

    const Monomial& leading_mono() const;
    const mpq_class& leading_coeff() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const mpq_class& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const mpq_class& c) { return a *= c; }
    friend Poly operator*(const mpq_class& c, Poly a) { return a *= c; }
    Poly operator-() const;
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly pow(unsigned n) const;
    Poly diff(int var) const;
    Poly diff(const std::string& name) const { return diff(var_id(name)); }

    // Simultaneous polynomial substitution.
    Poly subs(const std::map<int, Poly>& bindings) const;
    Poly subs(int var, const Poly& value) const;
    Poly eval(const std::map<int, mpq_class>& values) const;
    Poly rename(const std::map<int, int>& ren) const;

    // Split into coefficients with respect to the given main variables.
    std::map<Monomial, Poly, GrlexGreater> coeffs_in(const std::vector<int>& vars) const;
    Poly coeff_of(const std::vector<int>& vars, const std::vector<int>& exps) const;

    mpq_class content() const;          // positive rational content
    Poly primitive() const;             // integer coefficients, positive leading coefficient
    Poly monic() const;

    std::string str() const;

private:
    void add_term(const Monomial& m, const mpq_class& c);
    Terms terms_;
};

std::string rat_str(const mpq_class& q);

// f = q*g exactly, else nullopt. Throws on g = 0.
std::optional<Poly> divide_exact(const Poly& f, const Poly& g);

// Homogenize with respect to main variables (renamed to hom_vars[0..k-1]) adding hom_vars[k].
Poly homogenize(const Poly& f, const std::vector<int>& main_vars, const std::vector<int>& hom_vars, int degree);
Poly dehomogenize(const Poly& F, const std::vector<int>& hom_vars, const std::vector<int>& main_vars);

// m-adic order of f at the point (main_vars = point). Coordinates are polynomials in the
// remaining variables; an optional square-root relation is applied before inspection.
struct SqrtRel;
int order_at(const Poly& f, const std::vector<int>& vars, const std::vector<Poly>& point,
             const SqrtRel* rel = nullptr);

// Square-root relation: the variable `root` satisfies root^2 = radicand.
struct SqrtRel {
    int root = -1;
    Poly radicand;
    Poly reduce(const Poly& f) const;
};

}  // namespace alc
