#include "alc/rational_fn.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <vector>

#include "alc/upoly.hpp"

namespace alc {

namespace {

struct FactorCache {
    std::mutex mu;
    std::vector<Poly> factors;
};

FactorCache& cache() {
    static FactorCache c;
    return c;
}

std::vector<Poly> cached_factors() {
    auto& c = cache();
    std::lock_guard<std::mutex> lk(c.mu);
    return c.factors;
}

// Cancel common powers of single variables.
void strip_var_powers(Poly& num, Poly& den) {
    for (int v : den.variables()) {
        int ed = den.min_degree_in({v});
        int en = num.min_degree_in({v});
        int e = std::min(ed, en);
        if (e <= 0) continue;
        Monomial m(v + 1, 0);
        m[v] = e;
        Poly mono = Poly::term(1, m);
        num = *divide_exact(num, mono);
        den = *divide_exact(den, mono);
    }
}

}  // namespace

void register_factor(const Poly& f) {
    if (f.is_constant()) return;
    Poly g = f.monic();
    auto& c = cache();
    std::lock_guard<std::mutex> lk(c.mu);
    for (const auto& h : c.factors)
        if (h == g) return;
    c.factors.push_back(g);
}

RationalFn::RationalFn(const Poly& num, const Poly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw PolyError("zero denominator");
    normalize();
}

void RationalFn::normalize() {
    if (num_.is_zero()) {
        den_ = Poly(1);
        return;
    }
    mpq_class lc = den_.leading_coeff();
    if (lc != 1) {
        num_ *= mpq_class(1 / lc);
        den_ *= mpq_class(1 / lc);
    }
    if (den_.is_constant()) return;
    if (auto q = divide_exact(num_, den_)) {
        num_ = *q;
        den_ = Poly(1);
        return;
    }
    strip_var_powers(num_, den_);
    if (den_.is_constant()) return;
    for (const auto& g : cached_factors()) {
        while (!den_.is_constant()) {
            auto qd = divide_exact(den_, g);
            if (!qd) break;
            auto qn = divide_exact(num_, g);
            if (!qn) break;
            den_ = *qd;
            num_ = *qn;
        }
    }
    auto dv = den_.variables();
    if (dv.size() == 1 && !den_.is_constant()) {
        int v = dv[0];
        UPoly g = UPoly::from_poly(den_, v);
        std::vector<int> others;
        for (int w : num_.variables())
            if (w != v) others.push_back(w);
        for (const auto& [k, c] : num_.coeffs_in(others)) {
            g = gcd(g, UPoly::from_poly(c, v));
            if (g.degree() == 0) break;
        }
        if (g.degree() > 0) {
            Poly gp = g.to_poly(v);
            register_factor(gp);
            num_ = *divide_exact(num_, gp);
            den_ = *divide_exact(den_, gp);
        }
    }
    lc = den_.leading_coeff();
    if (lc != 1) {
        num_ *= mpq_class(1 / lc);
        den_ *= mpq_class(1 / lc);
    }
}

Poly RationalFn::as_poly() const {
    if (!is_poly()) throw PolyError("rational function is not a polynomial: " + str());
    return num_;
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
    if (den_ == o.den_) return RationalFn(num_ + o.num_, den_);
    return RationalFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFn RationalFn::operator-(const RationalFn& o) const { return *this + (-o); }

RationalFn RationalFn::operator*(const RationalFn& o) const {
    if (is_poly() && o.is_poly()) {
        RationalFn r;
        r.num_ = num_ * o.num_;
        return r;
    }
    return RationalFn(num_ * o.num_, den_ * o.den_);
}

RationalFn RationalFn::operator/(const RationalFn& o) const {
    if (o.is_zero()) throw PolyError("division by zero rational function");
    return RationalFn(num_ * o.den_, den_ * o.num_);
}

RationalFn RationalFn::operator-() const {
    RationalFn r = *this;
    r.num_ = -r.num_;
    return r;
}

bool RationalFn::operator==(const RationalFn& o) const { return num_ * o.den_ == o.num_ * den_; }

RationalFn RationalFn::pow(unsigned n) const {
    RationalFn r;
    r.num_ = num_.pow(n);
    r.den_ = den_.pow(n);
    return r;
}

RationalFn RationalFn::diff(int var) const {
    if (!den_.depends_on(var)) {
        RationalFn r;
        r.num_ = num_.diff(var);
        r.den_ = den_;
        if (r.num_.is_zero()) r.den_ = Poly(1);
        return r;
    }
    return RationalFn(num_.diff(var) * den_ - num_ * den_.diff(var), den_ * den_);
}

RationalFn RationalFn::eval(const std::map<int, mpq_class>& values) const {
    Poly d = den_.eval(values);
    if (d.is_zero()) throw PolyError("zero denominator after evaluation");
    return RationalFn(num_.eval(values), d);
}

RationalFn RationalFn::rename(const std::map<int, int>& ren) const {
    return RationalFn(num_.rename(ren), den_.rename(ren));
}

RationalFn RationalFn::reduce(const SqrtRel& rel) const {
    Poly n = rel.reduce(num_), d = rel.reduce(den_);
    if (d.depends_on(rel.root)) {
        Poly conj = d.subs(rel.root, -Poly::var(rel.root));
        n = rel.reduce(n * conj);
        d = rel.reduce(d * conj);
    }
    return RationalFn(n, d);
}

std::string RationalFn::str() const {
    if (is_poly()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RationalFn substitute(const Poly& f, const std::map<int, RationalFn>& bindings) {
    if (f.is_zero()) return RationalFn();
    // common denominator: product of binding denominators raised to the per-variable degree
    std::map<int, int> maxdeg;
    for (const auto& [v, b] : bindings) maxdeg[v] = f.degree_in(v);
    Poly D(1);
    for (const auto& [v, b] : bindings)
        if (maxdeg[v] > 0) D = D * b.den().pow(maxdeg[v]);
    std::map<int, std::vector<Poly>> npow, dpow;
    for (const auto& [v, b] : bindings) {
        int n = std::max(0, maxdeg[v]);
        npow[v].push_back(Poly(1));
        dpow[v].push_back(Poly(1));
        for (int i = 1; i <= n; ++i) {
            npow[v].push_back(npow[v].back() * b.num());
            dpow[v].push_back(dpow[v].back() * b.den());
        }
    }
    Poly N;
    for (const auto& [m, c] : f.terms()) {
        Monomial rest = m;
        Poly t(c);
        for (const auto& [v, b] : bindings) {
            int e = mono_exp(m, v);
            if (v < static_cast<int>(rest.size())) rest[v] = 0;
            int n = maxdeg[v];
            if (n <= 0) continue;
            t = t * npow[v][e] * dpow[v][n - e];
        }
        mono_trim(rest);
        N += t * Poly::term(1, rest);
    }
    return RationalFn(N, D);
}

RationalFn substitute(const RationalFn& f, const std::map<int, RationalFn>& bindings) {
    return substitute(f.num(), bindings) / substitute(f.den(), bindings);
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    RationalFn parse() {
        RationalFn r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        throw PolyError("parse error at position " + std::to_string(pos_) + ": " + msg + " in '" + s_ + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char ch) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }
    RationalFn expr() {
        RationalFn r = term();
        for (;;) {
            if (eat('+'))
                r = r + term();
            else if (eat('-'))
                r = r - term();
            else
                return r;
        }
    }
    RationalFn term() {
        RationalFn r = unary();
        for (;;) {
            if (eat('*')) {
                r = r * unary();
            } else if (eat('/')) {
                RationalFn d = unary();
                if (!d.is_poly() || !d.num().is_constant()) register_factor(d.num());
                r = r / d;
            } else {
                return r;
            }
        }
    }
    RationalFn unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    RationalFn power() {
        RationalFn b = atom();
        if (eat('^')) {
            skip();
            size_t st = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (st == pos_) fail("expected exponent");
            b = b.pow(static_cast<unsigned>(std::stoul(s_.substr(st, pos_ - st))));
        }
        return b;
    }
    RationalFn atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char ch = s_[pos_];
        if (ch == '(') {
            ++pos_;
            RationalFn r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            size_t st = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string ip = s_.substr(st, pos_ - st);
            mpq_class v(ip.empty() ? mpz_class(0) : mpz_class(ip));
            if (pos_ < s_.size() && s_[pos_] == '.') {
                ++pos_;
                size_t fs = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                std::string fp = s_.substr(fs, pos_ - fs);
                if (!fp.empty()) {
                    mpz_class den = 1;
                    for (size_t i = 0; i < fp.size(); ++i) den *= 10;
                    v += mpq_class(mpz_class(fp), den);
                }
            }
            v.canonicalize();
            return RationalFn(v);
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t st = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            return RationalFn(Poly::var(s_.substr(st, pos_ - st)));
        }
        fail(std::string("unexpected character '") + ch + "'");
    }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace

RationalFn parse_expr(const std::string& text) { return Parser(text).parse(); }

Poly parse_poly(const std::string& text) {
    RationalFn r = parse_expr(text);
    if (!r.is_poly()) throw PolyError("expected a polynomial: " + text);
    return r.num();
}

}  // namespace alc
