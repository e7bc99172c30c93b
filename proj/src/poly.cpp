#include "alc/poly.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace alc {

namespace {

struct VarTable {
    std::mutex mu;
    std::vector<std::string> names;
    std::unordered_map<std::string, int> ids;
    VarTable() {
        for (const char* n : {"x", "y", "z", "X", "Y", "Z", "U", "V", "W", "u", "v", "w", "t", "s",
                              "a", "b", "c", "alpha", "beta", "gamma"}) {
            ids[n] = static_cast<int>(names.size());
            names.emplace_back(n);
        }
    }
};

VarTable& table() {
    static VarTable t;
    return t;
}

}  // namespace

int var_id(const std::string& name) {
    auto& t = table();
    std::lock_guard<std::mutex> lk(t.mu);
    auto it = t.ids.find(name);
    if (it != t.ids.end()) return it->second;
    int id = static_cast<int>(t.names.size());
    t.names.push_back(name);
    t.ids[name] = id;
    return id;
}

const std::string& var_name(int id) {
    auto& t = table();
    std::lock_guard<std::mutex> lk(t.mu);
    if (id < 0 || id >= static_cast<int>(t.names.size())) throw PolyError("unknown variable id");
    return t.names[id];
}

int var_count() {
    auto& t = table();
    std::lock_guard<std::mutex> lk(t.mu);
    return static_cast<int>(t.names.size());
}

int mono_degree(const Monomial& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

int mono_exp(const Monomial& m, int var) {
    return var < static_cast<int>(m.size()) ? m[var] : 0;
}

void mono_trim(Monomial& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

bool mono_divides(const Monomial& a, const Monomial& b) {
    if (a.size() > b.size()) {
        for (size_t i = b.size(); i < a.size(); ++i)
            if (a[i] > 0) return false;
    }
    for (size_t i = 0; i < std::min(a.size(), b.size()); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Monomial mono_div(const Monomial& b, const Monomial& a) {
    Monomial r = b;
    for (size_t i = 0; i < a.size(); ++i) r[i] -= a[i];
    mono_trim(r);
    return r;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da > db;
    size_t n = std::max(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        int ea = i < a.size() ? a[i] : 0;
        int eb = i < b.size() ? b[i] : 0;
        if (ea != eb) return ea > eb;
    }
    return false;
}

Poly::Poly(long c) {
    if (c != 0) terms_.emplace(Monomial{}, mpq_class(c));
}

Poly::Poly(const mpq_class& c) {
    if (c == 0) return;
    mpq_class v = c;
    v.canonicalize();
    terms_.emplace(Monomial{}, std::move(v));
}

Poly Poly::var(const std::string& name) { return var(var_id(name)); }

Poly Poly::var(int id) {
    Monomial m(id + 1, 0);
    m[id] = 1;
    return term(1, m);
}

Poly Poly::term(const mpq_class& c, const Monomial& m) {
    Poly p;
    Monomial mm = m;
    mono_trim(mm);
    if (c == 0) return p;
    mpq_class v = c;
    v.canonicalize();
    p.terms_.emplace(std::move(mm), std::move(v));
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

mpq_class Poly::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? mpq_class(0) : it->second;
}

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    return mono_degree(terms_.begin()->first);
}

int Poly::degree_in(int var) const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_exp(m, var));
    return d;
}

int Poly::degree_in(const std::vector<int>& vars) const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& [m, c] : terms_) {
        int s = 0;
        for (int v : vars) s += mono_exp(m, v);
        d = std::max(d, s);
    }
    return d;
}

int Poly::min_degree_in(const std::vector<int>& vars) const {
    if (terms_.empty()) return -1;
    int d = 1 << 30;
    for (const auto& [m, c] : terms_) {
        int s = 0;
        for (int v : vars) s += mono_exp(m, v);
        d = std::min(d, s);
    }
    return d;
}

std::vector<int> Poly::variables() const {
    std::vector<int> out;
    for (const auto& [m, c] : terms_)
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0 && std::find(out.begin(), out.end(), static_cast<int>(i)) == out.end())
                out.push_back(static_cast<int>(i));
    std::sort(out.begin(), out.end());
    return out;
}

bool Poly::depends_on(int var) const {
    for (const auto& [m, c] : terms_)
        if (mono_exp(m, var) > 0) return true;
    return false;
}

bool Poly::depends_on_any(const std::vector<int>& vars) const {
    for (int v : vars)
        if (depends_on(v)) return true;
    return false;
}

const Monomial& Poly::leading_mono() const {
    if (terms_.empty()) throw PolyError("leading term of zero polynomial");
    return terms_.begin()->first;
}

const mpq_class& Poly::leading_coeff() const {
    if (terms_.empty()) throw PolyError("leading term of zero polynomial");
    return terms_.begin()->second;
}

void Poly::add_term(const Monomial& m, const mpq_class& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m = mono_mul(ma, mb);
            r.add_term(m, ca * cb);
        }
    return r;
}

Poly& Poly::operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
}

Poly& Poly::operator*=(const mpq_class& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    mpq_class k = c;
    k.canonicalize();
    for (auto& [m, v] : terms_) v *= k;
    return *this;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [m, v] : r.terms_) v = -v;
    return r;
}

bool Poly::operator==(const Poly& o) const { return terms_ == o.terms_; }

Poly Poly::pow(unsigned n) const {
    Poly r(1), base = *this;
    while (n) {
        if (n & 1) r = r * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return r;
}

Poly Poly::diff(int var) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        int e = mono_exp(m, var);
        if (e == 0) continue;
        Monomial mm = m;
        mm[var] -= 1;
        mono_trim(mm);
        r.add_term(mm, c * e);
    }
    return r;
}

Poly Poly::subs(const std::map<int, Poly>& bindings) const {
    // cache powers per variable
    std::map<int, std::vector<Poly>> pw;
    Poly r;
    for (const auto& [m, c] : terms_) {
        Monomial rest = m;
        Poly t(c);
        for (const auto& [v, val] : bindings) {
            int e = mono_exp(m, v);
            if (e == 0) continue;
            rest[v] = 0;
            auto& cache = pw[v];
            if (cache.empty()) cache.push_back(Poly(1));
            while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * val);
            t = t * cache[e];
        }
        mono_trim(rest);
        r += t * Poly::term(1, rest);
    }
    return r;
}

Poly Poly::subs(int var, const Poly& value) const { return subs(std::map<int, Poly>{{var, value}}); }

Poly Poly::eval(const std::map<int, mpq_class>& values) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        mpq_class cc = c;
        Monomial rest = m;
        for (const auto& [v, val] : values) {
            int e = mono_exp(m, v);
            if (e == 0) continue;
            rest[v] = 0;
            mpq_class p = 1;
            for (int i = 0; i < e; ++i) p *= val;
            cc *= p;
        }
        mono_trim(rest);
        r.add_term(rest, cc);
    }
    return r;
}

Poly Poly::rename(const std::map<int, int>& ren) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        Monomial nm;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            auto it = ren.find(static_cast<int>(i));
            int target = it == ren.end() ? static_cast<int>(i) : it->second;
            if (static_cast<int>(nm.size()) <= target) nm.resize(target + 1, 0);
            nm[target] += m[i];
        }
        mono_trim(nm);
        r.add_term(nm, c);
    }
    return r;
}

std::map<Monomial, Poly, GrlexGreater> Poly::coeffs_in(const std::vector<int>& vars) const {
    std::map<Monomial, Poly, GrlexGreater> out;
    for (const auto& [m, c] : terms_) {
        Monomial key(vars.size(), 0);
        Monomial rest = m;
        for (size_t i = 0; i < vars.size(); ++i) {
            key[i] = mono_exp(m, vars[i]);
            if (vars[i] < static_cast<int>(rest.size())) rest[vars[i]] = 0;
        }
        mono_trim(rest);
        out[key] += Poly::term(c, rest);
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero())
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

Poly Poly::coeff_of(const std::vector<int>& vars, const std::vector<int>& exps) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        bool ok = true;
        for (size_t i = 0; i < vars.size(); ++i)
            if (mono_exp(m, vars[i]) != exps[i]) {
                ok = false;
                break;
            }
        if (!ok) continue;
        Monomial rest = m;
        for (int v : vars)
            if (v < static_cast<int>(rest.size())) rest[v] = 0;
        mono_trim(rest);
        r.add_term(rest, c);
    }
    return r;
}

mpq_class Poly::content() const {
    if (terms_.empty()) return 0;
    mpz_class num = 0, den = 1;
    for (const auto& [m, c] : terms_) {
        mpz_class n = abs(c.get_num());
        num = gcd(num, n);
        den = lcm(den, mpz_class(c.get_den()));
    }
    return mpq_class(num, den);
}

Poly Poly::primitive() const {
    if (terms_.empty()) return *this;
    mpq_class ct = content();
    Poly r = *this * mpq_class(1 / ct);
    if (r.leading_coeff() < 0) r = -r;
    return r;
}

Poly Poly::monic() const {
    if (terms_.empty()) return *this;
    return *this * mpq_class(1 / leading_coeff());
}

std::string rat_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        mpq_class a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            if (a < 0) {
                os << " - ";
                a = -a;
            } else {
                os << " + ";
            }
        }
        os << rat_str(a);
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            os << "*" << var_name(static_cast<int>(i));
            if (m[i] > 1) os << "^" << m[i];
        }
        first = false;
    }
    return os.str();
}

std::optional<Poly> divide_exact(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw PolyError("division by zero polynomial");
    Poly r = f, q;
    const Monomial& lg = g.leading_mono();
    const mpq_class& cg = g.leading_coeff();
    while (!r.is_zero()) {
        const Monomial& lr = r.leading_mono();
        if (!mono_divides(lg, lr)) return std::nullopt;
        Poly t = Poly::term(r.leading_coeff() / cg, mono_div(lr, lg));
        q += t;
        r -= t * g;
    }
    return q;
}

Poly homogenize(const Poly& f, const std::vector<int>& main_vars, const std::vector<int>& hom_vars, int degree) {
    if (hom_vars.size() != main_vars.size() + 1) throw PolyError("homogenize: variable count mismatch");
    int d = f.degree_in(main_vars);
    if (d > degree) throw PolyError("homogenize: degree too small");
    std::map<int, int> ren;
    for (size_t i = 0; i < main_vars.size(); ++i) ren[main_vars[i]] = hom_vars[i];
    Poly out;
    for (const auto& [m, c] : f.terms()) {
        int k = 0;
        for (int v : main_vars) k += mono_exp(m, v);
        Monomial extra(hom_vars.back() + 1, 0);
        extra[hom_vars.back()] = degree - k;
        out += Poly::term(c, mono_mul(m, Monomial{})).rename(ren) * Poly::term(1, extra);
    }
    return out;
}

Poly dehomogenize(const Poly& F, const std::vector<int>& hom_vars, const std::vector<int>& main_vars) {
    if (hom_vars.size() != main_vars.size() + 1) throw PolyError("dehomogenize: variable count mismatch");
    Poly g = F.eval({{hom_vars.back(), mpq_class(1)}});
    std::map<int, int> ren;
    for (size_t i = 0; i < main_vars.size(); ++i) ren[hom_vars[i]] = main_vars[i];
    return g.rename(ren);
}

Poly SqrtRel::reduce(const Poly& f) const {
    if (root < 0) return f;
    int d = f.degree_in(root);
    if (d < 2) return f;
    auto parts = f.coeffs_in({root});
    std::vector<Poly> rpow(d / 2 + 1);
    rpow[0] = Poly(1);
    for (size_t i = 1; i < rpow.size(); ++i) rpow[i] = rpow[i - 1] * radicand;
    Poly out, s = Poly::var(root);
    for (const auto& [k, c] : parts) {
        int e = k[0];
        Poly t = c * rpow[e / 2];
        if (e % 2) t = t * s;
        out += t;
    }
    return out;
}

int order_at(const Poly& f, const std::vector<int>& vars, const std::vector<Poly>& point, const SqrtRel* rel) {
    if (f.is_zero()) throw PolyError("order of zero polynomial is undefined");
    std::map<int, Poly> b;
    for (size_t i = 0; i < vars.size(); ++i) b[vars[i]] = Poly::var(vars[i]) + point[i];
    Poly g = f.subs(b);
    if (rel) g = rel->reduce(g);
    if (g.is_zero()) throw PolyError("order of zero polynomial is undefined");
    return g.min_degree_in(vars);
}

}  // namespace alc
