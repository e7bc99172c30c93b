#include "alc/upoly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace alc {

UPoly::UPoly(std::vector<mpq_class> coeffs) : c(std::move(coeffs)) { trim(); }

UPoly UPoly::constant(const mpq_class& v) { return UPoly(std::vector<mpq_class>{v}); }

UPoly UPoly::from_poly(const Poly& p, int var) {
    UPoly u;
    for (const auto& [m, cf] : p.terms()) {
        for (size_t i = 0; i < m.size(); ++i)
            if (static_cast<int>(i) != var && m[i] != 0) throw PolyError("UPoly::from_poly: not univariate");
        int e = mono_exp(m, var);
        if (static_cast<int>(u.c.size()) <= e) u.c.resize(e + 1, 0);
        u.c[e] += cf;
    }
    u.trim();
    return u;
}

Poly UPoly::to_poly(int var) const {
    Poly r;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        Monomial m(var + 1, 0);
        m[var] = static_cast<int>(i);
        r += Poly::term(c[i], m);
    }
    return r;
}

void UPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

UPoly UPoly::operator+(const UPoly& o) const {
    UPoly r;
    r.c.assign(std::max(c.size(), o.c.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    r.trim();
    return r;
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator-() const {
    UPoly r = *this;
    for (auto& v : r.c) v = -v;
    return r;
}

UPoly UPoly::operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly();
    UPoly r;
    r.c.assign(c.size() + o.c.size() - 1, 0);
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    r.trim();
    return r;
}

UPoly UPoly::operator*(const mpq_class& s) const {
    UPoly r = *this;
    for (auto& v : r.c) v *= s;
    r.trim();
    return r;
}

void UPoly::divmod(const UPoly& d, UPoly& q, UPoly& r) const {
    if (d.is_zero()) throw PolyError("UPoly division by zero");
    r = *this;
    q = UPoly();
    if (degree() < d.degree()) return;
    q.c.assign(degree() - d.degree() + 1, 0);
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int k = r.degree() - d.degree();
        mpq_class f = r.lead() / d.lead();
        q.c[k] = f;
        for (int i = 0; i <= d.degree(); ++i) r.c[i + k] -= f * d.c[i];
        r.trim();
    }
    q.trim();
}

UPoly UPoly::operator%(const UPoly& d) const {
    UPoly q, r;
    divmod(d, q, r);
    return r;
}

UPoly UPoly::operator/(const UPoly& d) const {
    UPoly q, r;
    divmod(d, q, r);
    return q;
}

UPoly UPoly::derivative() const {
    UPoly r;
    if (c.size() <= 1) return r;
    r.c.resize(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) r.c[i - 1] = c[i] * static_cast<long>(i);
    r.trim();
    return r;
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    return *this * mpq_class(1 / lead());
}

mpq_class UPoly::eval(const mpq_class& t) const {
    mpq_class r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * t + c[i];
    return r;
}

double UPoly::eval(double t) const {
    double r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * t + c[i].get_d();
    return r;
}

std::complex<double> UPoly::eval(std::complex<double> t) const {
    std::complex<double> r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * t + c[i].get_d();
    return r;
}

int UPoly::sign_at(const mpq_class& t) const { return sgn(eval(t)); }

UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

UPoly squarefree_part(const UPoly& p) {
    if (p.degree() <= 0) return p.monic();
    UPoly g = gcd(p, p.derivative());
    return (p / g).monic();
}

std::optional<UPoly> inverse_mod(const UPoly& a, const UPoly& m) {
    // extended Euclid
    UPoly r0 = m, r1 = a % m, s0, s1 = UPoly::constant(1);
    while (!r1.is_zero()) {
        UPoly q, r;
        r0.divmod(r1, q, r);
        UPoly s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.degree() != 0) return std::nullopt;
    return (s0 * mpq_class(1 / r0.lead())) % m;
}

std::vector<UPoly> sturm_sequence(const UPoly& p) {
    std::vector<UPoly> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        UPoly r = seq[seq.size() - 2] % seq.back();
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    if (seq.back().is_zero()) seq.pop_back();
    return seq;
}

namespace {
int variations(const std::vector<UPoly>& seq, const mpq_class& t) {
    int v = 0, last = 0;
    for (const auto& s : seq) {
        int sg = s.sign_at(t);
        if (sg == 0) continue;
        if (last != 0 && sg != last) ++v;
        last = sg;
    }
    return v;
}
}  // namespace

int sturm_count(const std::vector<UPoly>& seq, const mpq_class& lo, const mpq_class& hi) {
    return variations(seq, lo) - variations(seq, hi);
}

mpq_class cauchy_bound(const UPoly& p) {
    mpq_class m = 0;
    for (int i = 0; i < p.degree(); ++i) {
        mpq_class r = abs(p.c[i] / p.lead());
        if (r > m) m = r;
    }
    return m + 1;
}

std::vector<RootInterval> real_roots(const UPoly& pin, const mpq_class& eps) {
    std::vector<RootInterval> out;
    UPoly p = squarefree_part(pin);
    if (p.degree() <= 0) return out;
    auto seq = sturm_sequence(p);
    mpq_class B = cauchy_bound(p);
    std::vector<std::pair<mpq_class, mpq_class>> stack{{-B, B}};
    std::vector<std::pair<mpq_class, mpq_class>> isolated;
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        int n = sturm_count(seq, lo, hi);
        if (n == 0) continue;
        if (n == 1) {
            isolated.emplace_back(lo, hi);
            continue;
        }
        mpq_class mid = (lo + hi) / 2;
        stack.emplace_back(mid, hi);
        stack.emplace_back(lo, mid);
    }
    std::sort(isolated.begin(), isolated.end());
    for (auto [lo, hi] : isolated) {
        RootInterval ri;
        if (p.sign_at(hi) == 0) {
            ri.lo = ri.hi = hi;
            ri.exact = true;
            out.push_back(ri);
            continue;
        }
        int shi = p.sign_at(hi);
        while (hi - lo > eps) {
            mpq_class mid = (lo + hi) / 2;
            int sm = p.sign_at(mid);
            if (sm == 0) {
                lo = hi = mid;
                ri.exact = true;
                break;
            }
            if (sm == shi)
                hi = mid;
            else
                lo = mid;
        }
        ri.lo = lo;
        ri.hi = hi;
        out.push_back(ri);
    }
    return out;
}

mpq_class simplest_between(mpq_class lo, mpq_class hi) {
    if (lo > hi) std::swap(lo, hi);
    if (lo <= 0 && hi >= 0) return 0;
    if (hi < 0) return -simplest_between(-hi, -lo);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    if (mpq_class(fl) == lo) return lo;
    if (mpq_class(fl + 1) <= hi) return mpq_class(fl + 1);
    return mpq_class(fl) + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl));
}

std::vector<mpq_class> rational_roots(const UPoly& pin) {
    std::vector<mpq_class> out;
    UPoly p = squarefree_part(pin);
    if (p.degree() <= 0) return out;
    if (p.c[0] == 0) {
        out.push_back(0);
        p = p / UPoly(std::vector<mpq_class>{0, 1});
    }
    // height bound for a rational root p/q: q divides the integer leading coefficient
    mpz_class lcm_den = 1;
    for (const auto& v : p.c) lcm_den = lcm(lcm_den, mpz_class(v.get_den()));
    mpz_class lead = abs(mpz_class(p.lead() * lcm_den));
    mpq_class eps = mpq_class(1, 4) / (mpq_class(lead) * lead + 1);
    for (auto& ri : real_roots(p, eps)) {
        if (ri.exact) {
            out.push_back(ri.lo);
            continue;
        }
        mpq_class cand = simplest_between(ri.lo, ri.hi);
        if (p.eval(cand) == 0) out.push_back(cand);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::complex<double>> complex_roots(const UPoly& pin) {
    UPoly p = squarefree_part(pin);
    int n = p.degree();
    std::vector<std::complex<double>> out;
    if (n <= 0) return out;
    if (n == 1) {
        out.emplace_back(mpq_class(-p.c[0] / p.c[1]).get_d(), 0.0);
        return out;
    }
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -mpq_class(p.c[i] / p.lead()).get_d();
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    UPoly dp = p.derivative();
    for (int i = 0; i < n; ++i) {
        std::complex<double> z = es.eigenvalues()[i];
        for (int it = 0; it < 50; ++it) {
            std::complex<double> f = p.eval(z), d = dp.eval(z);
            if (std::abs(d) == 0) break;
            std::complex<double> step = f / d;
            z -= step;
            if (std::abs(step) <= 1e-16 * (1 + std::abs(z))) break;
        }
        out.push_back(z);
    }
    return out;
}

mpq_class det(std::vector<std::vector<mpq_class>> m) {
    size_t n = m.size();
    mpq_class d = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            d = -d;
        }
        d *= m[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            mpq_class f = m[r][col] / m[col][col];
            for (size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
        }
    }
    return d;
}

namespace {
std::vector<std::vector<mpq_class>> sylvester(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
    // a, b: coefficient lists, index = power, formal degrees a.size()-1, b.size()-1
    int m = static_cast<int>(a.size()) - 1, n = static_cast<int>(b.size()) - 1;
    int N = m + n;
    std::vector<std::vector<mpq_class>> S(N, std::vector<mpq_class>(N, 0));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) S[r][r + i] = a[m - i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) S[n + r][r + i] = b[n - i];
    return S;
}
}  // namespace

mpq_class resultant(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    if (a.degree() == 0 && b.degree() == 0) return 1;
    return det(sylvester(a.c, b.c));
}

UPoly resultant_y(const Poly& p, const Poly& q, int xv, int yv) {
    int m = p.degree_in(yv), n = q.degree_in(yv);
    if (p.is_zero() || q.is_zero()) return UPoly();
    auto pc = p.coeffs_in({yv});
    auto qc = q.coeffs_in({yv});
    std::vector<UPoly> pa(m + 1), qa(n + 1);
    for (const auto& [k, c] : pc) pa[k[0]] = UPoly::from_poly(c, xv);
    for (const auto& [k, c] : qc) qa[k[0]] = UPoly::from_poly(c, xv);
    int dx = 0;
    for (auto& u : pa) dx = std::max(dx, u.degree());
    int dq = 0;
    for (auto& u : qa) dq = std::max(dq, u.degree());
    int D = dx * n + dq * m;
    std::vector<mpq_class> xs, ys;
    for (int i = 0; i <= D; ++i) {
        mpq_class t = i - D / 2;
        std::vector<mpq_class> av(m + 1), bv(n + 1);
        for (int k = 0; k <= m; ++k) av[k] = pa[k].eval(t);
        for (int k = 0; k <= n; ++k) bv[k] = qa[k].eval(t);
        mpq_class r;
        if (m == 0 && n == 0)
            r = 1;
        else
            r = det(sylvester(av, bv));
        xs.push_back(t);
        ys.push_back(r);
    }
    // Newton interpolation
    std::vector<mpq_class> dd = ys;
    for (int j = 1; j <= D; ++j)
        for (int i = D; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
    UPoly res = UPoly::constant(dd[D]);
    for (int i = D - 1; i >= 0; --i) {
        res = res * UPoly(std::vector<mpq_class>{-xs[i], 1}) + UPoly::constant(dd[i]);
    }
    return res;
}

}  // namespace alc
