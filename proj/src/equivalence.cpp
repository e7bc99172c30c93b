#include <algorithm>

#include "alc/families.hpp"
#include "alc/sqrt_ext.hpp"

namespace alc {

namespace {

using K = QuadElem;
using Q6 = std::array<K, 6>;  // coefficients of 1, u, v, u^2, uv, v^2

struct KSys {
    Q6 p{}, q{};
};

struct Lin {
    K c0, cu, cv;
};

Q6 mul(const Lin& a, const Lin& b) {
    return {a.c0 * b.c0, a.c0 * b.cu + a.cu * b.c0, a.c0 * b.cv + a.cv * b.c0,
            a.cu * b.cu, a.cu * b.cv + a.cv * b.cu, a.cv * b.cv};
}

Q6 compose(const Q6& f, const Lin& X, const Lin& Y) {
    Q6 r{};
    r[0] = f[0];
    Q6 lx{X.c0, X.cu, X.cv, K(), K(), K()}, ly{Y.c0, Y.cu, Y.cv, K(), K(), K()};
    Q6 xx = mul(X, X), xy_ = mul(X, Y), yy = mul(Y, Y);
    for (int i = 0; i < 6; ++i)
        r[i] += f[1] * lx[i] + f[2] * ly[i] + f[3] * xx[i] + f[4] * xy_[i] + f[5] * yy[i];
    return r;
}

// new = tau M^-1 old(M u + t)
KSys transform(const KSys& A, const std::array<K, 4>& M, const std::array<K, 2>& t, const K& tau) {
    Lin X{t[0], M[0], M[1]}, Y{t[1], M[2], M[3]};
    Q6 P = compose(A.p, X, Y), Q = compose(A.q, X, Y);
    K det = M[0] * M[3] - M[1] * M[2];
    K s = tau / det;
    KSys r;
    for (int i = 0; i < 6; ++i) {
        r.p[i] = s * (M[3] * P[i] - M[1] * Q[i]);
        r.q[i] = s * (M[0] * Q[i] - M[2] * P[i]);
    }
    return r;
}

bool same(const KSys& a, const KSys& b) { return a.p == b.p && a.q == b.q; }

struct Field {
    int root = -1;
    mpq_class d = 0;
};

std::optional<K> to_k(const RationalFn& c, const Field& fld) {
    if (!c.den().is_constant()) return std::nullopt;
    mpq_class den = c.den().constant_term();
    K out;
    out.d = fld.d;
    for (const auto& [m, co] : c.num().coeffs_in(fld.root >= 0 ? std::vector<int>{fld.root} : std::vector<int>{})) {
        if (!co.is_constant()) return std::nullopt;
        int e = m.empty() ? 0 : m[0];
        if (e == 0) out.a = co.constant_term() / den;
        else if (e == 1) out.b = co.constant_term() / den;
        else return std::nullopt;
    }
    return out;
}

std::optional<KSys> to_ksys(const AffineSystem& s, const Field& fld) {
    if (s.degree() > 2) return std::nullopt;
    auto c = quad_coeffs(s);
    KSys r;
    static const int pos[6] = {0, 1, 2, 3, 4, 5};  // a00 a10 a01 a20 a11 a02 match 1 u v u^2 uv v^2
    for (int i = 0; i < 6; ++i) {
        auto a = to_k(s.norm(c[i]), fld), b = to_k(s.norm(c[6 + i]), fld);
        if (!a || !b) return std::nullopt;
        r.p[pos[i]] = *a;
        r.q[pos[i]] = *b;
    }
    return r;
}

RationalFn from_k(const K& v, const Field& fld) {
    RationalFn r(v.a);
    if (v.b != 0) r += RationalFn(v.b) * RationalFn(Poly::var(fld.root));
    return r;
}

// Null space of a small matrix over K.
std::vector<std::vector<K>> null_space(std::vector<std::vector<K>> m, int n) {
    std::vector<int> pivcol;
    int r = 0;
    for (int c = 0; c < n && r < static_cast<int>(m.size()); ++c) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(m.size()); ++i)
            if (!m[i][c].is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        K inv = m[r][c].inverse();
        for (auto& e : m[r]) e = e * inv;
        for (int i = 0; i < static_cast<int>(m.size()); ++i)
            if (i != r && !m[i][c].is_zero()) {
                K f = m[i][c];
                for (int j = 0; j < n; ++j) m[i][j] -= f * m[r][j];
            }
        pivcol.push_back(c);
        ++r;
    }
    std::vector<std::vector<K>> basis;
    for (int fc = 0; fc < n; ++fc) {
        if (std::find(pivcol.begin(), pivcol.end(), fc) != pivcol.end()) continue;
        std::vector<K> v(n);
        v[fc] = K(1);
        for (int i = 0; i < static_cast<int>(pivcol.size()); ++i) v[pivcol[i]] = -m[i][fc];
        basis.push_back(v);
    }
    return basis;
}

// Univariate polynomials over K, index = degree.
using KP = std::vector<K>;

void trim(KP& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}
KP padd(KP a, const KP& b, int sgn = 1) {
    if (a.size() < b.size()) a.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) a[i] = sgn > 0 ? a[i] + b[i] : a[i] - b[i];
    trim(a);
    return a;
}
KP pmul(const KP& a, const KP& b) {
    if (a.empty() || b.empty()) return {};
    KP r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}
KP pscale(KP a, const K& s) {
    for (auto& e : a) e = e * s;
    trim(a);
    return a;
}
KP pmod(KP a, const KP& b) {
    while (a.size() >= b.size() && !a.empty()) {
        K f = a.back() / b.back();
        size_t sh = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[sh + i] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}
KP pmonic(const KP& a) { return a.empty() ? a : pscale(a, a.back().inverse()); }
KP pgcd(KP a, KP b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        KP r = pmod(a, b);
        a = b;
        b = r;
    }
    return pmonic(a);
}
K peval(const KP& a, const K& x) {
    K r;
    for (size_t i = a.size(); i-- > 0;) r = r * x + a[i];
    return r;
}

std::vector<K> k_roots(const KP& g, const mpq_class& d) {
    if (g.size() == 2) return {-g[0] / g[1]};
    std::vector<K> out;
    // conjugation-invariant part has rational coefficients
    KP conj = g;
    for (auto& e : conj) e.b = -e.b;
    KP h = pgcd(g, conj);
    if (h.size() < 2) return out;
    std::vector<mpq_class> c;
    for (const auto& e : h) c.push_back(e.a);
    for (const auto& r : rational_roots(UPoly(c))) out.push_back(K(r, 0, d));
    return out;
}

struct Candidate {
    std::array<K, 4> M;
    std::array<K, 2> t;
    K tau;
};

std::optional<mpq_class> rational_sqrt(const mpq_class& r) {
    if (r < 0) return std::nullopt;
    mpz_class n = r.get_num(), dd = r.get_den();
    mpz_class sn = sqrt(n), sd = sqrt(dd);
    if (sn * sn != n || sd * sd != dd) return std::nullopt;
    return mpq_class(sn, sd);
}

std::optional<Candidate> try_pair(const KSys& A, const KSys& B, const std::array<K, 2>& sa, const std::array<K, 2>& sb,
                                  const mpq_class& d) {
    std::array<K, 4> I{K(1), K(), K(), K(1)};
    KSys At = transform(A, I, sa, K(1)), Bt = transform(B, I, sb, K(1));
    if (!At.p[0].is_zero() || !At.q[0].is_zero() || !Bt.p[0].is_zero() || !Bt.q[0].is_zero()) return std::nullopt;
    K JA[2][2] = {{At.p[1], At.p[2]}, {At.q[1], At.q[2]}};
    K JB[2][2] = {{Bt.p[1], Bt.p[2]}, {Bt.q[1], Bt.q[2]}};
    K trA = JA[0][0] + JA[1][1], trB = JB[0][0] + JB[1][1];
    std::vector<K> taus;
    if (!trA.is_zero()) {
        if (!trB.is_zero()) taus.push_back(trB / trA);
    } else if (trB.is_zero()) {
        K dA = JA[0][0] * JA[1][1] - JA[0][1] * JA[1][0], dB = JB[0][0] * JB[1][1] - JB[0][1] * JB[1][0];
        if (!dA.is_zero() && !dB.is_zero()) {
            K r = dB / dA;
            if (r.b == 0)
                if (auto s = rational_sqrt(r.a)) {
                    taus.push_back(K(*s, 0, d));
                    taus.push_back(K(-*s, 0, d));
                }
        }
    }
    Q6 const& A2p = At.p;
    Q6 const& A2q = At.q;
    for (const K& tau : taus) {
        // tau JA M - M JB = 0, unknowns (m11, m12, m21, m22)
        std::vector<std::vector<K>> rows;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                std::vector<K> row(4);
                for (int k = 0; k < 2; ++k) {
                    row[k * 2 + j] += tau * JA[i][k];
                    row[i * 2 + k] -= JB[k][j];
                }
                rows.push_back(row);
            }
        auto basis = null_space(rows, 4);
        if (basis.empty() || basis.size() > 2) continue;
        // entries of M as polynomials in lambda: basis[0] + lambda basis[1]
        std::vector<std::vector<std::vector<K>>> directions;
        if (basis.size() == 1) directions.push_back({basis[0]});
        else {
            directions.push_back({basis[0], basis[1]});
            directions.push_back({basis[1]});
        }
        for (const auto& dir : directions) {
            std::array<KP, 4> m;
            for (int e = 0; e < 4; ++e) {
                m[e] = {dir[0][e]};
                if (dir.size() > 1) m[e].push_back(dir[1][e]);
                trim(m[e]);
            }
            // M B2 (linear in lambda) vs tau A2(M u) (quadratic in lambda)
            std::vector<KP> L, Q;
            const Q6* B2[2] = {&Bt.p, &Bt.q};
            const Q6* A2[2] = {&A2p, &A2q};
            for (int c = 0; c < 2; ++c) {
                for (int mono = 3; mono < 6; ++mono)
                    L.push_back(padd(pscale(m[c * 2 + 0], (*B2[0])[mono]), pscale(m[c * 2 + 1], (*B2[1])[mono])));
                const Q6& f = *A2[c];
                KP a11 = m[0], a12 = m[1], a21 = m[2], a22 = m[3];
                KP uu = padd(padd(pscale(pmul(a11, a11), f[3]), pscale(pmul(a11, a21), f[4])), pscale(pmul(a21, a21), f[5]));
                KP uv = padd(padd(pscale(pmul(a11, a12), f[3] * K(2)),
                                  pscale(padd(pmul(a11, a22), pmul(a12, a21)), f[4])),
                             pscale(pmul(a21, a22), f[5] * K(2)));
                KP vv = padd(padd(pscale(pmul(a12, a12), f[3]), pscale(pmul(a12, a22), f[4])), pscale(pmul(a22, a22), f[5]));
                Q.push_back(pscale(uu, tau));
                Q.push_back(pscale(uv, tau));
                Q.push_back(pscale(vv, tau));
            }
            std::vector<K> lambdas;
            if (dir.size() == 1) lambdas.push_back(K(0));
            else {
                KP g;
                for (size_t i = 0; i < L.size(); ++i)
                    for (size_t j = i + 1; j < L.size(); ++j) {
                        KP cij = padd(pmul(L[i], Q[j]), pmul(L[j], Q[i]), -1);
                        if (!cij.empty()) g = g.empty() ? pmonic(cij) : pgcd(g, cij);
                    }
                if (g.empty()) lambdas = {K(0), K(1), K(-1), K(2)};
                else if (g.size() >= 2) lambdas = k_roots(g, d);
            }
            for (const K& lam : lambdas) {
                std::optional<K> mu;
                for (size_t i = 0; i < Q.size() && !mu; ++i) {
                    K qv = peval(Q[i], lam);
                    if (!qv.is_zero()) mu = peval(L[i], lam) / qv;
                }
                if (!mu || mu->is_zero()) continue;
                Candidate cand;
                for (int e = 0; e < 4; ++e) cand.M[e] = *mu * peval(m[e], lam);
                K det = cand.M[0] * cand.M[3] - cand.M[1] * cand.M[2];
                if (det.is_zero()) continue;
                cand.t = {sa[0] - (cand.M[0] * sb[0] + cand.M[1] * sb[1]), sa[1] - (cand.M[2] * sb[0] + cand.M[3] * sb[1])};
                cand.tau = tau;
                if (same(transform(A, cand.M, cand.t, tau), B)) return cand;
            }
        }
    }
    return std::nullopt;
}

// Coefficients in y of one component: c0(x) + c1(x) y + c2 y^2.
std::array<KP, 3> y_coeffs(const Q6& f) {
    std::array<KP, 3> c{KP{f[0], f[1], f[3]}, KP{f[2], f[4]}, KP{f[5]}};
    for (auto& e : c) trim(e);
    return c;
}

KP conj(KP a) {
    for (auto& e : a) e.b = -e.b;
    return a;
}

std::vector<K> solve_in_k(const KP& g, const mpq_class& d) {
    if (g.size() == 2) return {-g[0] / g[1]};
    if (g.size() == 3) return k_roots(g, d);
    return {};
}

// Finite singular points with both coordinates in Q(sqrt d).
std::vector<std::array<K, 2>> k_points(const KSys& s, const mpq_class& d) {
    std::vector<std::array<K, 2>> pts;
    auto a = y_coeffs(s.p), b = y_coeffs(s.q);
    KP R;
    if (a[2].empty() && b[2].empty()) {
        R = padd(pmul(a[1], b[0]), pmul(a[0], b[1]), -1);
    } else {
        KP u = padd(pmul(a[2], b[0]), pmul(a[0], b[2]), -1);
        KP v = padd(pmul(a[2], b[1]), pmul(a[1], b[2]), -1);
        KP w = padd(pmul(a[1], b[0]), pmul(a[0], b[1]), -1);
        R = padd(pmul(u, u), pmul(v, w), -1);
    }
    if (R.size() < 2) return pts;
    KP N = pmul(R, conj(R));
    std::vector<mpq_class> nc;
    for (const auto& e : N) nc.push_back(e.a);
    UPoly NQ = squarefree_part(UPoly(nc));
    std::vector<K> xs;
    auto add_x = [&](const K& x) {
        if (!peval(R, x).is_zero()) return;
        for (const auto& e : xs)
            if (e == x) return;
        xs.push_back(x);
    };
    for (const auto& r : rational_roots(NQ)) add_x(K(r, 0, d));
    if (d != 0) {
        mpq_class eps(1, 1);
        eps /= mpz_class("1" + std::string(60, '0'));
        auto roots = real_roots(NQ, eps);
        for (size_t i = 0; i < roots.size(); ++i)
            for (size_t j = i + 1; j < roots.size(); ++j) {
                mpq_class sum = simplest_between(roots[i].lo + roots[j].lo, roots[i].hi + roots[j].hi);
                mpq_class lo_p = std::min({roots[i].lo * roots[j].lo, roots[i].lo * roots[j].hi, roots[i].hi * roots[j].lo, roots[i].hi * roots[j].hi});
                mpq_class hi_p = std::max({roots[i].lo * roots[j].lo, roots[i].lo * roots[j].hi, roots[i].hi * roots[j].lo, roots[i].hi * roots[j].hi});
                mpq_class prod = simplest_between(lo_p, hi_p);
                UPoly quad(std::vector<mpq_class>{prod, -sum, 1});
                if (!(NQ % quad).is_zero()) continue;
                mpq_class disc = (sum * sum - 4 * prod) / d;
                auto r = rational_sqrt(disc);
                if (!r) continue;
                add_x(K(sum / 2, *r / 2, d));
                add_x(K(sum / 2, -*r / 2, d));
            }
    }
    for (const auto& x : xs) {
        KP pa{peval(a[0], x), peval(a[1], x), a[2].empty() ? K() : a[2][0]};
        KP qa{peval(b[0], x), peval(b[1], x), b[2].empty() ? K() : b[2][0]};
        trim(pa);
        trim(qa);
        if (pa.empty() && qa.empty()) continue;
        KP g = pa.empty() ? pmonic(qa) : (qa.empty() ? pmonic(pa) : pgcd(pa, qa));
        for (const auto& y : solve_in_k(g, d)) pts.push_back({x, y});
    }
    return pts;
}

std::vector<std::array<K, 2>> rational_points(const KSys& ks, const mpq_class& d) {
    std::vector<std::array<K, 2>> pts;
    if (ks.p[0].is_zero() && ks.q[0].is_zero()) pts.push_back({K(0, 0, d), K(0, 0, d)});
    for (const auto& pt : k_points(ks, d))
        if (!(pt[0].is_zero() && pt[1].is_zero())) pts.push_back(pt);
    return pts;
}

UPoly charpoly(const std::vector<std::vector<mpq_class>>& M) {
    int n = static_cast<int>(M.size());
    std::vector<mpq_class> c(n + 1);
    c[n] = 1;
    std::vector<std::vector<mpq_class>> Mk(n, std::vector<mpq_class>(n, 0));
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<mpq_class>> T(n, std::vector<mpq_class>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                for (int l = 0; l < n; ++l) T[i][j] += M[i][l] * Mk[l][j];
                if (i == j) T[i][j] += c[n - k + 1];
            }
        Mk = T;
        mpq_class tr = 0;
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) tr += M[i][l] * Mk[l][i];
        c[n - k] = -tr / k;
    }
    return UPoly(c);
}

UPoly mulmod(const UPoly& a, const UPoly& b, const UPoly& R) { return (a * b) % R; }

}  // namespace

SingularInvariant singular_ratio_invariant(const Poly& p0, const Poly& q0) {
    const auto& ids = xy();
    Poly X = Poly::var(ids.x), Y = Poly::var(ids.y);
    SingularInvariant out;
    for (int k : {0, 1, -1, 2, -2, 3, 5, -7, 11}) {
        Poly p = p0.subs({{ids.x, X + Y * mpq_class(k)}}), q = q0.subs({{ids.x, X + Y * mpq_class(k)}});
        p = p - q * mpq_class(k);
        UPoly R = resultant_y(p, q, ids.x, ids.y);
        if (R.is_zero()) return out;
        R = squarefree_part(R).monic();
        int n = R.degree();
        if (n <= 0) {
            out.available = true;
            out.variant = 1;
            out.charpoly = UPoly::constant(1);
            return out;
        }
        auto ycoef = [&](const Poly& f) {
            std::vector<UPoly> c;
            for (int j = 0; j <= std::max(0, f.degree_in(ids.y)); ++j)
                c.push_back(UPoly::from_poly(f.coeff_of({ids.y}, {j}), ids.x) % R);
            while (c.size() < 3) c.push_back(UPoly());
            return c;
        };
        auto pc = ycoef(p), qc = ycoef(q);
        std::vector<std::pair<UPoly, UPoly>> lin;  // (L1, L0)
        if (pc.size() <= 3 && qc.size() <= 3) {
            if (!(pc[2].is_zero() && qc[2].is_zero()))
                lin.push_back({qc[2] * pc[1] - pc[2] * qc[1], qc[2] * pc[0] - pc[2] * qc[0]});
            if (pc[2].is_zero()) lin.push_back({pc[1], pc[0]});
            if (qc[2].is_zero()) lin.push_back({qc[1], qc[0]});
        }
        std::optional<UPoly> Yx;
        for (const auto& [l1, l0] : lin)
            if (auto inv = inverse_mod(l1 % R, R)) {
                Yx = mulmod(-l0, *inv, R);
                break;
            }
        if (!Yx) continue;
        auto at = [&](const Poly& f) {
            UPoly r;
            for (int j = f.degree_in(ids.y); j >= 0; --j)
                r = mulmod(r, *Yx, R) + UPoly::from_poly(f.coeff_of({ids.y}, {j}), ids.x) % R;
            return r % R;
        };
        UPoly px = at(p.diff(ids.x)), py = at(p.diff(ids.y)), qx = at(q.diff(ids.x)), qy = at(q.diff(ids.y));
        UPoly tr = (px + qy) % R;
        UPoly dt = (px * qy - py * qx) % R;
        UPoly tr2 = mulmod(tr, tr, R);
        UPoly h;
        if (auto inv = inverse_mod(dt, R)) {
            h = mulmod(tr2, *inv, R);
            out.variant = 1;
        } else if (auto inv2 = inverse_mod(tr2, R)) {
            h = mulmod(dt, *inv2, R);
            out.variant = 2;
        } else {
            return out;
        }
        std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n, 0));
        UPoly col = h;
        UPoly xv(std::vector<mpq_class>{0, 1});
        for (int i = 0; i < n; ++i) {
            for (int r = 0; r <= col.degree(); ++r) M[r][i] = col.c[r];
            col = mulmod(col, xv, R);
        }
        out.available = true;
        out.charpoly = charpoly(M);
        return out;
    }
    return out;
}

EquivalenceResult affine_equivalent(const AffineSystem& a, const AffineSystem& b, const std::optional<AffineChange>& hint) {
    EquivalenceResult res;
    if (hint) {
        AffineSystem m = apply_affine(a, *hint);
        auto c = proportional_systems(m, b);
        if (c && c->is_poly() && c->num() == Poly(1)) {
            res.change = *hint;
            res.method = "hint";
        } else {
            res.reason = c ? "hint maps a to a multiple of b: " + c->str() : "hint does not map a to b";
        }
        return res;
    }
    if (a.degree() != b.degree()) {
        res.reason = "degrees differ";
        return res;
    }
    if (auto c = proportional_systems(a, b); c && c->is_poly() && c->num() == Poly(1)) {
        res.change = AffineChange();
        res.method = "identity";
        return res;
    }
    Field fld;
    const AffineSystem* e = a.ext ? &a : (b.ext ? &b : nullptr);
    if (e) {
        if (!e->ext->radicand.is_constant()) {
            res.reason = "coefficients must be numeric";
            return res;
        }
        fld.root = e->ext->root;
        fld.d = e->ext->radicand.constant_term();
        if (a.ext && b.ext && !(a.ext->radicand == b.ext->radicand && a.ext->root == b.ext->root)) {
            res.reason = "systems live in different quadratic fields";
            return res;
        }
    }
    auto ka = to_ksys(a, fld), kb = to_ksys(b, fld);
    if (!ka || !kb) {
        res.reason = "search needs numeric quadratic systems";
        return res;
    }
    if (fld.d == 0) {
        auto ia = singular_ratio_invariant(a.p.as_poly(), a.q.as_poly());
        auto ib = singular_ratio_invariant(b.p.as_poly(), b.q.as_poly());
        if (ia.available && ib.available && (ia.variant != ib.variant || !(ia.charpoly == ib.charpoly))) {
            res.obstruction = true;
            res.reason = "singular-point invariant differs (tr^2/det characteristic polynomials " +
                         ia.charpoly.to_poly(var_id("T")).str() + " vs " + ib.charpoly.to_poly(var_id("T")).str() + ")";
            return res;
        }
    }
    auto pa = rational_points(*ka, fld.d), pb = rational_points(*kb, fld.d);
    if (pb.empty()) {
        res.reason = "b has no singular point over the coefficient field";
        return res;
    }
    for (const auto& sb : pb)
        for (const auto& sa : pa)
            if (auto cand = try_pair(*ka, *kb, sa, sb, fld.d)) {
                AffineChange ch;
                ch.m11 = from_k(cand->M[0], fld);
                ch.m12 = from_k(cand->M[1], fld);
                ch.m21 = from_k(cand->M[2], fld);
                ch.m22 = from_k(cand->M[3], fld);
                ch.tx = from_k(cand->t[0], fld);
                ch.ty = from_k(cand->t[1], fld);
                ch.time_scale = from_k(cand->tau, fld);
                res.change = ch;
                res.method = "search";
                return res;
            }
    res.reason = "no affine change matches the coefficients over the " + std::to_string(pa.size()) + " x " +
                 std::to_string(pb.size()) + " rational singular-point pairings";
    return res;
}

}  // namespace alc
