#include "alc/systems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "alc/upoly.hpp"

namespace alc {

const VarIds& xy() {
    static VarIds ids;
    return ids;
}

namespace {

std::map<int, mpq_class> param_map(const ParamValues& v) {
    std::map<int, mpq_class> m;
    for (const auto& [k, val] : v) m[var_id(k)] = val;
    return m;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\n");
    return s.substr(a, b - a + 1);
}

bool check_condition(const std::string& cond, const std::map<int, mpq_class>& vals) {
    static const char* ops[] = {"<=", ">=", "!=", "<", ">", "="};
    for (const char* op : ops) {
        size_t pos = cond.find(op);
        if (pos == std::string::npos) continue;
        std::string lhs = cond.substr(0, pos), rhs = cond.substr(pos + std::string(op).size());
        RationalFn l = parse_expr(lhs).eval(vals), r = parse_expr(rhs).eval(vals);
        RationalFn d = l - r;
        if (!d.is_poly() || !d.num().is_constant()) throw PolyError("domain condition not numeric: " + cond);
        int s = sgn(d.num().constant_term());
        std::string o(op);
        if (o == "<=") return s <= 0;
        if (o == ">=") return s >= 0;
        if (o == "!=") return s != 0;
        if (o == "<") return s < 0;
        if (o == ">") return s > 0;
        return s == 0;
    }
    throw PolyError("domain condition without comparison: " + cond);
}

std::vector<std::string> split_conditions(const std::string& text) {
    std::vector<std::string> out;
    size_t st = 0;
    while (st <= text.size()) {
        size_t e = text.find(';', st);
        if (e == std::string::npos) e = text.size();
        std::string c = trim(text.substr(st, e - st));
        if (!c.empty()) out.push_back(c);
        st = e + 1;
    }
    return out;
}

double eval_xy(const Poly& f, int xv, int yv, double x, double y) {
    double r = 0;
    for (const auto& [m, c] : f.terms()) r += c.get_d() * std::pow(x, mono_exp(m, xv)) * std::pow(y, mono_exp(m, yv));
    return r;
}

std::complex<double> eval_xy(const Poly& f, int xv, int yv, std::complex<double> x, std::complex<double> y) {
    std::complex<double> r = 0;
    for (const auto& [m, c] : f.terms())
        r += c.get_d() * std::pow(x, mono_exp(m, xv)) * std::pow(y, mono_exp(m, yv));
    return r;
}

}  // namespace

bool ParamDomain::contains(const ParamValues& v) const { return violated(v).empty(); }

std::vector<std::string> ParamDomain::violated(const ParamValues& v) const {
    auto vals = param_map(v);
    std::vector<std::string> out;
    for (const auto& c : split_conditions(text))
        if (!check_condition(c, vals)) out.push_back(c);
    return out;
}

int AffineSystem::degree() const {
    const auto& ids = xy();
    return std::max(p.num().degree_in({ids.x, ids.y}), q.num().degree_in({ids.x, ids.y}));
}

RationalFn AffineSystem::norm(const RationalFn& f) const { return ext ? f.reduce(*ext) : f; }

AffineSystem AffineSystem::at(const ParamValues& v) const {
    AffineSystem s = *this;
    auto vals = param_map(v);
    s.p = p.eval(vals);
    s.q = q.eval(vals);
    if (ext) s.ext->radicand = ext->radicand.eval(vals);
    s.params.clear();
    for (const auto& name : params)
        if (!v.count(name)) s.params.push_back(name);
    if (ext) {
        s.p = s.norm(s.p);
        s.q = s.norm(s.q);
    }
    return s;
}

bool AffineSystem::operator==(const AffineSystem& o) const {
    return norm(p - o.p).is_zero() && norm(q - o.q).is_zero();
}

AffineChange AffineChange::translation(const RationalFn& x0, const RationalFn& y0) {
    AffineChange c;
    c.tx = x0;
    c.ty = y0;
    return c;
}

AffineChange AffineChange::swap() {
    AffineChange c;
    c.m11 = 0;
    c.m12 = 1;
    c.m21 = 1;
    c.m22 = 0;
    return c;
}

AffineChange AffineChange::time_sign(int sgn) {
    AffineChange c;
    c.time_scale = RationalFn(sgn);
    return c;
}

AffineChange AffineChange::inverse() const {
    RationalFn d = det();
    if (d.is_zero()) throw PolyError("affine change is not invertible");
    AffineChange r;
    r.m11 = m22 / d;
    r.m12 = -m12 / d;
    r.m21 = -m21 / d;
    r.m22 = m11 / d;
    r.tx = -(r.m11 * tx + r.m12 * ty);
    r.ty = -(r.m21 * tx + r.m22 * ty);
    r.time_scale = RationalFn(1) / time_scale;
    return r;
}

AffineChange AffineChange::then(const AffineChange& n) const {
    // old = M1 mid + t1, mid = M2 new + t2
    AffineChange r;
    r.m11 = m11 * n.m11 + m12 * n.m21;
    r.m12 = m11 * n.m12 + m12 * n.m22;
    r.m21 = m21 * n.m11 + m22 * n.m21;
    r.m22 = m21 * n.m12 + m22 * n.m22;
    r.tx = m11 * n.tx + m12 * n.ty + tx;
    r.ty = m21 * n.tx + m22 * n.ty + ty;
    r.time_scale = time_scale * n.time_scale;
    return r;
}

AffineChange AffineChange::reduced(const SqrtRel& rel) const {
    AffineChange r;
    r.m11 = m11.reduce(rel);
    r.m12 = m12.reduce(rel);
    r.m21 = m21.reduce(rel);
    r.m22 = m22.reduce(rel);
    r.tx = tx.reduce(rel);
    r.ty = ty.reduce(rel);
    r.time_scale = time_scale.reduce(rel);
    return r;
}

RationalFn invariance_residual(const AffineSystem& sys, const RationalFn& f, const RationalFn& k) {
    const auto& ids = xy();
    RationalFn r = sys.p * f.diff(ids.x) + sys.q * f.diff(ids.y) - k * f;
    return sys.norm(r);
}

bool verify_invariant(const AffineSystem& sys, const RationalFn& f, const RationalFn& k) {
    return invariance_residual(sys, f, k).is_zero();
}

std::optional<RationalFn> compute_cofactor(const AffineSystem& sys, const RationalFn& f) {
    const auto& ids = xy();
    std::vector<int> xyv{ids.x, ids.y};
    Poly Fn = f.num();
    if (Fn.degree_in(xyv) <= 0) throw PolyError("compute_cofactor: curve is constant");
    RationalFn G = sys.norm(sys.p * RationalFn(Fn.diff(ids.x)) + sys.q * RationalFn(Fn.diff(ids.y)));
    const Poly& Gn = G.num();
    int m = sys.degree();
    std::vector<Poly> basis;
    for (int d = 0; d <= std::max(0, m - 1); ++d)
        for (int i = d; i >= 0; --i) {
            Monomial mm(std::max(ids.x, ids.y) + 1, 0);
            mm[ids.x] = i;
            mm[ids.y] = d - i;
            mono_trim(mm);
            basis.push_back(Poly::term(1, mm));
        }
    size_t n = basis.size();
    std::vector<std::map<Monomial, Poly, GrlexGreater>> cols;
    for (const auto& b : basis) cols.push_back((b * Fn).coeffs_in(xyv));
    auto rhs = Gn.coeffs_in(xyv);
    std::vector<Monomial> keys;
    for (const auto& c : cols)
        for (const auto& [k, v] : c) keys.push_back(k);
    for (const auto& [k, v] : rhs) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), GrlexGreater());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<std::vector<RationalFn>> A;
    for (const auto& key : keys) {
        std::vector<RationalFn> row(n + 1);
        for (size_t j = 0; j < n; ++j) {
            auto it = cols[j].find(key);
            row[j] = it == cols[j].end() ? RationalFn(0) : RationalFn(it->second);
        }
        auto it = rhs.find(key);
        row[n] = it == rhs.end() ? RationalFn(0) : RationalFn(it->second);
        A.push_back(std::move(row));
    }
    // Gaussian elimination over the parameter function field
    std::vector<int> pivcol;
    size_t r = 0;
    for (size_t c = 0; c < n && r < A.size(); ++c) {
        size_t piv = r;
        while (piv < A.size() && A[piv][c].is_zero()) ++piv;
        if (piv == A.size()) continue;
        std::swap(A[piv], A[r]);
        RationalFn inv = RationalFn(1) / A[r][c];
        for (size_t k = c; k <= n; ++k) A[r][k] = sys.norm(A[r][k] * inv);
        for (size_t i = 0; i < A.size(); ++i) {
            if (i == r || A[i][c].is_zero()) continue;
            RationalFn fct = A[i][c];
            for (size_t k = c; k <= n; ++k) A[i][k] = sys.norm(A[i][k] - fct * A[r][k]);
        }
        pivcol.push_back(static_cast<int>(c));
        ++r;
    }
    for (size_t i = r; i < A.size(); ++i)
        if (!A[i][n].is_zero()) return std::nullopt;
    RationalFn K;
    for (size_t i = 0; i < pivcol.size(); ++i) K = K + A[i][n] * RationalFn(basis[pivcol[i]]);
    RationalFn k = sys.norm(K / RationalFn(G.den()));
    if (!verify_invariant(sys, RationalFn(Fn), k)) return std::nullopt;
    return k;
}

namespace {
std::map<int, RationalFn> change_bindings(const AffineChange& ch) {
    const auto& ids = xy();
    RationalFn X(Poly::var(ids.x)), Y(Poly::var(ids.y));
    return {{ids.x, ch.m11 * X + ch.m12 * Y + ch.tx}, {ids.y, ch.m21 * X + ch.m22 * Y + ch.ty}};
}
}  // namespace

AffineSystem apply_affine(const AffineSystem& sys, const AffineChange& chin) {
    AffineChange ch = sys.ext ? chin.reduced(*sys.ext) : chin;
    RationalFn d = sys.norm(ch.det());
    if (d.is_zero()) throw PolyError("apply_affine: change is not invertible");
    auto b = change_bindings(ch);
    RationalFn P = sys.norm(substitute(sys.p, b)), Q = sys.norm(substitute(sys.q, b));
    AffineSystem out = sys;
    RationalFn s = sys.norm(ch.time_scale / d);
    out.p = sys.norm(s * (ch.m22 * P - ch.m12 * Q));
    out.q = sys.norm(s * (ch.m11 * Q - ch.m21 * P));
    return out;
}

InvariantCurve apply_affine(const InvariantCurve& c, const AffineChange& chin, const AffineSystem* sys) {
    AffineChange ch = (sys && sys->ext) ? chin.reduced(*sys->ext) : chin;
    auto b = change_bindings(ch);
    InvariantCurve out;
    out.f = substitute(c.f, b);
    out.k = ch.time_scale * substitute(c.k, b);
    if (sys) {
        out.f = sys->norm(out.f);
        out.k = sys->norm(out.k);
    }
    return out;
}

const std::array<const char*, 12> kQuadCoeffNames = {"a00", "a10", "a01", "a20", "a11", "a02",
                                                     "b00", "b10", "b01", "b20", "b11", "b02"};

std::array<RationalFn, 12> quad_coeffs(const AffineSystem& sys) {
    if (sys.degree() > 2) throw PolyError("quad_coeffs: degree greater than 2");
    const auto& ids = xy();
    static const int ex[6][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    std::array<RationalFn, 12> out;
    for (int i = 0; i < 6; ++i) {
        out[i] = RationalFn(sys.p.num().coeff_of({ids.x, ids.y}, {ex[i][0], ex[i][1]}), sys.p.den());
        out[6 + i] = RationalFn(sys.q.num().coeff_of({ids.x, ids.y}, {ex[i][0], ex[i][1]}), sys.q.den());
    }
    return out;
}

AffineSystem from_quad_coeffs(const std::array<RationalFn, 12>& c, const std::string& name) {
    const auto& ids = xy();
    RationalFn X(Poly::var(ids.x)), Y(Poly::var(ids.y));
    RationalFn mons[6] = {1, X, Y, X * X, X * Y, Y * Y};
    AffineSystem s;
    s.name = name;
    for (int i = 0; i < 6; ++i) {
        s.p = s.p + c[i] * mons[i];
        s.q = s.q + c[6 + i] * mons[i];
    }
    return s;
}

const char* point_type_name(PointType t) {
    switch (t) {
        case PointType::Saddle: return "saddle";
        case PointType::Node: return "node";
        case PointType::StarNode: return "star-node";
        case PointType::Focus: return "focus";
        case PointType::CenterFocusUndecided: return "center-focus-undecided";
        case PointType::Degenerate: return "degenerate";
        case PointType::Complex: return "complex";
    }
    return "?";
}

namespace {

PointType classify_exact(const mpq_class& j11, const mpq_class& j12, const mpq_class& j21, const mpq_class& j22) {
    mpq_class tr = j11 + j22, dt = j11 * j22 - j12 * j21;
    if (dt == 0) return PointType::Degenerate;
    if (dt < 0) return PointType::Saddle;
    mpq_class disc = tr * tr - 4 * dt;
    if (disc < 0) return tr == 0 ? PointType::CenterFocusUndecided : PointType::Focus;
    if (j12 == 0 && j21 == 0 && j11 == j22) return PointType::StarNode;
    return PointType::Node;
}

PointType classify_numeric(double j11, double j12, double j21, double j22) {
    double scale = std::abs(j11) + std::abs(j12) + std::abs(j21) + std::abs(j22) + 1e-300;
    double tr = j11 + j22, dt = j11 * j22 - j12 * j21;
    if (std::abs(dt) < 1e-10 * scale * scale) return PointType::Degenerate;
    if (dt < 0) return PointType::Saddle;
    double disc = tr * tr - 4 * dt;
    if (disc < -1e-12 * scale * scale) return std::abs(tr) < 1e-10 * scale ? PointType::CenterFocusUndecided : PointType::Focus;
    if (std::abs(j12) < 1e-12 * scale && std::abs(j21) < 1e-12 * scale && std::abs(j11 - j22) < 1e-12 * scale)
        return PointType::StarNode;
    return PointType::Node;
}

int index_of(PointType t) {
    switch (t) {
        case PointType::Saddle: return -1;
        case PointType::Node:
        case PointType::StarNode:
        case PointType::Focus:
        case PointType::CenterFocusUndecided: return 1;
        default: return 0;
    }
}

void fill_jacobian(SingularPoint& sp, const Poly& p, const Poly& q, int xv, int yv) {
    Poly px = p.diff(xv), py = p.diff(yv), qx = q.diff(xv), qy = q.diff(yv);
    if (sp.exact) {
        std::map<int, mpq_class> at{{xv, sp.exact->first}, {yv, sp.exact->second}};
        mpq_class j11 = px.eval(at).constant_term(), j12 = py.eval(at).constant_term();
        mpq_class j21 = qx.eval(at).constant_term(), j22 = qy.eval(at).constant_term();
        mpq_class tr = j11 + j22, dt = j11 * j22 - j12 * j21;
        sp.trace = tr.get_d();
        sp.det = dt.get_d();
        sp.type = classify_exact(j11, j12, j21, j22);
    } else {
        std::complex<double> j11 = eval_xy(px, xv, yv, sp.x, sp.y), j12 = eval_xy(py, xv, yv, sp.x, sp.y);
        std::complex<double> j21 = eval_xy(qx, xv, yv, sp.x, sp.y), j22 = eval_xy(qy, xv, yv, sp.x, sp.y);
        sp.trace = (j11 + j22).real();
        sp.det = (j11 * j22 - j12 * j21).real();
        if (sp.real)
            sp.type = classify_numeric(j11.real(), j12.real(), j21.real(), j22.real());
        else
            sp.type = PointType::Complex;
        std::complex<double> tr = j11 + j22, dt = j11 * j22 - j12 * j21;
        std::complex<double> sq = std::sqrt(tr * tr - 4.0 * dt);
        sp.ev1 = (tr + sq) / 2.0;
        sp.ev2 = (tr - sq) / 2.0;
        return;
    }
    std::complex<double> tr = sp.trace, dt = sp.det;
    std::complex<double> sq = std::sqrt(tr * tr - 4.0 * dt);
    sp.ev1 = (tr + sq) / 2.0;
    sp.ev2 = (tr - sq) / 2.0;
}

std::vector<std::complex<double>> roots_in_y(const Poly& f, int xv, int yv, std::complex<double> x0) {
    int d = f.degree_in(yv);
    std::vector<std::complex<double>> co(std::max(d, 0) + 1, 0.0);
    for (const auto& [m, c] : f.terms()) co[mono_exp(m, yv)] += c.get_d() * std::pow(x0, mono_exp(m, xv));
    double mx = 0;
    for (auto& v : co) mx = std::max(mx, std::abs(v));
    while (co.size() > 1 && std::abs(co.back()) <= 1e-12 * mx) co.pop_back();
    std::vector<std::complex<double>> out;
    if (co.size() == 2) {
        out.push_back(-co[0] / co[1]);
    } else if (co.size() == 3) {
        std::complex<double> s = std::sqrt(co[1] * co[1] - 4.0 * co[2] * co[0]);
        out.push_back((-co[1] + s) / (2.0 * co[2]));
        out.push_back((-co[1] - s) / (2.0 * co[2]));
    } else if (co.size() > 3) {
        // general degree: Durand-Kerner
        int n = static_cast<int>(co.size()) - 1;
        std::vector<std::complex<double>> z(n);
        for (int i = 0; i < n; ++i) z[i] = std::pow(std::complex<double>(0.4, 0.9), i);
        for (int it = 0; it < 500; ++it)
            for (int i = 0; i < n; ++i) {
                std::complex<double> num = 0;
                for (int k = n; k >= 0; --k) num = num * z[i] + co[k];
                std::complex<double> den = co[n];
                for (int j = 0; j < n; ++j)
                    if (j != i) den *= (z[i] - z[j]);
                z[i] -= num / den;
            }
        out = z;
    }
    return out;
}

void newton_polish(const Poly& p, const Poly& q, int xv, int yv, std::complex<double>& x, std::complex<double>& y) {
    Poly px = p.diff(xv), py = p.diff(yv), qx = q.diff(xv), qy = q.diff(yv);
    for (int it = 0; it < 30; ++it) {
        std::complex<double> f1 = eval_xy(p, xv, yv, x, y), f2 = eval_xy(q, xv, yv, x, y);
        std::complex<double> a = eval_xy(px, xv, yv, x, y), b = eval_xy(py, xv, yv, x, y);
        std::complex<double> c = eval_xy(qx, xv, yv, x, y), d = eval_xy(qy, xv, yv, x, y);
        std::complex<double> det = a * d - b * c;
        if (std::abs(det) < 1e-300) return;
        std::complex<double> dx = (d * f1 - b * f2) / det, dy = (a * f2 - c * f1) / det;
        x -= dx;
        y -= dy;
        if (std::abs(dx) + std::abs(dy) < 1e-15 * (1 + std::abs(x) + std::abs(y))) return;
    }
}

}  // namespace

std::vector<SingularPoint> singular_points(const Poly& p, const Poly& q) {
    const auto& ids = xy();
    int xv = ids.x, yv = ids.y;
    UPoly R = resultant_y(p, q, xv, yv);
    if (R.is_zero()) throw SingularLocusError("p and q share a common factor: singular locus is not zero-dimensional");
    std::vector<SingularPoint> pts;
    if (R.degree() <= 0) return pts;
    UPoly Rs = squarefree_part(R);
    auto rats = rational_roots(Rs);
    UPoly rest = Rs;
    for (const auto& r : rats) rest = rest / UPoly(std::vector<mpq_class>{-r, 1});
    // exact x-coordinates
    for (const auto& x0 : rats) {
        UPoly a = UPoly::from_poly(p.eval({{xv, x0}}), yv), b = UPoly::from_poly(q.eval({{xv, x0}}), yv);
        UPoly g = a.is_zero() ? b.monic() : (b.is_zero() ? a.monic() : gcd(a, b));
        if (g.is_zero()) throw SingularLocusError("vertical line of singular points");
        auto ry = rational_roots(g);
        UPoly gr = g;
        for (const auto& y0 : ry) {
            SingularPoint sp;
            sp.exact = std::make_pair(x0, y0);
            sp.x = x0.get_d();
            sp.y = y0.get_d();
            pts.push_back(sp);
            gr = gr / UPoly(std::vector<mpq_class>{-y0, 1});
        }
        for (auto yc : complex_roots(gr)) {
            SingularPoint sp;
            sp.x = x0.get_d();
            sp.y = yc;
            sp.real = std::abs(yc.imag()) < 1e-9 * (1 + std::abs(yc));
            if (sp.real) sp.y = yc.real();
            pts.push_back(sp);
        }
    }
    // remaining x-coordinates, numerically
    int nreal = rest.degree() > 0 ? static_cast<int>(real_roots(rest, mpq_class(1, 1000000)).size()) : 0;
    auto xr = complex_roots(rest);
    std::sort(xr.begin(), xr.end(), [](auto a, auto b) { return std::abs(a.imag()) < std::abs(b.imag()); });
    for (size_t i = 0; i < xr.size(); ++i) {
        bool is_real_x = static_cast<int>(i) < nreal;
        std::complex<double> x0 = is_real_x ? std::complex<double>(xr[i].real(), 0) : xr[i];
        std::vector<std::complex<double>> cand = roots_in_y(p, xv, yv, x0);
        auto cq = roots_in_y(q, xv, yv, x0);
        cand.insert(cand.end(), cq.begin(), cq.end());
        std::vector<SingularPoint> found;
        for (auto y0 : cand) {
            std::complex<double> xx = x0, yy = y0;
            newton_polish(p, q, xv, yv, xx, yy);
            double res = std::abs(eval_xy(p, xv, yv, xx, yy)) + std::abs(eval_xy(q, xv, yv, xx, yy));
            double sc = 1 + std::abs(xx) + std::abs(yy);
            if (res > 1e-6 * sc * sc) continue;
            if (std::abs(xx - x0) > 1e-6 * sc) continue;
            bool dup = false;
            for (const auto& f : found)
                if (std::abs(f.x - xx) + std::abs(f.y - yy) < 1e-7 * sc) dup = true;
            if (dup) continue;
            SingularPoint sp;
            sp.x = xx;
            sp.y = yy;
            sp.real = is_real_x && std::abs(yy.imag()) < 1e-8 * sc;
            if (sp.real) {
                sp.x = xx.real();
                sp.y = yy.real();
            }
            found.push_back(sp);
        }
        pts.insert(pts.end(), found.begin(), found.end());
    }
    for (auto& sp : pts) {
        fill_jacobian(sp, p, q, xv, yv);
        sp.index = sp.real ? index_of(sp.type) : 0;
    }
    for (size_t i = 0; i < pts.size(); ++i) {
        auto& sp = pts[i];
        if (!sp.real || sp.type != PointType::Degenerate) continue;
        double dmin = 1.0;
        for (size_t j = 0; j < pts.size(); ++j)
            if (j != i) dmin = std::min(dmin, std::abs(pts[j].x - sp.x) + std::abs(pts[j].y - sp.y));
        sp.index = winding_index(p, q, xv, yv, sp.x.real(), sp.y.real(), dmin / 4);
    }
    return pts;
}

std::vector<SingularPoint> singular_points(const AffineSystem& sys, const ParamValues& v) {
    AffineSystem s = sys.at(v);
    if (s.ext) throw PolyError("singular_points: coefficients must be rational");
    if (!s.p.den().is_constant() || !s.q.den().is_constant()) throw PolyError("singular_points: unbound parameters");
    return singular_points(s.p.num(), s.q.num());
}

std::pair<Poly, Poly> chart_field(const Poly& p, const Poly& q, int chart) {
    const auto& ids = xy();
    int d = std::max(p.degree_in({ids.x, ids.y}), q.degree_in({ids.x, ids.y}));
    int X = var_id("X"), Y = var_id("Y"), Z = var_id("Z"), U = var_id("u"), Vv = var_id("v");
    Poly P = homogenize(p, {ids.x, ids.y}, {X, Y, Z}, d), Q = homogenize(q, {ids.x, ids.y}, {X, Y, Z}, d);
    Poly u = Poly::var(U), v = Poly::var(Vv);
    if (chart == 1) {
        std::map<int, Poly> b{{X, Poly(1)}, {Y, u}, {Z, v}};
        Poly Pt = P.subs(b), Qt = Q.subs(b);
        return {Qt - u * Pt, -(v * Pt)};
    }
    std::map<int, Poly> b{{X, u}, {Y, Poly(1)}, {Z, v}};
    Poly Pt = P.subs(b), Qt = Q.subs(b);
    return {Pt - u * Qt, -(v * Qt)};
}

int winding_index(const Poly& P, const Poly& Q, int xv, int yv, double x0, double y0, double radius) {
    const int N = 4096;
    double total = 0, prev = 0;
    for (int i = 0; i <= N; ++i) {
        double th = 2 * std::numbers::pi * i / N;
        double x = x0 + radius * std::cos(th), y = y0 + radius * std::sin(th);
        double ang = std::atan2(eval_xy(Q, xv, yv, x, y), eval_xy(P, xv, yv, x, y));
        if (i > 0) {
            double d = ang - prev;
            while (d > std::numbers::pi) d -= 2 * std::numbers::pi;
            while (d < -std::numbers::pi) d += 2 * std::numbers::pi;
            total += d;
        }
        prev = ang;
    }
    return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

InfinityReport infinite_singular_points(const Poly& p, const Poly& q) {
    InfinityReport rep;
    int U = var_id("u"), Vv = var_id("v");
    auto [f1, g1] = chart_field(p, q, 1);
    Poly C = f1.eval({{Vv, mpq_class(0)}});
    if (C.is_zero()) {
        rep.line_of_singularities = true;
        return rep;
    }
    UPoly Cu = UPoly::from_poly(C, U);
    auto classify_at = [&](const Poly& f, const Poly& g, InfinitePoint& ip, std::optional<mpq_class> ex, double uval) {
        Poly fu = f.diff(U), fv = f.diff(Vv), gu = g.diff(U), gv = g.diff(Vv);
        double j11, j12, j21, j22;
        if (ex) {
            std::map<int, mpq_class> at{{U, *ex}, {Vv, mpq_class(0)}};
            mpq_class a = fu.eval(at).constant_term(), b = fv.eval(at).constant_term();
            mpq_class c = gu.eval(at).constant_term(), d = gv.eval(at).constant_term();
            ip.type = classify_exact(a, b, c, d);
            j11 = a.get_d(); j12 = b.get_d(); j21 = c.get_d(); j22 = d.get_d();
        } else {
            j11 = eval_xy(fu, U, Vv, uval, 0); j12 = eval_xy(fv, U, Vv, uval, 0);
            j21 = eval_xy(gu, U, Vv, uval, 0); j22 = eval_xy(gv, U, Vv, uval, 0);
            ip.type = classify_numeric(j11, j12, j21, j22);
        }
        std::complex<double> tr = j11 + j22, dt = j11 * j22 - j12 * j21;
        std::complex<double> sq = std::sqrt(tr * tr - 4.0 * dt);
        ip.ev1 = (tr + sq) / 2.0;
        ip.ev2 = (tr - sq) / 2.0;
        ip.index = index_of(ip.type);
    };
    std::vector<double> us;
    auto rats = rational_roots(Cu);
    for (const auto& r : rats) us.push_back(r.get_d());
    std::vector<double> irr;
    for (const auto& ri : real_roots(Cu, mpq_class(1, mpz_class("1000000000000")))) {
        bool isr = false;
        for (const auto& r : rats)
            if (ri.lo <= r && r <= ri.hi) isr = true;
        if (!isr) irr.push_back(ri.value().get_d());
    }
    for (double u : irr) us.push_back(u);
    std::sort(us.begin(), us.end());
    for (const auto& r : rats) {
        InfinitePoint ip;
        ip.chart = 1;
        ip.exact_u = r;
        ip.u = r.get_d();
        classify_at(f1, g1, ip, r, ip.u);
        rep.points.push_back(ip);
    }
    for (double u : irr) {
        InfinitePoint ip;
        ip.chart = 1;
        ip.u = u;
        classify_at(f1, g1, ip, std::nullopt, u);
        rep.points.push_back(ip);
    }
    auto [f2, g2] = chart_field(p, q, 2);
    if (f2.eval({{U, mpq_class(0)}, {Vv, mpq_class(0)}}).is_zero()) {
        InfinitePoint ip;
        ip.chart = 2;
        ip.exact_u = mpq_class(0);
        classify_at(f2, g2, ip, mpq_class(0), 0.0);
        rep.points.push_back(ip);
    }
    for (auto& ip : rep.points) {
        if (ip.type != PointType::Degenerate) continue;
        double dmin = 0.5;
        if (ip.chart == 1)
            for (double u : us)
                if (u != ip.u) dmin = std::min(dmin, std::abs(u - ip.u));
        const Poly& f = ip.chart == 1 ? f1 : f2;
        const Poly& g = ip.chart == 1 ? g1 : g2;
        ip.index = winding_index(f, g, U, Vv, ip.u, 0.0, dmin / 4);
    }
    return rep;
}

std::optional<int> sphere_index_sum(const Poly& p, const Poly& q) {
    auto fin = singular_points(p, q);
    auto inf = infinite_singular_points(p, q);
    if (inf.line_of_singularities) return std::nullopt;
    int s = 0;
    for (const auto& sp : fin)
        if (sp.real) s += sp.index;
    for (const auto& ip : inf.points) s += ip.index;
    return 2 * s;
}

bool coprime_at(const AffineSystem& sys, const std::vector<ParamValues>& samples) {
    const auto& ids = xy();
    for (const auto& v : samples) {
        AffineSystem s = sys.at(v);
        // a common factor free of y survives elimination of y, so eliminate each variable in turn
        if (resultant_y(s.p.num(), s.q.num(), ids.x, ids.y).is_zero()) return false;
        if (resultant_y(s.p.num(), s.q.num(), ids.y, ids.x).is_zero()) return false;
    }
    return true;
}

}  // namespace alc
