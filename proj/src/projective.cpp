#include "alc/projective.hpp"

#include "alc/upoly.hpp"

namespace alc {

const ProjVars& pv() {
    static ProjVars v;
    return v;
}

int ProjectiveOneForm::degree() const {
    std::vector<int> vs(vars.begin(), vars.end());
    int d = std::max({A.degree_in(vs), B.degree_in(vs), C.degree_in(vs)});
    return d - 1;
}

bool ProjectiveOneForm::euler_ok() const {
    return (Poly::var(vars[0]) * A + Poly::var(vars[1]) * B + Poly::var(vars[2]) * C).is_zero();
}

ProjectiveOneForm make_form(const Poly& A, const Poly& B, const Poly& C, std::array<int, 3> vars) {
    ProjectiveOneForm w;
    w.A = A;
    w.B = B;
    w.C = C;
    w.vars = vars;
    if (!w.euler_ok()) throw EulerError("form violates the Euler condition");
    return w;
}

ProjectiveOneForm projectivize(const AffineSystem& sys) {
    const auto& ids = xy();
    const auto& P = pv();
    Poly D = sys.p.den() == sys.q.den() ? sys.p.den() : sys.p.den() * sys.q.den();
    Poly p = *divide_exact(sys.p.num() * D, sys.p.den());
    Poly q = *divide_exact(sys.q.num() * D, sys.q.den());
    int d = std::max(1, sys.degree());
    Poly Ph = homogenize(p, {ids.x, ids.y}, {P.X, P.Y, P.Z}, d);
    Poly Qh = homogenize(q, {ids.x, ids.y}, {P.X, P.Y, P.Z}, d);
    Poly X = Poly::var(P.X), Y = Poly::var(P.Y), Z = Poly::var(P.Z);
    ProjectiveOneForm w = make_form(-(Z * Qh), Z * Ph, X * Qh - Y * Ph, {P.X, P.Y, P.Z});
    w.scale = D;
    return w;
}

std::array<Poly, 3> form_of(const VectorFieldRep& r, const std::array<int, 3>& vars) {
    Poly X = Poly::var(vars[0]), Y = Poly::var(vars[1]), Z = Poly::var(vars[2]);
    return {r.M * Z - r.N * Y, r.N * X - r.L * Z, r.L * Y - r.M * X};
}

VectorFieldRep vector_field_from_form(const ProjectiveOneForm& w) {
    if (!w.euler_ok()) throw EulerError("vector_field_from_form: Euler condition violated");
    VectorFieldRep r;
    if (w.is_zero()) return r;
    Poly X = Poly::var(w.vars[0]), Z = Poly::var(w.vars[2]), Y = Poly::var(w.vars[1]);
    Poly B0 = w.B.eval({{w.vars[2], mpq_class(0)}});
    auto N = divide_exact(B0, X);
    if (!N) throw EulerError("vector_field_from_form: B(X,Y,0) not divisible by X");
    auto M = divide_exact(w.A + *N * Y, Z);
    auto L = divide_exact(*N * X - w.B, Z);
    if (!M || !L) throw EulerError("vector_field_from_form: inconsistent form");
    r.L = *L;
    r.M = *M;
    r.N = *N;
    auto chk = form_of(r, w.vars);
    if (chk[0] != w.A || chk[1] != w.B || chk[2] != w.C) throw EulerError("vector_field_from_form: reconstruction failed");
    return r;
}

VectorFieldRep gauge_shift(const VectorFieldRep& r, const Poly& W, const std::array<int, 3>& vars) {
    VectorFieldRep s;
    s.L = r.L + Poly::var(vars[0]) * W;
    s.M = r.M + Poly::var(vars[1]) * W;
    s.N = r.N + Poly::var(vars[2]) * W;
    s.gauge = r.gauge + W;
    return s;
}

ProjectiveOneForm strip_factors(const ProjectiveOneForm& w, const std::vector<Poly>& candidates,
                                std::vector<Poly>* removed) {
    ProjectiveOneForm r = w;
    if (r.is_zero()) return r;
    for (const auto& g : candidates) {
        if (g.is_constant()) continue;
        for (;;) {
            auto a = divide_exact(r.A, g), b = divide_exact(r.B, g), c = divide_exact(r.C, g);
            if (!a || !b || !c) break;
            r.A = *a;
            r.B = *b;
            r.C = *c;
            if (removed) removed->push_back(g);
        }
    }
    return r;
}

bool proportional(const ProjectiveOneForm& a, const ProjectiveOneForm& b) {
    auto ca = a.coeffs(), cb = b.coeffs();
    std::vector<int> vs(a.vars.begin(), a.vars.end());
    std::optional<RationalFn> ratio;
    for (int i = 0; i < 3; ++i) {
        if (ca[i].is_zero() != cb[i].is_zero()) return false;
        if (ca[i].is_zero()) continue;
        if (!ratio) {
            ratio = RationalFn(ca[i], cb[i]);
            if (ratio->num().depends_on_any(vs) || ratio->den().depends_on_any(vs)) return false;
        }
        if (!(RationalFn(ca[i]) == *ratio * RationalFn(cb[i]))) return false;
    }
    return true;
}

bool line_invariant(const ProjectiveOneForm& w, const Line& l) {
    VectorFieldRep r = vector_field_from_form(w);
    Poly G = r.L * l[0] + r.M * l[1] + r.N * l[2];
    Poly X = Poly::var(w.vars[0]), Y = Poly::var(w.vars[1]), Z = Poly::var(w.vars[2]);
    Poly ell = X * l[0] + Y * l[1] + Z * l[2];
    if (ell.is_zero()) throw PolyError("zero line");
    return divide_exact(G, ell).has_value();
}

namespace {

std::vector<Poly> coefficient_equations(const Poly& G, const std::vector<int>& vars) {
    std::vector<Poly> eqs;
    for (const auto& [m, c] : G.coeffs_in(vars))
        if (!c.is_zero()) eqs.push_back(c);
    return eqs;
}

UPoly univariate_gcd(const std::vector<Poly>& eqs, int v) {
    UPoly g;
    for (const auto& e : eqs) {
        UPoly u = UPoly::from_poly(e, v);
        g = g.is_zero() ? u.monic() : gcd(g, u);
    }
    return g;
}

void remove_factor(std::vector<Poly>& eqs, const Poly& f) {
    if (f.is_constant()) return;
    for (auto& e : eqs)
        while (!e.is_zero()) {
            auto q = divide_exact(e, f);
            if (!q) break;
            e = *q;
        }
}

// Rational common zeros of polynomials in (v1, v2).
std::vector<std::pair<mpq_class, mpq_class>> solve_rational_2(std::vector<Poly> eqs, int v1, int v2) {
    std::vector<std::pair<mpq_class, mpq_class>> out;
    eqs.erase(std::remove_if(eqs.begin(), eqs.end(), [](const Poly& p) { return p.is_zero(); }), eqs.end());
    if (eqs.empty()) throw PolyError("invariant line system is underdetermined");
    for (const auto& e : eqs)
        if (e.is_constant()) return out;
    UPoly R;
    auto absorb = [&](const UPoly& u) {
        if (u.is_zero()) return;
        R = R.is_zero() ? u.monic() : gcd(R, u);
    };
    for (const auto& e : eqs)
        if (!e.depends_on(v2)) absorb(UPoly::from_poly(e, v1));
    for (size_t i = 0; i < eqs.size(); ++i)
        for (size_t j = i + 1; j < eqs.size(); ++j) {
            if (!eqs[i].depends_on(v2) || !eqs[j].depends_on(v2)) continue;
            absorb(resultant_y(eqs[i], eqs[j], v1, v2));
            if (!R.is_zero() && R.degree() == 0) return out;
        }
    if (R.is_zero()) throw PolyError("invariant line system has a curve of solutions");
    for (const auto& a1 : rational_roots(R)) {
        std::vector<Poly> sub;
        for (const auto& e : eqs) sub.push_back(e.eval({{v1, a1}}));
        bool all_zero = true;
        for (const auto& s : sub)
            if (!s.is_zero()) all_zero = false;
        if (all_zero) throw PolyError("invariant line system has a curve of solutions");
        std::vector<Poly> nz;
        for (const auto& s : sub)
            if (!s.is_zero()) nz.push_back(s);
        UPoly g = univariate_gcd(nz, v2);
        for (const auto& a2 : rational_roots(g)) out.emplace_back(a1, a2);
    }
    return out;
}

std::vector<Line> pencil_centers(const ProjectiveOneForm& w) {
    // p1 A + p2 B + p3 C = 0 identically: all lines through (p1 : p2 : p3) are invariant
    std::vector<int> vs(w.vars.begin(), w.vars.end());
    std::map<Monomial, std::array<mpq_class, 3>, GrlexGreater> rows;
    auto c = w.coeffs();
    for (int i = 0; i < 3; ++i)
        for (const auto& [m, v] : c[i].terms()) rows[m][i] = v;
    std::vector<std::array<mpq_class, 3>> M;
    for (const auto& [m, r] : rows) M.push_back(r);
    std::vector<int> pivc;
    size_t r = 0;
    for (int col = 0; col < 3 && r < M.size(); ++col) {
        size_t p = r;
        while (p < M.size() && M[p][col] == 0) ++p;
        if (p == M.size()) continue;
        std::swap(M[p], M[r]);
        mpq_class inv = 1 / M[r][col];
        for (int k = 0; k < 3; ++k) M[r][k] *= inv;
        for (size_t i = 0; i < M.size(); ++i)
            if (i != r && M[i][col] != 0) {
                mpq_class f = M[i][col];
                for (int k = 0; k < 3; ++k) M[i][k] -= f * M[r][k];
            }
        pivc.push_back(col);
        ++r;
    }
    std::vector<Line> out;
    if (pivc.size() != 2) return out;
    int freec = 3 - pivc[0] - pivc[1];
    Line v;
    v[freec] = 1;
    for (size_t i = 0; i < pivc.size(); ++i) v[pivc[i]] = -M[i][freec];
    out.push_back(v);
    return out;
}

}  // namespace

InvariantLines find_invariant_lines(const ProjectiveOneForm& w) {
    if (w.is_zero()) throw PolyError("find_invariant_lines: zero form");
    for (const auto& c : w.coeffs())
        for (int v : c.variables())
            if (v != w.vars[0] && v != w.vars[1] && v != w.vars[2])
                throw PolyError("find_invariant_lines: coefficients must be numeric");
    InvariantLines res;
    res.pencils = pencil_centers(w);
    VectorFieldRep r = vector_field_from_form(w);
    int a1 = var_id("_l1"), a2 = var_id("_l2");
    Poly A1 = Poly::var(a1), A2 = Poly::var(a2);
    Poly X = Poly::var(w.vars[0]), Y = Poly::var(w.vars[1]);
    std::vector<int> xyv{w.vars[0], w.vars[1], w.vars[2]};
    // chart a3 = 1
    {
        Poly G = A1 * r.L + A2 * r.M + r.N;
        G = G.subs(w.vars[2], -(A1 * X) - A2 * Y);
        auto eqs = coefficient_equations(G, xyv);
        for (const auto& p : res.pencils) remove_factor(eqs, A1 * p[0] + A2 * p[1] + Poly(p[2]));
        if (!eqs.empty())
            for (auto [u, v] : solve_rational_2(eqs, a1, a2)) res.lines.push_back({u, v, mpq_class(1)});
    }
    // chart a3 = 0, a2 = 1
    {
        Poly G = A1 * r.L + r.M;
        G = G.subs(w.vars[1], -(A1 * X));
        auto eqs = coefficient_equations(G, xyv);
        for (const auto& p : res.pencils) remove_factor(eqs, A1 * p[0] + Poly(p[1]));
        bool trivial = false;
        for (const auto& e : eqs)
            if (e.is_constant()) trivial = true;
        if (!eqs.empty() && !trivial) {
            UPoly g = univariate_gcd(eqs, a1);
            for (const auto& u : rational_roots(g)) res.lines.push_back({u, mpq_class(1), mpq_class(0)});
        }
    }
    // X = 0
    Line xl{mpq_class(1), mpq_class(0), mpq_class(0)};
    bool through_center = false;
    for (const auto& p : res.pencils)
        if (p[0] == 0) through_center = true;
    if (!through_center && line_invariant(w, xl)) res.lines.push_back(xl);
    return res;
}

AffineSystem affine_restrict(const ProjectiveOneForm& w, const Line& l) {
    if (l[0] == 0 && l[1] == 0 && l[2] == 0) throw PolyError("affine_restrict: zero line");
    // rows of T: new coordinates in terms of old; the last row is the line
    std::array<std::array<mpq_class, 3>, 3> T;
    if (l[2] != 0)
        T = {{{1, 0, 0}, {0, 1, 0}, l}};
    else if (l[1] != 0)
        T = {{{1, 0, 0}, {0, 0, 1}, l}};
    else
        T = {{{0, 1, 0}, {0, 0, 1}, l}};
    // S = T^-1 by adjugate
    mpq_class det = T[0][0] * (T[1][1] * T[2][2] - T[1][2] * T[2][1]) - T[0][1] * (T[1][0] * T[2][2] - T[1][2] * T[2][0]) +
                    T[0][2] * (T[1][0] * T[2][1] - T[1][1] * T[2][0]);
    std::array<std::array<mpq_class, 3>, 3> S;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            S[i][j] = (T[r0][c0] * T[r1][c1] - T[r0][c1] * T[r1][c0]) / det;
        }
    int nx = var_id("_n1"), ny = var_id("_n2"), nz = var_id("_n3");
    std::array<Poly, 3> nv{Poly::var(nx), Poly::var(ny), Poly::var(nz)};
    std::map<int, Poly> b;
    for (int i = 0; i < 3; ++i) b[w.vars[i]] = nv[0] * S[i][0] + nv[1] * S[i][1] + nv[2] * S[i][2];
    auto c = w.coeffs();
    std::array<Poly, 3> cs;
    for (int i = 0; i < 3; ++i) cs[i] = c[i].subs(b);
    std::array<Poly, 3> nc;
    for (int j = 0; j < 3; ++j) nc[j] = cs[0] * S[0][j] + cs[1] * S[1][j] + cs[2] * S[2][j];
    auto A1 = divide_exact(nc[0], nv[2]), B1 = divide_exact(nc[1], nv[2]);
    if (!A1 || !B1) throw NotInvariant("affine_restrict: line is not invariant");
    const auto& ids = xy();
    std::map<int, Poly> to_aff{{nx, Poly::var(ids.x)}, {ny, Poly::var(ids.y)}, {nz, Poly(1)}};
    AffineSystem s;
    s.p = RationalFn(B1->subs(to_aff), w.scale);
    s.q = RationalFn(-A1->subs(to_aff), w.scale);
    return s;
}

}  // namespace alc
