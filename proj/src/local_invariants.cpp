#include "alc/local_invariants.hpp"

#include <algorithm>

#include "alc/upoly.hpp"

namespace alc {

namespace {

Poly reduced(const Poly& f, const SqrtRel* rel) { return rel ? rel->reduce(f) : f; }

Poly homogeneous_part(const Poly& f, int deg) {
    const auto& ids = xy();
    Poly out;
    for (const auto& [m, c] : f.terms())
        if (mono_exp(m, ids.x) + mono_exp(m, ids.y) == deg) out += Poly::term(c, m);
    return out;
}

Poly power_of(int var, int e) {
    Monomial m(var + 1, 0);
    m[var] = e;
    mono_trim(m);
    return Poly::term(1, m);
}

Poly divide_power(const Poly& f, int var, int e, const char* what) {
    if (e <= 0) return f;
    auto q = divide_exact(f, power_of(var, e));
    if (!q) throw PolyError(std::string(what) + ": exceptional divisor does not divide");
    return *q;
}

}  // namespace

int local_order(const Poly& f, const SqrtRel* rel) {
    Poly g = reduced(f, rel);
    if (g.is_zero()) return -1;
    const auto& ids = xy();
    return g.min_degree_in({ids.x, ids.y});
}

int alg_multiplicity(const LocalFoliation& F, const SqrtRel* rel) {
    int oa = local_order(F.a, rel), ob = local_order(F.b, rel);
    if (oa < 0 && ob < 0) throw PolyError("alg_multiplicity: zero germ");
    if (oa < 0) return ob;
    if (ob < 0) return oa;
    return std::min(oa, ob);
}

bool is_dicritical(const LocalFoliation& F, const SqrtRel* rel) {
    const auto& ids = xy();
    int m = alg_multiplicity(F, rel);
    Poly t = Poly::var(ids.x) * homogeneous_part(reduced(F.a, rel), m) +
             Poly::var(ids.y) * homogeneous_part(reduced(F.b, rel), m);
    return reduced(t, rel).is_zero();
}

LocalFoliation strict_transform(const LocalFoliation& F, int chart, const Poly& slope, int l, const SqrtRel* rel) {
    const auto& ids = xy();
    Poly x = Poly::var(ids.x), y = Poly::var(ids.y);
    LocalFoliation out;
    if (chart == 1) {
        Poly t = y + slope;
        std::map<int, Poly> b{{ids.y, x * t}};
        Poly a1 = F.a.subs(b), b1 = F.b.subs(b);
        out.a = divide_power(reduced(a1 + t * b1, rel), ids.x, l, "strict_transform");
        out.b = divide_power(reduced(x * b1, rel), ids.x, l, "strict_transform");
    } else {
        Poly s = x + slope;
        std::map<int, Poly> b{{ids.x, s * y}};
        Poly a1 = F.a.subs(b), b1 = F.b.subs(b);
        out.a = divide_power(reduced(y * a1, rel), ids.y, l, "strict_transform");
        out.b = divide_power(reduced(s * a1 + b1, rel), ids.y, l, "strict_transform");
    }
    return out;
}

Poly strict_transform(const Poly& f, int chart, const Poly& slope, const SqrtRel* rel) {
    const auto& ids = xy();
    Poly x = Poly::var(ids.x), y = Poly::var(ids.y);
    int m = local_order(f, rel);
    if (m < 0) throw PolyError("strict_transform: zero curve");
    if (chart == 1) return divide_power(reduced(f.subs(ids.y, x * (y + slope)), rel), ids.x, m, "strict_transform");
    return divide_power(reduced(f.subs(ids.x, (x + slope) * y), rel), ids.y, m, "strict_transform");
}

BlowUpResult blow_up(const LocalFoliation& F, const SqrtRel* rel) {
    BlowUpResult r;
    r.m = alg_multiplicity(F, rel);
    r.dicritical = is_dicritical(F, rel);
    r.l = r.m + (r.dicritical ? 1 : 0);
    r.chart1 = strict_transform(F, 1, Poly(0), r.l, rel);
    r.chart2 = strict_transform(F, 2, Poly(0), r.l, rel);
    return r;
}

std::vector<std::pair<int, mpq_class>> exceptional_singular_points(const LocalFoliation& F) {
    const auto& ids = xy();
    std::vector<std::pair<int, mpq_class>> out;
    if (is_dicritical(F)) return out;
    int m = alg_multiplicity(F);
    Poly T = Poly::var(ids.x) * homogeneous_part(F.a, m) + Poly::var(ids.y) * homogeneous_part(F.b, m);
    Poly t1 = T.eval({{ids.x, mpq_class(1)}});
    for (int v : t1.variables())
        if (v != ids.y) throw PolyError("exceptional_singular_points: coefficients must be rational");
    UPoly u = UPoly::from_poly(t1, ids.y);
    if (!u.is_zero())
        for (const auto& r : rational_roots(u)) out.emplace_back(1, r);
    if (T.eval({{ids.x, mpq_class(0)}, {ids.y, mpq_class(1)}}).is_zero()) out.emplace_back(2, mpq_class(0));
    return out;
}

std::array<Poly, 4> linear_part(const LocalFoliation& F) {
    const auto& ids = xy();
    std::map<int, mpq_class> zero{{ids.x, mpq_class(0)}, {ids.y, mpq_class(0)}};
    Poly P = -F.b, Q = F.a;
    return {P.diff(ids.x).eval(zero), P.diff(ids.y).eval(zero), Q.diff(ids.x).eval(zero), Q.diff(ids.y).eval(zero)};
}

Cluster c2_base_cluster() {
    Cluster c;
    ClusterPoint o;
    o.proj = {0, 0, 1};
    o.label = "(0:0:1)";
    ClusterPoint inf;
    inf.proj = {0, 1, 0};
    inf.label = "(0:1:0)";
    ClusterPoint near;
    near.parent = 1;
    near.chart = 1;
    near.slope = Poly(0);
    near.tangent = Line{mpq_class(0), mpq_class(0), mpq_class(1)};
    near.label = "(0:1:0) towards Z=0";
    c.points = {o, inf, near};
    return c;
}

int chart_index(const std::array<mpq_class, 3>& p) {
    if (p[2] != 0) return 2;
    if (p[1] != 0) return 1;
    if (p[0] != 0) return 0;
    throw PolyError("chart_index: zero point");
}

namespace {
std::array<int, 2> other_two(int k) {
    if (k == 0) return {1, 2};
    if (k == 1) return {0, 2};
    return {0, 1};
}
}  // namespace

LocalFoliation local_germ(const ProjectiveOneForm& w, const std::array<mpq_class, 3>& p) {
    const auto& ids = xy();
    int k = chart_index(p);
    auto o = other_two(k);
    std::map<int, Poly> b{{w.vars[k], Poly(1)},
                          {w.vars[o[0]], Poly::var(ids.x) + Poly(mpq_class(p[o[0]] / p[k]))},
                          {w.vars[o[1]], Poly::var(ids.y) + Poly(mpq_class(p[o[1]] / p[k]))}};
    auto c = w.coeffs();
    return {c[o[0]].subs(b), c[o[1]].subs(b)};
}

Poly local_germ(const Poly& F, const std::array<int, 3>& vars, const std::array<mpq_class, 3>& p) {
    const auto& ids = xy();
    int k = chart_index(p);
    auto o = other_two(k);
    std::map<int, Poly> b{{vars[k], Poly(1)},
                          {vars[o[0]], Poly::var(ids.x) + Poly(mpq_class(p[o[0]] / p[k]))},
                          {vars[o[1]], Poly::var(ids.y) + Poly(mpq_class(p[o[1]] / p[k]))}};
    return F.subs(b);
}

namespace {

struct Divisor {
    int owner;
    Poly eq;
};

struct GermState {
    std::optional<LocalFoliation> F;
    std::optional<Poly> f;
    std::vector<Divisor> divs;
};

// Walks the cluster, producing germs at every point and proximities.
template <typename Init, typename Step>
std::vector<PointInvariants> walk_cluster(const Cluster& c, const SqrtRel* rel, Init init, Step step,
                                          std::vector<GermState>& states) {
    const auto& ids = xy();
    std::vector<PointInvariants> inv(c.points.size());
    states.assign(c.points.size(), GermState{});
    for (size_t i = 0; i < c.points.size(); ++i) {
        const auto& pt = c.points[i];
        if (pt.parent < 0) {
            states[i] = init(pt.proj);
        } else {
            if (pt.parent >= static_cast<int>(i)) throw PolyError("cluster: parent must precede its point");
            const GermState& ps = states[pt.parent];
            GermState s = step(ps, inv[pt.parent], pt);
            s.divs.push_back({pt.parent, pt.chart == 1 ? Poly::var(ids.x) : Poly::var(ids.y)});
            for (const auto& d : ps.divs) {
                Poly g = strict_transform(d.eq, pt.chart, pt.slope, rel);
                if (local_order(g, rel) >= 1) s.divs.push_back({d.owner, g});
            }
            for (const auto& d : s.divs) inv[i].proximate_to.push_back(d.owner);
            std::sort(inv[i].proximate_to.begin(), inv[i].proximate_to.end());
            inv[i].satellite = inv[i].proximate_to.size() >= 2;
            if (inv[i].proximate_to.size() > 2) throw PolyError("cluster: point proximate to more than two points");
            states[i] = std::move(s);
        }
        if (states[i].F) {
            inv[i].m = alg_multiplicity(*states[i].F, rel);
            inv[i].dicritical = is_dicritical(*states[i].F, rel);
            inv[i].l = inv[i].m + (inv[i].dicritical ? 1 : 0);
        } else {
            inv[i].m = local_order(*states[i].f, rel);
            if (inv[i].m < 0) throw PolyError("cluster: zero curve germ");
        }
    }
    return inv;
}

}  // namespace

std::vector<PointInvariants> invariants_on_cluster(const ProjectiveOneForm& w, const Cluster& c, const SqrtRel* rel) {
    std::vector<GermState> states;
    auto init = [&](const std::array<mpq_class, 3>& p) {
        GermState s;
        LocalFoliation g = local_germ(w, p);
        s.F = LocalFoliation{reduced(g.a, rel), reduced(g.b, rel)};
        return s;
    };
    auto step = [&](const GermState& ps, const PointInvariants& pinv, const ClusterPoint& pt) {
        GermState s;
        s.F = strict_transform(*ps.F, pt.chart, pt.slope, pinv.l, rel);
        return s;
    };
    return walk_cluster(c, rel, init, step, states);
}

std::vector<PointInvariants> curve_invariants_on_cluster(const Poly& F, const std::array<int, 3>& vars, const Cluster& c,
                                                         const SqrtRel* rel) {
    std::vector<GermState> states;
    auto init = [&](const std::array<mpq_class, 3>& p) {
        GermState s;
        s.f = reduced(local_germ(F, vars, p), rel);
        return s;
    };
    auto step = [&](const GermState& ps, const PointInvariants&, const ClusterPoint& pt) {
        GermState s;
        s.f = strict_transform(*ps.f, pt.chart, pt.slope, rel);
        return s;
    };
    auto inv = walk_cluster(c, rel, init, step, states);
    // values: l(p) = m(p) + sum of l(q) over the points q that p is proximate to
    for (size_t i = 0; i < inv.size(); ++i) {
        inv[i].l = inv[i].m;
        for (int q : inv[i].proximate_to) inv[i].l += inv[q].l;
    }
    return inv;
}

std::vector<int> proximity_excess(const std::vector<PointInvariants>& inv) {
    std::vector<int> out(inv.size());
    for (size_t p = 0; p < inv.size(); ++p) {
        out[p] = inv[p].m;
        for (size_t q = 0; q < inv.size(); ++q)
            for (int t : inv[q].proximate_to)
                if (t == static_cast<int>(p)) out[p] -= inv[q].m;
    }
    return out;
}

bool multiplicities_monotone(const Cluster& c, const std::vector<PointInvariants>& inv) {
    for (size_t i = 0; i < c.points.size(); ++i)
        if (c.points[i].parent >= 0 && inv[i].m > inv[c.points[i].parent].m) return false;
    return true;
}

bool cluster_aligned(const Cluster& c) {
    if (c.points.size() != 3) throw PolyError("cluster_aligned: three points expected");
    std::vector<Line> candidates;
    std::vector<std::array<mpq_class, 3>> proper;
    for (const auto& p : c.points)
        if (p.parent < 0) proper.push_back(p.proj);
    for (size_t i = 0; i < proper.size(); ++i)
        for (size_t j = i + 1; j < proper.size(); ++j) {
            const auto &a = proper[i], &b = proper[j];
            Line l{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
            if (l[0] != 0 || l[1] != 0 || l[2] != 0) candidates.push_back(l);
        }
    for (const auto& p : c.points)
        if (p.tangent) candidates.push_back(*p.tangent);
    const auto& P = pv();
    for (const auto& l : candidates) {
        Poly L = Poly::var(P.X) * l[0] + Poly::var(P.Y) * l[1] + Poly::var(P.Z) * l[2];
        auto inv = curve_invariants_on_cluster(L, {P.X, P.Y, P.Z}, c);
        bool all = true;
        for (const auto& v : inv)
            if (v.m < 1) all = false;
        if (all) return true;
    }
    return false;
}

DegreePrediction predict_degrees(int dF, int dC, const std::array<int, 3>& mC, const std::array<int, 3>& lF) {
    DegreePrediction r;
    r.foliation_degree = 2 * (dF + 1) - (lF[0] + lF[1] + lF[2]);
    r.curve_degree = 2 * dC - (mC[0] + mC[1] + mC[2]);
    for (int k = 0; k < 3; ++k) {
        int i = (k + 1) % 3, j = (k + 2) % 3;
        r.inverse_m[k] = dC - mC[i] - mC[j];
        r.inverse_l[k] = dF + 2 - lF[i] - lF[j];
    }
    bool bad = r.foliation_degree < 0 || r.curve_degree < 0;
    for (int k = 0; k < 3; ++k) bad = bad || r.inverse_m[k] < 0 || r.inverse_l[k] < 0;
    if (bad) throw InvalidConfiguration("predict_degrees: negative degree or multiplicity");
    return r;
}

int classify_quadratic_preserving(const std::array<int, 3>& m, const std::array<bool, 3>& D) {
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    struct Pattern {
        int mi, mj, mk;
        bool di, dj, dk;
    };
    static const Pattern cases[7] = {{3, 0, 0, true, false, false}, {3, 1, 0, false, false, false},
                                     {2, 1, 0, true, false, false}, {1, 2, 0, true, false, false},
                                     {1, 1, 0, true, true, false},  {2, 1, 1, false, false, false},
                                     {1, 1, 1, true, false, false}};
    for (int c = 0; c < 7; ++c)
        for (const auto& p : perms) {
            const Pattern& pt = cases[c];
            if (m[p[0]] == pt.mi && m[p[1]] == pt.mj && m[p[2]] == pt.mk && D[p[0]] == pt.di && D[p[1]] == pt.dj &&
                D[p[2]] == pt.dk)
                return c + 1;
        }
    return 0;
}

int classify_quadratic_preserving(const ProjectiveOneForm& w, const Cluster& c, const SqrtRel* rel) {
    if (cluster_aligned(c)) throw InvalidConfiguration("base points are aligned");
    auto inv = invariants_on_cluster(w, c, rel);
    return classify_quadratic_preserving({inv[0].m, inv[1].m, inv[2].m},
                                         {inv[0].dicritical, inv[1].dicritical, inv[2].dicritical});
}

namespace {

struct Candidate {
    std::array<mpq_class, 3> proj;
    bool at_infinity;
};

mpq_class constant_of(const Poly& p) {
    if (!p.is_constant()) throw PolyError("ssp_existence: coefficients must be rational");
    return p.constant_term();
}

std::optional<SspWitness> try_node(const ProjectiveOneForm& w, const Candidate& cand) {
    LocalFoliation G = local_germ(w, cand.proj);
    auto J = linear_part(G);
    mpq_class j11 = constant_of(J[0]), j12 = constant_of(J[1]), j21 = constant_of(J[2]), j22 = constant_of(J[3]);
    mpq_class tr = j11 + j22, dt = j11 * j22 - j12 * j21;
    if (dt <= 0 || tr * tr - 4 * dt < 0) return std::nullopt;
    mpq_class q = tr * tr / dt;
    int r = 0;
    if (q == 4) r = 1;
    if (q == mpq_class(9, 2)) r = 2;
    if (q == mpq_class(16, 3)) r = 3;
    if (r == 0) return std::nullopt;
    SspWitness wit;
    wit.point = cand.proj;
    wit.at_infinity = cand.at_infinity;
    wit.ratio = r;
    ClusterPoint root;
    root.proj = cand.proj;
    wit.chain.points.push_back(root);
    for (int step = 1; step < r; ++step) {
        auto Jc = linear_part(G);
        mpq_class a11 = constant_of(Jc[0]), a12 = constant_of(Jc[1]), a21 = constant_of(Jc[2]), a22 = constant_of(Jc[3]);
        mpq_class t = a11 + a22, d = a11 * a22 - a12 * a21;
        int rr = r - step + 1;
        // eigenvalues rr*lambda and lambda
        mpq_class lam = t / (rr + 1);
        if (lam * lam * rr != d) return std::nullopt;
        mpq_class vx = a12, vy = lam - a11;
        if (vx == 0 && vy == 0) {
            vx = lam - a22;
            vy = a21;
        }
        ClusterPoint cp;
        cp.parent = static_cast<int>(wit.chain.points.size()) - 1;
        if (vx != 0) {
            cp.chart = 1;
            cp.slope = Poly(mpq_class(vy / vx));
        } else {
            cp.chart = 2;
            cp.slope = Poly(0);
        }
        G = strict_transform(G, cp.chart, cp.slope, alg_multiplicity(G) + (is_dicritical(G) ? 1 : 0));
        wit.chain.points.push_back(cp);
    }
    if (alg_multiplicity(G) != 1 || !is_dicritical(G)) return std::nullopt;
    return wit;
}

}  // namespace

std::optional<SspWitness> ssp_existence(const AffineSystem& sys) {
    if (!sys.p.den().is_constant() || !sys.q.den().is_constant() || sys.ext)
        throw PolyError("ssp_existence: coefficients must be rational");
    Poly p = sys.p.num() * mpq_class(1 / sys.p.den().constant_term());
    Poly q = sys.q.num() * mpq_class(1 / sys.q.den().constant_term());
    auto fin = singular_points(p, q);
    auto inf = infinite_singular_points(p, q);
    if (inf.line_of_singularities) throw NotApplicable("line of singular points at infinity");
    for (const auto& s : fin) {
        double scale = std::abs(s.ev1) + std::abs(s.ev2);
        if (s.type == PointType::Degenerate || std::abs(s.ev1 * s.ev2) < 1e-12 * (1 + scale * scale))
            throw NotApplicable("multiple finite singular point");
    }
    for (const auto& s : inf.points)
        if (s.type == PointType::Degenerate) throw NotApplicable("multiple infinite singular point");
    std::vector<Candidate> cands;
    for (const auto& s : fin)
        if (s.exact) cands.push_back({{s.exact->first, s.exact->second, mpq_class(1)}, false});
    for (const auto& s : inf.points)
        if (s.exact_u) {
            if (s.chart == 1)
                cands.push_back({{mpq_class(1), *s.exact_u, mpq_class(0)}, true});
            else
                cands.push_back({{mpq_class(0), mpq_class(1), mpq_class(0)}, true});
        }
    AffineSystem rs = sys;
    rs.p = p;
    rs.q = q;
    ProjectiveOneForm w = projectivize(rs);
    for (const auto& c : cands) {
        auto wit = try_node(w, c);
        if (!wit) continue;
        for (const auto& o : cands)
            if (o.proj != c.proj) {
                wit->completion = o.proj;
                break;
            }
        return wit;
    }
    return std::nullopt;
}

}  // namespace alc
