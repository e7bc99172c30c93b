#include "alc/cremona.hpp"

namespace alc {

const char* cremona_kind_name(CremonaKind k) {
    switch (k) {
        case CremonaKind::C1: return "C1";
        case CremonaKind::C2: return "C2";
        case CremonaKind::C3: return "C3";
    }
    return "?";
}

CremonaMap normal_form(CremonaKind kind, std::optional<mpq_class> c) {
    const auto& P = pv();
    Poly X = Poly::var(P.X), Y = Poly::var(P.Y), Z = Poly::var(P.Z);
    Poly U = Poly::var(P.U), V = Poly::var(P.V), W = Poly::var(P.W);
    CremonaMap m;
    m.kind = kind;
    switch (kind) {
        case CremonaKind::C1:
            m.forward = {Y * Z, X * Z, X * Y};
            m.inverse = {V * W, U * W, U * V};
            m.contractile_inverse = {U, V, W};
            m.contractile_forward = {X, Y, Z};
            m.base_cluster = {{{1, 0, 0}, -1, ""}, {{0, 1, 0}, -1, ""}, {{0, 0, 1}, -1, ""}};
            break;
        case CremonaKind::C2:
            m.forward = {X * Z, Y * Z, X * X};
            m.inverse = {U * W, V * W, U * U};
            m.contractile_inverse = {U, W};
            m.contractile_forward = {X, Z};
            m.base_cluster = {{{0, 0, 1}, -1, ""}, {{0, 1, 0}, -1, ""}, {{0, 1, 0}, 1, "Z=0"}};
            break;
        case CremonaKind::C3: {
            mpq_class cv = c.value_or(mpq_class(-1));
            if (cv == 0) throw PolyError("C3 normal form needs c != 0");
            m.c = cv;
            m.forward = {X * Z, Y * Z + X * X * cv, Z * Z};
            m.inverse = {U * W, V * W - U * U * cv, W * W};
            m.contractile_inverse = {W};
            m.contractile_forward = {Z};
            m.base_cluster = {{{0, 1, 0}, -1, ""}, {{0, 1, 0}, 0, "Z=0"}, {{0, 1, 0}, 1, "conic"}};
            break;
        }
    }
    return m;
}

Poly uvw_to_xyz(const Poly& f) {
    const auto& P = pv();
    return f.rename({{P.U, P.X}, {P.V, P.Y}, {P.W, P.Z}});
}

ProjectiveOneForm uvw_to_xyz(const ProjectiveOneForm& w) {
    const auto& P = pv();
    ProjectiveOneForm r = w;
    r.A = uvw_to_xyz(w.A);
    r.B = uvw_to_xyz(w.B);
    r.C = uvw_to_xyz(w.C);
    r.vars = {P.X, P.Y, P.Z};
    return r;
}

namespace {
std::map<int, Poly> inverse_bindings(const CremonaMap& m, const std::array<int, 3>& vars) {
    return {{vars[0], m.inverse[0]}, {vars[1], m.inverse[1]}, {vars[2], m.inverse[2]}};
}
}  // namespace

Poly direct_image_curve(const CremonaMap& m, const Poly& G, std::vector<Poly>* removed) {
    const auto& P = pv();
    for (const auto& f : m.contractile_forward)
        if (divide_exact(G, f)) throw PolyError("direct_image_curve: curve has a contractile component " + f.str());
    Poly H = G.subs(inverse_bindings(m, {P.X, P.Y, P.Z}));
    if (H.is_zero()) throw PolyError("direct_image_curve: zero image");
    for (const auto& f : m.contractile_inverse)
        for (;;) {
            auto q = divide_exact(H, f);
            if (!q) break;
            H = *q;
            if (removed) removed->push_back(f);
        }
    return H;
}

ProjectiveOneForm pullback_form(const CremonaMap& m, const ProjectiveOneForm& w, std::vector<Poly>* removed) {
    const auto& P = pv();
    auto b = inverse_bindings(m, w.vars);
    auto c = w.coeffs();
    std::array<Poly, 3> cs;
    for (int i = 0; i < 3; ++i) cs[i] = c[i].subs(b);
    std::array<int, 3> nv{P.U, P.V, P.W};
    std::array<Poly, 3> out;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) out[j] += cs[i] * m.inverse[i].diff(nv[j]);
    ProjectiveOneForm r = make_form(out[0], out[1], out[2], nv);
    r.scale = w.scale;
    std::vector<Poly> cand = m.contractile_inverse;
    for (int v : nv) cand.push_back(Poly::var(v));
    return strip_factors(r, cand, removed);
}

std::vector<std::string> c2a_hypothesis_failures(const AffineSystem& sys) {
    auto c = quad_coeffs(sys);
    std::vector<std::string> failed;
    if (!sys.norm(c[0]).is_zero()) failed.push_back("a00=0");
    if (!sys.norm(c[6]).is_zero()) failed.push_back("b00=0");
    if (!sys.norm(c[5]).is_zero()) failed.push_back("a02=0");
    if (!sys.norm(c[11] - c[4] * RationalFn(2)).is_zero()) failed.push_back("b02=2a11");
    return failed;
}

namespace {
std::map<int, RationalFn> c2a_bindings() {
    const auto& ids = xy();
    RationalFn x(Poly::var(ids.x)), y(Poly::var(ids.y));
    return {{ids.x, RationalFn(1) / x}, {ids.y, y / (x * x)}};
}

void require_polynomial_in_xy(const RationalFn& f, const char* what) {
    const auto& ids = xy();
    if (f.den().depends_on_any({ids.x, ids.y})) throw PolyError(std::string(what) + ": result is not polynomial");
}
}  // namespace

AffineSystem transform_c2a(const AffineSystem& sys) {
    auto failed = c2a_hypothesis_failures(sys);
    if (!failed.empty()) {
        std::string msg = "transform_c2a hypotheses violated:";
        for (const auto& f : failed) msg += " " + f;
        throw HypothesisError(msg, failed);
    }
    const auto& ids = xy();
    auto b = c2a_bindings();
    RationalFn P = substitute(sys.p, b), Q = substitute(sys.q, b);
    RationalFn x(Poly::var(ids.x)), y(Poly::var(ids.y));
    AffineSystem out = sys;
    out.p = sys.norm(x.pow(3) * P);
    out.q = sys.norm(RationalFn(2) * x * x * y * P - x.pow(3) * Q);
    require_polynomial_in_xy(out.p, "transform_c2a");
    require_polynomial_in_xy(out.q, "transform_c2a");
    return out;
}

RationalFn c2a_curve(const RationalFn& f) {
    const auto& ids = xy();
    int d = f.num().degree_in({ids.x, ids.y});
    RationalFn x(Poly::var(ids.x));
    RationalFn g = substitute(f.num(), c2a_bindings()) * x.pow(2 * d);
    require_polynomial_in_xy(g, "c2a_curve");
    Poly n = g.num();
    int e = n.min_degree_in({ids.x});
    if (e > 0) {
        Monomial m(ids.x + 1, 0);
        m[ids.x] = e;
        mono_trim(m);
        n = *divide_exact(n, Poly::term(1, m));
    }
    return RationalFn(n, g.den());
}

InvariantCurve c2a_invariant_curve(const AffineSystem& transformed, const InvariantCurve& c) {
    InvariantCurve out;
    out.f = transformed.norm(c2a_curve(c.f));
    auto k = compute_cofactor(transformed, out.f);
    if (k) {
        out.k = *k;
        out.verified = verify_invariant(transformed, out.f, out.k);
    }
    return out;
}

AffineSystem c2_general(const AffineSystem& sys, int* form_degree) {
    ProjectiveOneForm w = projectivize(sys);
    ProjectiveOneForm pb = pullback_form(normal_form(CremonaKind::C2), w);
    if (form_degree) *form_degree = pb.degree();
    AffineSystem out = affine_restrict(pb, {mpq_class(0), mpq_class(0), mpq_class(1)});
    out.name = sys.name;
    out.params = sys.params;
    out.domain = sys.domain;
    out.ext = sys.ext;
    out.p = sys.norm(out.p);
    out.q = sys.norm(out.q);
    return out;
}

}  // namespace alc
