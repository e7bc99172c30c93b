#include "doctest.h"

#include <random>

#include "alc/cremona.hpp"
#include "alc/families.hpp"

using namespace alc;

namespace {

std::array<RationalFn, 12> random_coeffs(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 3);
    std::array<RationalFn, 12> c;
    for (auto& v : c) v = RationalFn(mpq_class(num(rng), den(rng)));
    return c;
}

AffineSystem random_quadratic(std::mt19937& rng) {
    for (;;) {
        AffineSystem s = from_quad_coeffs(random_coeffs(rng));
        if (s.degree() == 2 && coprime_at(s, {{}})) return s;
    }
}

// a00 = b00 = a02 = 0 and b02 = 2 a11
AffineSystem random_admissible(std::mt19937& rng) {
    for (;;) {
        auto c = random_coeffs(rng);
        c[0] = 0;
        c[6] = 0;
        c[5] = 0;
        c[11] = c[4] * RationalFn(2);
        AffineSystem s = from_quad_coeffs(c);
        if (s.degree() == 2 && coprime_at(s, {{}})) return s;
    }
}

}  // namespace

TEST_CASE("normal forms are involutions on random quadratic foliations") {
    std::mt19937 rng(424242);
    const CremonaMap c1 = normal_form(CremonaKind::C1), c2 = normal_form(CremonaKind::C2);
    for (int i = 0; i < 100; ++i) {
        ProjectiveOneForm w = projectivize(random_quadratic(rng));
        const CremonaMap& m = i % 2 ? c2 : c1;
        ProjectiveOneForm once = uvw_to_xyz(pullback_form(m, w));
        ProjectiveOneForm twice = uvw_to_xyz(pullback_form(m, once));
        CHECK(proportional(twice, w));
    }
}

TEST_CASE("affine C2 transform is an involution under its hypotheses") {
    std::mt19937 rng(99);
    for (int i = 0; i < 100; ++i) {
        AffineSystem s = random_admissible(rng);
        CHECK(c2a_hypothesis_failures(s).empty());
        AffineSystem t = transform_c2a(s);
        CHECK(t.degree() == 2);
        CHECK(transform_c2a(t) == s);
    }
}

TEST_CASE("forward and inverse maps compose to a multiple of the identity") {
    const auto& P = pv();
    for (auto kind : {CremonaKind::C1, CremonaKind::C2, CremonaKind::C3}) {
        CremonaMap m = kind == CremonaKind::C3 ? normal_form(kind, mpq_class(2)) : normal_form(kind);
        std::map<int, Poly> sub{{P.U, m.forward[0]}, {P.V, m.forward[1]}, {P.W, m.forward[2]}};
        std::array<Poly, 3> comp{m.inverse[0].subs(sub), m.inverse[1].subs(sub), m.inverse[2].subs(sub)};
        std::array<Poly, 3> id{Poly::var(P.X), Poly::var(P.Y), Poly::var(P.Z)};
        // comp = h * id for one polynomial h
        auto h = divide_exact(comp[0], id[0]);
        REQUIRE(h);
        CHECK(comp[1] == *h * id[1]);
        CHECK(comp[2] == *h * id[2]);
        CHECK(m.base_cluster.size() == 3);
    }
}

TEST_CASE("hypothesis detector names the failing conditions") {
    AffineSystem yab = get_family("Yablonskii").sys;
    CHECK(c2a_hypothesis_failures(yab).empty());
    AffineSystem qin = get_family("Qin").sys;
    auto failed = c2a_hypothesis_failures(qin);
    CHECK(std::find(failed.begin(), failed.end(), "a00=0") != failed.end());
    try {
        transform_c2a(qin);
        FAIL("expected HypothesisError");
    } catch (const HypothesisError& e) {
        CHECK(e.failed_conditions == failed);
    }
    AffineSystem v;
    v.p = parse_expr("2*x + y + x^2 + x*y");
    v.q = parse_expr("x - y + x^2 + 3*y^2");
    auto fv = c2a_hypothesis_failures(v);
    REQUIRE(fv.size() == 1);
    CHECK(fv[0] == "b02=2a11");
    int form_degree = 0;
    AffineSystem g = c2_general(v, &form_degree);
    CHECK(g.degree() == 3);
}

TEST_CASE("image curve and cofactor under C2") {
    FamilyRecord yab = get_family("Yablonskii");
    AffineSystem t = transform_c2a(yab.sys);
    InvariantCurve c = c2a_invariant_curve(t, yab.curves[0]);
    CHECK(c.verified);
    CHECK(c.f.num().degree_in({xy().x, xy().y}) == 2);
}

TEST_CASE("direct image strips contractile factors") {
    const auto& P = pv();
    CremonaMap m = normal_form(CremonaKind::C1);
    std::vector<Poly> removed;
    Poly img = direct_image_curve(m, Poly::var(P.X) + Poly::var(P.Y) + Poly::var(P.Z), &removed);
    CHECK(img.total_degree() == 2);
    // a line through two base points is contracted to a point
    CHECK_THROWS_AS(direct_image_curve(m, Poly::var(P.X), &removed), PolyError);
}
