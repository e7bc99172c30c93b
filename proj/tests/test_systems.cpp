#include "doctest.h"

#include "alc/descriptor.hpp"
#include "alc/systems.hpp"

using namespace alc;

namespace {

AffineSystem qin() {
    AffineSystem s;
    s.name = "Qin";
    s.params = {"a", "b", "c"};
    s.p = parse_expr("-y*(a*x + b*y + c) - (x^2 + y^2 - 1)");
    s.q = parse_expr("x*(a*x + b*y + c)");
    return s;
}

AffineSystem yablonskii() {
    AffineSystem s;
    s.name = "Yablonskii";
    s.params = {"a", "b", "c"};
    s.p = parse_expr("-4*a*b*c*x - (a+b)*y + 3*(a+b)*c*x^2 + 4*x*y");
    s.q = parse_expr("(a+b)*a*b*x - 4*a*b*c*y + (4*a*b*c^2 - 3/2*(a+b)^2 + 4*a*b)*x^2 + 8*(a+b)*c*x*y + 8*y^2");
    return s;
}

}  // namespace

TEST_CASE("invariance identity and cofactor recovery") {
    AffineSystem s = qin();
    RationalFn circle = parse_expr("x^2 + y^2 - 1");
    CHECK(invariance_residual(s, circle, parse_expr("-2*x")).is_zero());
    CHECK(!invariance_residual(s, circle, parse_expr("2*x")).is_zero());
    auto k = compute_cofactor(s, circle);
    REQUIRE(k);
    CHECK(*k == parse_expr("-2*x"));
    CHECK(!compute_cofactor(s, parse_expr("x")));

    AffineSystem y = yablonskii();
    auto ky = compute_cofactor(y, parse_expr("(y + c*x^2)^2 + x^2*(x-a)*(x-b)"));
    REQUIRE(ky);
    CHECK(ky->num().degree_in({xy().x, xy().y}) == 1);
}

TEST_CASE("affine changes compose, invert and carry invariant curves") {
    AffineSystem s = qin().at({{"a", 1}, {"b", mpq_class(1, 2)}, {"c", 3}});
    AffineChange ch;
    ch.m11 = 2;
    ch.m12 = 1;
    ch.m21 = -1;
    ch.m22 = 3;
    ch.tx = mpq_class(1, 2);
    ch.ty = -1;
    ch.time_scale = mpq_class(-3, 7);
    AffineSystem t = apply_affine(s, ch);
    CHECK(apply_affine(t, ch.inverse()) == s);
    CHECK(apply_affine(s, ch.then(ch.inverse())) == s);
    InvariantCurve c{parse_expr("x^2 + y^2 - 1"), parse_expr("-2*x")};
    InvariantCurve tc = apply_affine(c, ch, &s);
    CHECK(verify_invariant(t, tc.f, tc.k));
    CHECK(apply_affine(s, AffineChange::swap().then(AffineChange::swap())) == s);
    AffineChange singular;
    singular.m11 = 1;
    singular.m12 = 2;
    singular.m21 = 2;
    singular.m22 = 4;
    CHECK_THROWS_AS(singular.inverse(), PolyError);
}

TEST_CASE("quadratic coefficient vector round trip") {
    AffineSystem y = yablonskii();
    auto c = quad_coeffs(y);
    CHECK(c[0].is_zero());
    CHECK(c[4] == RationalFn(4));
    CHECK(c[11] == RationalFn(8));
    AffineSystem back = from_quad_coeffs(c);
    CHECK(back.p == y.p);
    CHECK(back.q == y.q);
}

TEST_CASE("singular points and indices") {
    AffineSystem s = qin().at({{"a", 1}, {"b", mpq_class(1, 2)}, {"c", 3}});
    auto pts = singular_points(s.p.num(), s.q.num());
    int focus_like = 0;
    for (const auto& p : pts) {
        if (!p.real) continue;
        CHECK(std::abs(p.x.imag()) < 1e-12);
        if (p.type == PointType::Focus || p.type == PointType::Node) ++focus_like;
    }
    CHECK(focus_like >= 1);
    auto sum = sphere_index_sum(s.p.num(), s.q.num());
    REQUIRE(sum);
    CHECK(*sum == 2);

    const auto& v = xy();
    Poly P = parse_poly("x"), Q = parse_poly("-y");
    CHECK(winding_index(P, Q, v.x, v.y, 0, 0, 1) == -1);
    CHECK(winding_index(parse_poly("-y"), parse_poly("x"), v.x, v.y, 0, 0, 1) == 1);
    auto st = singular_points(parse_poly("x"), parse_poly("y"));
    REQUIRE(st.size() == 1);
    CHECK(st[0].type == PointType::StarNode);

    auto inf = infinite_singular_points(parse_poly("x"), parse_poly("y"));
    CHECK(inf.line_of_singularities);
}

TEST_CASE("chart fields") {
    auto [u1, v1] = chart_field(parse_poly("-y"), parse_poly("x"), 1);
    CHECK(u1 == parse_poly("1 + u^2"));
    CHECK(v1 == parse_poly("u*v"));
}

TEST_CASE("parameter domains") {
    ParamDomain d{"beta > 3/2; beta < 2"};
    CHECK(d.contains({{"beta", mpq_class(7, 4)}}));
    CHECK(!d.contains({{"beta", 2}}));
    auto bad = d.violated({{"beta", 3}});
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == "beta < 2");
    ParamDomain y{"a*b*c != 0; a != b; a*b > 0"};
    CHECK(y.contains({{"a", 1}, {"b", 2}, {"c", 1}}));
    CHECK(!y.contains({{"a", 1}, {"b", 1}, {"c", 1}}));
}

TEST_CASE("descriptor JSON round trip") {
    AffineSystem s = yablonskii();
    s.domain.text = "a*b*c != 0";
    InvariantCurve c{parse_expr("(y + c*x^2)^2 + x^2*(x-a)*(x-b)"), *compute_cofactor(s, parse_expr("(y + c*x^2)^2 + x^2*(x-a)*(x-b)"))};
    auto j = to_json(s, {c});
    SystemDescriptor d = descriptor_from_json(j);
    CHECK(d.sys == s);
    REQUIRE(d.curves.size() == 1);
    CHECK(d.curves[0].f == c.f);
    CHECK(d.curves[0].k == c.k);
    CHECK(to_json(d.sys, d.curves) == j);
    CHECK_THROWS_AS(descriptor_from_json(nlohmann::json::array()), DescriptorError);
    auto bad = j;
    bad["vars"] = {"u", "v"};
    CHECK_THROWS_AS(descriptor_from_json(bad), DescriptorError);
}

TEST_CASE("specialization and coprimality") {
    AffineSystem s = qin();
    CHECK(coprime_at(s, {{{"a", 1}, {"b", 0}, {"c", 2}}}));
    AffineSystem common;
    common.p = parse_expr("x*(x + y)");
    common.q = parse_expr("x*(y - 1)");
    CHECK(!coprime_at(common, {{}}));
    CHECK(s.degree() == 2);
}
