#include "doctest.h"

#include <random>

#include "alc/rational_fn.hpp"
#include "alc/sqrt_ext.hpp"
#include "alc/upoly.hpp"

using namespace alc;

namespace {

Poly random_poly(std::mt19937& rng, int max_terms = 5, int max_deg = 3) {
    static const std::vector<int> vars{var_id("x"), var_id("y"), var_id("a")};
    std::uniform_int_distribution<int> nterms(0, max_terms), deg(0, max_deg), num(-9, 9), den(1, 5), pick(0, 2);
    Poly p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Poly t(mpq_class(num(rng), den(rng)));
        int d = deg(rng);
        for (int k = 0; k < d; ++k) t *= Poly::var(vars[pick(rng)]);
        p += t;
    }
    return p;
}

}  // namespace

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937 rng(20240611);
    const int x = var_id("x");
    for (int i = 0; i < 1000; ++i) {
        Poly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        CHECK(a + Poly(0) == a);
        CHECK(a * Poly(1) == a);
        CHECK((a * b).diff(x) == a.diff(x) * b + a * b.diff(x));
        if (!a.is_zero() && !b.is_zero()) {
            CHECK((a * b).total_degree() == a.total_degree() + b.total_degree());
            auto q = divide_exact(a * b, b);
            REQUIRE(q);
            CHECK(*q == a);
        }
    }
}

TEST_CASE("parse and print round trip") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        Poly a = random_poly(rng);
        CHECK(parse_poly(a.str()) == a);
    }
    CHECK(parse_poly("(x+1)^2") == parse_poly("x^2 + 2*x + 1"));
    CHECK(parse_poly("3/2*x*y - x*y/2") == parse_poly("x*y"));
    CHECK_THROWS_AS(parse_poly("x/(y+1)"), PolyError);
    CHECK_THROWS_AS(parse_expr("x +* y"), PolyError);
}

TEST_CASE("substitution and evaluation") {
    const int x = var_id("x"), y = var_id("y");
    Poly f = parse_poly("x^2*y - 3*y + 1");
    CHECK(f.subs(x, parse_poly("y + 1")) == parse_poly("(y+1)^2*y - 3*y + 1"));
    CHECK(f.eval({{x, 2}, {y, mpq_class(1, 3)}}) == Poly(mpq_class(4, 3) - 1 + 1));
    CHECK(f.degree_in(x) == 2);
    CHECK(f.degree_in({x, y}) == 3);
    CHECK(f.min_degree_in({x, y}) == 0);
    CHECK(divide_exact(parse_poly("x^2 - y^2"), parse_poly("x - y")) == parse_poly("x + y"));
    CHECK(!divide_exact(parse_poly("x^2 + y^2"), parse_poly("x - y")));
}

TEST_CASE("homogenize then dehomogenize is the identity") {
    std::mt19937 rng(11);
    const int x = var_id("x"), y = var_id("y"), X = var_id("X"), Y = var_id("Y"), Z = var_id("Z");
    for (int i = 0; i < 100; ++i) {
        Poly f = random_poly(rng);
        int d = f.degree_in({x, y});
        if (d < 0) continue;
        Poly F = homogenize(f, {x, y}, {X, Y, Z}, d);
        for (const auto& [m, c] : F.terms()) CHECK(mono_exp(m, X) + mono_exp(m, Y) + mono_exp(m, Z) == d);
        CHECK(dehomogenize(F, {X, Y, Z}, {x, y}) == f);
    }
}

TEST_CASE("rational functions normalize") {
    RationalFn r = parse_expr("(x^2 - 1)/(x - 1)");
    CHECK(r.is_poly());
    CHECK(r.as_poly() == parse_poly("x + 1"));
    RationalFn s = parse_expr("1/(a+4) - 1/(a+4)");
    CHECK(s.is_zero());
    RationalFn t = parse_expr("(a^2-16)/(2*a+8)");
    CHECK(t == parse_expr("a/2 - 2"));
    CHECK(parse_expr("1/x").diff(var_id("x")) == parse_expr("-1/x^2"));
    CHECK_THROWS_AS(parse_expr("1/x").as_poly(), PolyError);
}

TEST_CASE("square-root extensions") {
    auto rad = std::make_shared<const RationalFn>(RationalFn(parse_poly("16 - a")));
    SqrtExt s = SqrtExt::root(rad);
    CHECK((s * s).b().is_zero());
    CHECK((s * s).a() == RationalFn(parse_poly("16 - a")));
    SqrtExt u = s.lift(RationalFn(3)) + s;
    CHECK((u / u).a() == RationalFn(1));
    CHECK((u / u).b().is_zero());
    QuadElem q(1, 1, 2);
    CHECK(q * q.inverse() == QuadElem(1));
    CHECK(std::abs(q.approx() - (1 + std::sqrt(2.0))) < 1e-15);

    SqrtRel rel{var_id("s"), parse_poly("16 - a")};
    CHECK(rel.reduce(parse_poly("s^3")) == parse_poly("(16 - a)*s"));
}

TEST_CASE("univariate roots and resultants") {
    UPoly p({-2, 0, 1});  // t^2 - 2
    auto roots = real_roots(p, mpq_class(1, 1000000));
    REQUIRE(roots.size() == 2);
    CHECK(std::abs(roots[1].value().get_d() - std::sqrt(2.0)) < 1e-6);
    CHECK(rational_roots(UPoly({-6, 1, 1})).size() == 2);  // (t+3)(t-2)
    CHECK(resultant(UPoly({-1, 1}), UPoly({-2, 1})) != 0);
    CHECK(resultant(UPoly({-1, 1}), UPoly({-1, 0, 1})) == 0);
    UPoly g = gcd(UPoly({-1, 0, 1}), UPoly({1, 2, 1}));  // gcd(t^2-1, (t+1)^2)
    CHECK(g.degree() == 1);
    const int x = var_id("x"), y = var_id("y");
    UPoly r = resultant_y(parse_poly("x^2 + y^2 - 1"), parse_poly("y - x"), x, y);
    CHECK(r.degree() == 2);
    CHECK(r.eval(mpq_class(0)) != 0);
    auto cr = complex_roots(UPoly({1, 0, 1}));
    REQUIRE(cr.size() == 2);
    CHECK(std::abs(std::abs(cr[0].imag()) - 1) < 1e-12);
}
