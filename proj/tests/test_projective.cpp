#include "doctest.h"

#include "alc/families.hpp"
#include "alc/projective.hpp"

using namespace alc;

TEST_CASE("projectivize then restrict at Z = 0 gives back every family") {
    for (const auto& name : family_names()) {
        CAPTURE(name);
        FamilyRecord r = get_family(name);
        ProjectiveOneForm w = projectivize(r.sys);
        CHECK(w.euler_ok());
        CHECK(w.degree() == r.sys.degree());
        AffineSystem back = affine_restrict(w, {mpq_class(0), mpq_class(0), mpq_class(1)});
        back.ext = r.sys.ext;
        CHECK(proportional_systems(back, r.sys).has_value());
        // the line at infinity of a polynomial field is invariant unless it is dicritical
        CHECK(line_invariant(projectivize(r.sys.at(r.reference_sample)), {mpq_class(0), mpq_class(0), mpq_class(1)}));
    }
}

TEST_CASE("vector field representative reproduces the form") {
    AffineSystem s;
    s.p = parse_expr("2*(1 + 2*x - 2*a*x^2 + 6*x*y)");
    s.q = parse_expr("8 - 3*a - 14*a*x - 2*a*x*y - 8*y^2");
    ProjectiveOneForm w = projectivize(s);
    VectorFieldRep v = vector_field_from_form(w);
    auto abc = form_of(v, w.vars);
    ProjectiveOneForm back = make_form(abc[0], abc[1], abc[2], w.vars);
    CHECK(proportional(back, w));
    VectorFieldRep g = gauge_shift(v, parse_poly("X + Z"), w.vars);
    auto abc2 = form_of(g, w.vars);
    CHECK(proportional(make_form(abc2[0], abc2[1], abc2[2], w.vars), w));
}

TEST_CASE("Euler condition is enforced") {
    const auto& P = pv();
    CHECK_THROWS_AS(make_form(Poly::var(P.X), Poly(0), Poly(0), {P.X, P.Y, P.Z}), EulerError);
}

TEST_CASE("invariant lines") {
    AffineSystem ct;
    ct.p = parse_expr("x*(1 - x)");
    ct.q = parse_expr("-y + x*y");
    auto lines = find_invariant_lines(projectivize(ct));
    auto has = [&](const Line& l) {
        for (const auto& m : lines.lines)
            if (m[0] * l[1] == m[1] * l[0] && m[0] * l[2] == m[2] * l[0] && m[1] * l[2] == m[2] * l[1]) return true;
        return false;
    };
    CHECK(has({1, 0, 0}));   // x = 0
    CHECK(has({1, 0, -1}));  // x = 1
    CHECK(has({0, 1, 0}));   // y = 0
    CHECK(has({0, 0, 1}));   // infinity
    AffineSystem moved = affine_restrict(projectivize(ct), {1, 0, -1});
    CHECK(moved.degree() == 2);
    CHECK_THROWS_AS(affine_restrict(projectivize(ct), {1, 1, 1}), NotInvariant);

    AffineSystem star;
    star.p = parse_expr("x");
    star.q = parse_expr("y");
    auto sl = find_invariant_lines(projectivize(star));
    CHECK(!sl.pencils.empty());
}

TEST_CASE("common factors are stripped") {
    const auto& P = pv();
    ProjectiveOneForm w = projectivize(get_family("Qin").sys.at({{"a", 1}, {"b", 0}, {"c", 2}}));
    Poly L = Poly::var(P.X) + Poly::var(P.Z);
    ProjectiveOneForm big = make_form(w.A * L, w.B * L, w.C * L, w.vars);
    std::vector<Poly> removed;
    ProjectiveOneForm s = strip_factors(big, {L}, &removed);
    CHECK(removed.size() == 1);
    CHECK(proportional(s, w));
}
