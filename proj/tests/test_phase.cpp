#include "doctest.h"

#include <cmath>

#include "alc/analysis.hpp"

using namespace alc;

namespace {

CompactifiedField field(const std::string& p, const std::string& q) {
    return CompactifiedField::from(parse_poly(p), parse_poly(q));
}

}  // namespace

TEST_CASE("harmonic oscillator returns to its start after one period") {
    CompactifiedField F = field("-y", "x");
    Trajectory t = integrate(F, {1, 0}, 2 * M_PI);
    REQUIRE(t.end == "time");
    const Vec2 z = t.points.back().z;
    CHECK(std::hypot(z[0] - 1, z[1]) < 1e-8);
    for (const auto& p : t.points) CHECK(std::abs(std::hypot(p.z[0], p.z[1]) - 1) < 1e-8);
    Trajectory back = integrate(F, {1, 0}, -M_PI / 2);
    CHECK(std::hypot(back.points.back().z[0], back.points.back().z[1] + 1) < 1e-8);
}

TEST_CASE("blow-up in finite time reaches infinity in the compactified flow") {
    CompactifiedField F = field("x^2", "-y");
    IntegrateOptions o;
    o.compactify = true;
    Trajectory t = integrate(F, {1, 0.5}, 50, o);
    CHECK(t.end == "infinity");
    Trajectory affine = integrate(F, {1, 0.5}, 50);
    CHECK(affine.end == "infinity");
    CHECK(affine.points.back().t < 1.01);  // x = 1/(1 - t)
}

TEST_CASE("chart fields agree with the affine field") {
    for (const auto& name : family_names()) {
        CAPTURE(name);
        FamilyRecord r = get_family(name);
        CompactifiedField F = CompactifiedField::from(r.sys.at(r.reference_sample));
        CHECK(F.chart_consistency() < 1e-9);
    }
    CompactifiedField cubic = field("y - x^3", "-x + x*y^2");
    CHECK(cubic.chart_consistency() < 1e-9);
}

TEST_CASE("chart transitions invert each other") {
    for (int c = 1; c <= 2; ++c) {
        Vec2 z{0.7, -2.5};
        Vec2 back = from_chart(c, to_chart(c, z));
        CHECK(std::hypot(back[0] - z[0], back[1] - z[1]) < 1e-12);
        Vec2 d = disk_point(0, z);
        Vec2 e = disk_point(c, to_chart(c, z));
        CHECK(std::hypot(d[0] - e[0], d[1] - e[1]) < 1e-12);
    }
    Vec2 far = disk_point(0, {1e12, 0});
    CHECK(std::abs(std::hypot(far[0], far[1]) - 1) < 1e-9);
}

TEST_CASE("Qin cycle is the unit circle") {
    FamilyRecord r = get_family("Qin", {{"a", 1}, {"b", 0}, {"c", 2}});
    CompactifiedField F = CompactifiedField::from(r.sys);
    auto cert = detect_limit_cycle(F, {-1.4, 1.4, -1.4, 1.4});
    REQUIRE(cert);
    for (const auto& z : cert->polyline) CHECK(std::abs(std::hypot(z[0], z[1]) - 1) < 1e-6);
    CHECK(std::abs(cert->multiplier - 1) > 1e-3);
    CHECK(*cert->curve_residual < 1e-6);
    CHECK(cert->period > 0);
}

TEST_CASE("no focus, no cycle") {
    CompactifiedField saddle = field("x", "-y");
    CHECK_THROWS_AS(detect_limit_cycle(saddle, {-1, 1, -1, 1}), NoFocus);
    CompactifiedField center = field("-y", "x");
    // every orbit is closed: the return map is the identity and no isolated cycle exists
    auto c = detect_limit_cycle(center, {-1, 1, -1, 1});
    CHECK(!c);
}

TEST_CASE("logarithmic derivative law along orbits for every curve") {
    for (const auto& name : family_names()) {
        FamilyRecord base = get_family(name);
        FamilyRecord r = get_family(name, base.reference_sample);
        CompactifiedField F = CompactifiedField::from(r.sys);
        for (const auto& c : r.curves) {
            for (Vec2 z0 : std::vector<Vec2>{{0.3, 0.2}, {-0.7, 0.4}, {1.1, -0.9}, {0.05, 2.3}}) {
                CAPTURE(name);
                CAPTURE(z0[0]);
                auto chk = log_derivative_check(F, c.f.num(), c.k.num(), z0, 3);
                CHECK(chk.pass);
                CHECK(chk.max_deviation <= chk.budget);
            }
        }
    }
}

TEST_CASE("components of a circle and of a line pair") {
    Poly p = parse_poly("-y - (x^2 + y^2 - 1)"), q = parse_poly("x");
    auto comps = curve_components(parse_poly("x^2 + y^2 - 1"), p, q);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].kind == "oval");
    CHECK(comps[0].singular_points.empty());
    for (const auto& z : comps[0].polyline) CHECK(std::abs(std::hypot(z[0], z[1]) - 1) < 1e-3);

    // parallel lines share their points at infinity; the cut keeps them apart
    Poly f = parse_poly("x*(x - 3)"), lp = parse_poly("x*(x - 3)"), lq = parse_poly("y - 1");
    auto lines = curve_components(f, lp, lq, default_window(lp, lq, f));
    REQUIRE(lines.size() == 2);
    for (const auto& c : lines) CHECK(c.kind == "unbounded");
}

TEST_CASE("registry component notes hold at the reference samples") {
    for (const auto& name : family_names()) {
        CAPTURE(name);
        FamilyRecord base = get_family(name);
        FamilyPhase ph = analyze_family(get_family(name, base.reference_sample));
        CHECK(ph.topology_match);
        REQUIRE(ph.cycle);
        CHECK(*ph.cycle->curve_residual < 1e-6);
        CHECK(std::abs(ph.cycle->multiplier - 1) > 1e-3);
    }
}

TEST_CASE("render is deterministic for a fixed seed") {
    FamilyRecord r = get_family("Qin", {{"a", 1}, {"b", 0}, {"c", 2}});
    RenderOptions o;
    o.reproducible = true;
    o.trajectories = 6;
    Scene a = family_portrait(r, {}, o), b = family_portrait(r, {}, o);
    CHECK(a.svg == b.svg);
    CHECK(a.json == b.json);
    CHECK(a.svg.find("class=\"curve\"") != std::string::npos);
    CHECK(a.svg.find("class=\"cofactor\"") != std::string::npos);
    CHECK(a.svg.find("<!-- generated") == std::string::npos);
    CHECK(a.json["curves"].size() == 1);

    o.seed = 2;
    Scene c = family_portrait(r, {}, o);
    CHECK(c.json["trajectories"] != a.json["trajectories"]);

    int index_sum = 0;
    for (const auto& s : a.json["singular_points"]) index_sum += s["index"].get<int>() * (s["at_infinity"] ? 1 : 2);
    CHECK(index_sum == 2);
}

TEST_CASE("render without curves draws trajectories only") {
    CompactifiedField F = field("y", "-x - y + x^2");
    RenderOptions o;
    o.reproducible = true;
    Scene s = render(F, {}, std::nullopt, {}, o);
    CHECK(s.json["curves"].empty());
    CHECK(s.json["trajectories"].size() == 24);
    CHECK(s.svg.find("class=\"curve\"") == std::string::npos);
}
