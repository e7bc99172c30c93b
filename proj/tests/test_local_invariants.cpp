#include "doctest.h"

#include "alc/families.hpp"
#include "alc/local_invariants.hpp"

using namespace alc;

namespace {

Cluster cusp_chain() {
    Cluster c;
    ClusterPoint p0;
    p0.proj = {0, 0, 1};
    ClusterPoint p1;
    p1.parent = 0;
    p1.chart = 1;
    p1.slope = 0;
    ClusterPoint p2;
    p2.parent = 1;
    p2.chart = 2;
    p2.slope = 0;  // where the exceptional divisor meets the strict transform
    c.points = {p0, p1, p2};
    return c;
}

}  // namespace

TEST_CASE("blow-up of elementary germs") {
    LocalFoliation star{parse_poly("y"), parse_poly("-x")};  // x' = x, y' = y
    auto bs = blow_up(star);
    CHECK(bs.dicritical);
    CHECK(bs.m == 1);
    CHECK(bs.l == 2);

    LocalFoliation saddle{parse_poly("-y"), parse_poly("-x")};  // x' = x, y' = -y
    auto bd = blow_up(saddle);
    CHECK(!bd.dicritical);
    CHECK(bd.l == 1);
    auto pts = exceptional_singular_points(saddle);
    CHECK(pts.size() == 2);  // the two separatrix directions

    LocalFoliation regular{Poly(1), Poly(0)};
    CHECK(alg_multiplicity(regular) == 0);
    CHECK(local_order(parse_poly("x^2*y + y^3")) == 3);
}

TEST_CASE("curve multiplicities along a cusp resolution") {
    const auto& P = pv();
    auto inv = curve_invariants_on_cluster(parse_poly("Y^2*Z - X^3"), {P.X, P.Y, P.Z}, cusp_chain());
    REQUIRE(inv.size() == 3);
    CHECK(inv[0].m == 2);
    CHECK(inv[1].m == 1);
    CHECK(inv[2].m == 1);
    CHECK(inv[2].satellite);
    auto ex = proximity_excess(inv);
    for (int e : ex) CHECK(e >= 0);
    CHECK(multiplicities_monotone(cusp_chain(), inv));
    Poly st = strict_transform(parse_poly("y^2 - x^3"), 1, Poly(0));
    CHECK(local_order(st) == 1);
}

TEST_CASE("C2 base cluster") {
    Cluster c = c2_base_cluster();
    REQUIRE(c.points.size() == 3);
    CHECK(c.points[2].parent == 1);
    CHECK(!cluster_aligned(c));
}

TEST_CASE("degree prediction") {
    auto p = predict_degrees(2, 4, {1, 1, 1}, {1, 1, 2});
    CHECK(p.curve_degree == 5);
    CHECK(p.foliation_degree == 2);
    auto q = predict_degrees(2, 4, {2, 2, 2}, {1, 1, 2});
    CHECK(q.curve_degree == 2);
    auto r = predict_degrees(2, 1, {0, 0, 0}, {0, 0, 0});
    CHECK(r.curve_degree == 2);
    CHECK(r.foliation_degree == 6);
}

TEST_CASE("quadratic-preserving pattern of the prepared CLS foliation") {
    PipelineReport rep = reproduce("cls-to-cls5");
    std::string prepared;
    for (const auto& [label, body] : rep.systems)
        if (label == "prepared") prepared = body;
    REQUIRE(!prepared.empty());
    SystemDescriptor d = descriptor_from_json(nlohmann::json::parse(prepared));
    ProjectiveOneForm w = projectivize(d.sys);
    auto inv = invariants_on_cluster(w, c2_base_cluster());
    REQUIRE(inv.size() == 3);
    CHECK(inv[0].m == 1);  // proper singular point
    CHECK(inv[1].m == 1);  // proper singular point at infinity
    CHECK(!inv[1].dicritical);
    CHECK(inv[2].dicritical);  // its first-neighbourhood point
    CHECK(classify_quadratic_preserving(w, c2_base_cluster()) == 7);
    CHECK(classify_quadratic_preserving({1, 1, 1}, {false, false, true}) == 7);
}

TEST_CASE("Yablonskii infinite node has eigenvalue ratio 2") {
    FamilyRecord yab = get_family("Yablonskii");
    auto w = ssp_existence(yab.sys.at(yab.reference_sample));
    REQUIRE(w);
    CHECK(w->at_infinity);
    CHECK(w->ratio == 2);
    AffineSystem rotation;  // a center and no real points at infinity
    rotation.p = parse_expr("-y");
    rotation.q = parse_expr("x");
    CHECK(!ssp_existence(rotation));
}
