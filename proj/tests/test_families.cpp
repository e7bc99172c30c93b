#include "doctest.h"

#include <fstream>

#include "alc/families.hpp"

using namespace alc;
using nlohmann::json;

TEST_CASE("registry entries verify exactly") {
    CHECK(family_names().size() == 8);
    for (const auto& name : family_names()) {
        CAPTURE(name);
        FamilyRecord r = get_family(name);
        VerifyReport rep = verify_family(r);
        CHECK(rep.pass);
        CHECK(!r.components.empty());
        CHECK(r.sys.domain.contains(r.reference_sample));
        for (const auto& c : r.curves) CHECK(c.k.num().degree_in({xy().x, xy().y}) <= r.sys.degree() - 1);
    }
}

TEST_CASE("lookup is case-insensitive and checks the domain") {
    CHECK(get_family("cls5").name == "CLS5");
    CHECK(get_family("YABLONSKII").name == "Yablonskii");
    CHECK_THROWS_AS(get_family("nope"), UnknownName);
    CHECK_THROWS_AS(get_family("CLS6", {{"beta", mpq_class(5, 2)}}), DomainError);
    CHECK_THROWS_AS(get_family("CLS6", {}), DomainError);
    CHECK_THROWS_AS(get_family("CLS6", {{"beta", mpq_class(7, 4)}, {"zeta", 1}}), DomainError);
    FamilyRecord r = get_family("CLS6", {{"beta", mpq_class(7, 4)}});
    CHECK(r.sys.params.empty());
    CHECK(verify_family(r).pass);
}

TEST_CASE("index sum on the sphere is 2 at every registry sample") {
    for (const auto& name : family_names()) {
        FamilyRecord base = get_family(name);
        std::vector<ParamValues> samples = base.samples;
        samples.push_back(base.reference_sample);
        for (const auto& v : samples) {
            CAPTURE(name);
            AffineSystem s = base.sys.at(v);
            auto sum = sphere_index_sum(s.p.num(), s.q.num());
            REQUIRE(sum);
            CHECK(*sum == 2);
        }
    }
}

TEST_CASE("pipelines match the stored golden reports") {
    for (const auto& id : pipeline_ids()) {
        CAPTURE(id);
        PipelineReport rep = reproduce(id);
        CHECK(rep.pass);
        std::ifstream in(data_dir() + "/golden/" + id + ".json");
        REQUIRE(in.good());
        json golden = json::parse(in);
        json now = rep.to_json();
        CHECK(now["checks"] == golden["checks"]);
        CHECK(now["degrees"] == golden["degrees"]);
        CHECK(now["stages"] == golden["stages"]);
        for (const auto& d : rep.degrees) {
            CHECK(d.predicted.curve_degree == d.image_curve_degree);
            CHECK(d.predicted.foliation_degree == 2);
        }
    }
}

TEST_CASE("affine equivalence finds a known change and rejects other families") {
    AffineSystem a = get_family("CLS5", {{"alpha", mpq_class(397, 100)}}).sys;
    AffineChange c;
    c.m11 = 2;
    c.m12 = 1;
    c.m21 = -1;
    c.m22 = 3;
    c.tx = mpq_class(1, 2);
    c.ty = -1;
    c.time_scale = mpq_class(-3, 7);
    AffineSystem b = apply_affine(a, c);
    EquivalenceResult r = affine_equivalent(a, b);
    REQUIRE(r.change);
    CHECK(apply_affine(a, *r.change) == b);
    CHECK(affine_equivalent(a, a).change.has_value());

    AffineSystem afl = get_family("AFL5", {{"gamma", mpq_class(1, 20)}}).sys;
    EquivalenceResult n = affine_equivalent(a, afl);
    CHECK(!n.change);
    CHECK(!n.reason.empty());
}

TEST_CASE("proportionality up to a constant") {
    AffineSystem a = get_family("Qin").sys;
    AffineSystem b = a;
    b.p = a.p * RationalFn(mpq_class(-2, 3));
    b.q = a.q * RationalFn(mpq_class(-2, 3));
    auto c = proportional_systems(b, a);
    REQUIRE(c);
    CHECK(*c == RationalFn(mpq_class(-2, 3)));
    b.q = a.q;
    CHECK(!proportional_systems(b, a));
}

TEST_CASE("singular ratio invariant is preserved by affine changes") {
    AffineSystem a = get_family("Qin", {{"a", 1}, {"b", 0}, {"c", 2}}).sys;
    AffineChange c = AffineChange::translation(1, -2).then(AffineChange::swap());
    c.time_scale = 5;
    auto ia = singular_ratio_invariant(a.p.num(), a.q.num());
    AffineSystem b = apply_affine(a, c);
    auto ib = singular_ratio_invariant(b.p.num(), b.q.num());
    REQUIRE(ia.available);
    REQUIRE(ib.available);
    CHECK(ia.variant == ib.variant);
    CHECK(ia.charpoly == ib.charpoly);
}
