#include "alc/analysis.hpp"

#include <algorithm>

namespace alc {

using nlohmann::json;

ComponentOptions family_window(const FamilyRecord& rec) {
    auto F = CompactifiedField::from(rec.sys);
    ComponentOptions w = default_window(F.p_exact, F.q_exact,
                                        rec.curves.empty() ? std::nullopt : std::optional<Poly>(rec.curves[0].f.num()));
    const auto& o = rec.window;
    if (o.center) w.center = *o.center;
    if (o.scale) w.scale = *o.scale;
    if (o.aspect) w.aspect = *o.aspect;
    if (o.cut) w.cut_radius = *o.cut;
    return w;
}

std::optional<SeedRegion> oval_region(const std::vector<CurveComponent>& comps, double margin) {
    SeedRegion r{1e300, -1e300, 1e300, -1e300};
    bool any = false;
    for (const auto& c : comps) {
        if (c.kind != "oval") continue;
        for (const auto& z : c.polyline) {
            r.xmin = std::min(r.xmin, z[0]);
            r.xmax = std::max(r.xmax, z[0]);
            r.ymin = std::min(r.ymin, z[1]);
            r.ymax = std::max(r.ymax, z[1]);
            any = true;
        }
    }
    if (!any) return std::nullopt;
    double w = r.xmax - r.xmin, h = r.ymax - r.ymin;
    r.xmin -= margin * w;
    r.xmax += margin * w;
    r.ymin -= margin * h;
    r.ymax += margin * h;
    return r;
}

namespace {

bool same_topology(const std::vector<CurveComponent>& got, const std::vector<ComponentNote>& want) {
    auto key = [](const std::string& k, size_t n) { return k + ":" + std::to_string(n); };
    std::vector<std::string> a, b;
    for (const auto& c : got) a.push_back(key(c.kind, c.singular_points.size()));
    for (const auto& c : want) b.push_back(key(c.kind, static_cast<size_t>(c.singular_points)));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

json points_json(const std::vector<Vec2>& pts) {
    json a = json::array();
    for (const auto& z : pts) a.push_back({z[0], z[1]});
    return a;
}

}  // namespace

std::string values_str(const ParamValues& v) {
    std::string s;
    for (const auto& [k, x] : v) s += (s.empty() ? "" : ",") + k + "=" + x.get_str();
    return s;
}

FamilyPhase analyze_family(const FamilyRecord& rec, const CycleOptions& opt) {
    FamilyPhase out;
    out.family = rec.name;
    if (rec.values) out.values = *rec.values;
    if (rec.curves.empty()) {
        out.cycle_error = "no invariant curve";
        return out;
    }
    Poly f = rec.curves[0].f.num();
    auto F = CompactifiedField::from(rec.sys);
    out.components = curve_components(f, F.p_exact, F.q_exact, family_window(rec));
    out.topology_match = same_topology(out.components, rec.components);
    auto region = oval_region(out.components);
    if (!region) {
        out.cycle_error = "no oval traced";
        return out;
    }
    try {
        out.cycle = detect_limit_cycle(F, *region, opt);
        if (out.cycle && !out.cycle->curve_residual) out.cycle->curve_residual = scaled_curve_residual(f, out.cycle->polyline);
        if (!out.cycle) out.cycle_error = "return map has no fixed point in the oval region";
    } catch (const std::exception& e) {
        out.cycle_error = e.what();
    }
    return out;
}

json FamilyPhase::to_json() const {
    json j;
    j["family"] = family;
    j["parameters"] = values_str(values);
    j["topology_match"] = topology_match;
    j["components"] = json::array();
    for (const auto& c : components)
        j["components"].push_back({{"kind", c.kind},
                                   {"singular_points", points_json(c.singular_points)},
                                   {"points", c.polyline.size()}});
    if (cycle) {
        j["cycle"] = {{"s", cycle->s},
                      {"point", {cycle->point[0], cycle->point[1]}},
                      {"period", cycle->period},
                      {"multiplier", cycle->multiplier},
                      {"curve_residual", cycle->curve_residual ? json(*cycle->curve_residual) : json(nullptr)},
                      {"verdict", cycle->verdict}};
    } else {
        j["cycle"] = nullptr;
        j["cycle_error"] = cycle_error;
    }
    return j;
}

Scene family_portrait(const FamilyRecord& rec, const std::vector<CycleCertificate>& cycles, RenderOptions opt) {
    std::vector<Poly> curves;
    for (const auto& c : rec.curves) curves.push_back(c.f.num());
    std::optional<Poly> cof;
    if (!rec.curves.empty()) cof = rec.curves[0].k.num();
    if (!opt.window && !curves.empty()) opt.window = family_window(rec);
    return render(CompactifiedField::from(rec.sys), curves, cof, cycles, opt);
}

}  // namespace alc
