#include "alc/families.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <mutex>

#ifndef ALC_DATA_DIR_DEFAULT
#define ALC_DATA_DIR_DEFAULT "data"
#endif

namespace alc {

using nlohmann::json;

namespace {

const std::vector<std::string>& canonical_names() {
    static const std::vector<std::string> n{"Qin", "Yablonskii", "Filipstov", "Chavarriga", "CLS", "CLS5", "CLS6", "AFL5"};
    return n;
}

std::string lower(std::string s) {
    for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return s;
}

std::string canonical(const std::string& name) {
    for (const auto& n : canonical_names())
        if (lower(n) == lower(name)) return n;
    throw UnknownName("unknown family: " + name);
}

}  // namespace

std::string data_dir() {
    if (const char* e = std::getenv("ALC_DATA_DIR")) return e;
    return ALC_DATA_DIR_DEFAULT;
}

std::vector<std::string> family_names() { return canonical_names(); }

ParamValues parse_param_values(const json& obj) {
    ParamValues v;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const auto& val = it.value();
        std::string s = val.is_string() ? val.get<std::string>() : val.dump();
        v[it.key()] = mpq_class(s);
        v[it.key()].canonicalize();
    }
    return v;
}

FamilyRecord family_from_descriptor(const SystemDescriptor& d) {
    FamilyRecord r;
    r.name = d.sys.name;
    r.sys = d.sys;
    r.curves = d.curves;
    r.curve_degree = d.extra.value("curve_degree", 0);
    if (d.extra.contains("samples"))
        for (const auto& s : d.extra["samples"]) r.samples.push_back(parse_param_values(s));
    if (d.extra.contains("components"))
        for (const auto& c : d.extra["components"])
            r.components.push_back({c.at("kind").get<std::string>(), c.value("singular_points", 0)});
    if (d.extra.contains("reference_sample")) r.reference_sample = parse_param_values(d.extra["reference_sample"]);
    else if (!r.samples.empty()) r.reference_sample = r.samples.front();
    if (d.extra.contains("window")) {
        const auto& w = d.extra["window"];
        if (w.contains("center")) r.window.center = w["center"].get<std::array<double, 2>>();
        if (w.contains("scale")) r.window.scale = w["scale"].get<double>();
        if (w.contains("aspect")) r.window.aspect = w["aspect"].get<double>();
        if (w.contains("cut")) r.window.cut = w["cut"].get<double>();
    }
    return r;
}

FamilyRecord get_family(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, FamilyRecord> cache;
    std::string n = canonical(name);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    FamilyRecord r = family_from_descriptor(load_descriptor(data_dir() + "/families/" + lower(n) + ".json"));
    cache[n] = r;
    return r;
}

FamilyRecord get_family(const std::string& name, const ParamValues& values) {
    FamilyRecord r = get_family(name);
    for (const auto& p : r.sys.params)
        if (!values.count(p)) throw DomainError(r.name + ": missing parameter " + p);
    for (const auto& [k, v] : values)
        if (std::find(r.sys.params.begin(), r.sys.params.end(), k) == r.sys.params.end())
            throw DomainError(r.name + ": unknown parameter " + k);
    auto bad = r.sys.domain.violated(values);
    if (!bad.empty()) {
        std::string msg = r.name + ": parameters outside the domain:";
        for (const auto& b : bad) msg += " [" + b + "]";
        throw DomainError(msg);
    }
    std::map<int, mpq_class> ev;
    for (const auto& [k, v] : values) ev[var_id(k)] = v;
    r.sys = r.sys.at(values);
    for (auto& c : r.curves) {
        c.f = c.f.eval(ev);
        c.k = c.k.eval(ev);
    }
    r.values = values;
    return r;
}

json VerifyReport::to_json() const {
    json j;
    j["family"] = family;
    j["pass"] = pass;
    j["checks"] = json::array();
    for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return j;
}

VerifyReport verify_family(const FamilyRecord& rec) {
    VerifyReport rep;
    rep.family = rec.name;
    const auto& ids = xy();
    if (rec.curves.empty()) rep.checks.push_back({"curves", false, "no invariant curve recorded"});
    for (size_t i = 0; i < rec.curves.size(); ++i) {
        const auto& c = rec.curves[i];
        std::string tag = rec.curves.size() > 1 ? "[" + std::to_string(i) + "]" : "";
        RationalFn res = invariance_residual(rec.sys, c.f, c.k);
        rep.checks.push_back({"invariance" + tag, res.is_zero(), res.is_zero() ? "residual 0" : "residual " + res.str()});
        int deg = c.f.num().degree_in({ids.x, ids.y});
        rep.checks.push_back({"curve_degree" + tag, deg == rec.curve_degree,
                              "degree " + std::to_string(deg) + ", stated " + std::to_string(rec.curve_degree)});
        int kd = c.k.num().degree_in({ids.x, ids.y});
        rep.checks.push_back({"cofactor_degree" + tag, kd <= rec.sys.degree() - 1, "degree " + std::to_string(kd)});
    }
    if (rec.values) {
        bool in = rec.sys.domain.contains(*rec.values);
        rep.checks.push_back({"domain", in, in ? "parameters inside " + rec.sys.domain.text : "outside " + rec.sys.domain.text});
    } else {
        bool all_in = true;
        std::string detail;
        for (const auto& s : rec.samples) {
            bool in = rec.sys.domain.contains(s);
            all_in = all_in && in;
            for (const auto& [k, v] : s) detail += k + "=" + rat_str(v) + " ";
            detail += in ? "in; " : "OUT; ";
        }
        rep.checks.push_back({"samples_in_domain", all_in && !rec.samples.empty(), detail});
        bool ref_in = rec.sys.domain.contains(rec.reference_sample);
        rep.checks.push_back({"reference_sample", ref_in, ref_in ? "inside " + rec.sys.domain.text : "outside " + rec.sys.domain.text});
        if (!rec.samples.empty()) {
            bool cp = coprime_at(rec.sys, rec.samples);
            rep.checks.push_back({"coprime", cp, cp ? "p, q coprime at samples" : "common factor at a sample"});
        }
    }
    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(), [](const CheckResult& c) { return c.pass; });
    return rep;
}

namespace {
std::map<Monomial, RationalFn> xy_coeffs(const RationalFn& f) {
    const auto& ids = xy();
    if (f.den().depends_on_any({ids.x, ids.y})) throw PolyError("xy_coeffs: denominator depends on x, y");
    std::map<Monomial, RationalFn> out;
    for (const auto& [m, c] : f.num().coeffs_in({ids.x, ids.y})) out[m] = RationalFn(c, f.den());
    return out;
}

std::optional<RationalFn> ratio_of(const std::vector<RationalFn>& as, const std::vector<RationalFn>& bs,
                                   const AffineSystem* ctx) {
    auto nrm = [&](const RationalFn& f) { return ctx ? ctx->norm(f) : f; };
    std::optional<RationalFn> c;
    for (size_t i = 0; i < bs.size() && !c; ++i) {
        auto bc = xy_coeffs(nrm(bs[i]));
        auto ac = xy_coeffs(nrm(as[i]));
        for (const auto& [m, v] : bc) {
            auto it = ac.find(m);
            if (it == ac.end()) return std::nullopt;
            c = nrm(it->second / v);
            break;
        }
    }
    if (!c || c->is_zero()) return std::nullopt;
    for (size_t i = 0; i < as.size(); ++i)
        if (!nrm(as[i] - *c * bs[i]).is_zero()) return std::nullopt;
    return c;
}
}  // namespace

std::optional<RationalFn> proportional_systems(const AffineSystem& a, const AffineSystem& b) {
    const AffineSystem* ctx = a.ext ? &a : (b.ext ? &b : nullptr);
    return ratio_of({a.p, a.q}, {b.p, b.q}, ctx);
}

std::optional<RationalFn> proportional_curves(const RationalFn& f, const RationalFn& g, const AffineSystem* ctx) {
    return ratio_of({f}, {g}, ctx);
}

json change_to_json(const AffineChange& ch) {
    json m = json::array({json::array({ch.m11.str(), ch.m12.str()}), json::array({ch.m21.str(), ch.m22.str()})});
    return {{"M", m},
            {"t", json::array({ch.tx.str(), ch.ty.str()})},
            {"time_scale", ch.time_scale.str()},
            {"convention", "old = M new + t, dt/ds = time_scale"}};
}

}  // namespace alc
