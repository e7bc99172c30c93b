#include "alc/descriptor.hpp"

#include <fstream>

namespace alc {

using nlohmann::json;

json to_json(const AffineSystem& sys, const std::vector<InvariantCurve>& curves) {
    json j;
    j["name"] = sys.name;
    j["vars"] = {"x", "y"};
    j["params"] = sys.params;
    j["p"] = sys.p.str();
    j["q"] = sys.q.str();
    j["domain"] = sys.domain.text;
    j["curves"] = json::array();
    for (const auto& c : curves) j["curves"].push_back({{"f", c.f.str()}, {"k", c.k.str()}});
    if (sys.ext) j["ext"] = {{"root", var_name(sys.ext->root)}, {"radicand", sys.ext->radicand.str()}};
    return j;
}

namespace {
RationalFn field(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) throw DescriptorError(std::string("descriptor: missing string field ") + key);
    try {
        return parse_expr(j[key].get<std::string>());
    } catch (const std::exception& e) {
        throw DescriptorError(std::string("descriptor: cannot parse ") + key + ": " + e.what());
    }
}
}  // namespace

SystemDescriptor descriptor_from_json(const json& j) {
    if (!j.is_object()) throw DescriptorError("descriptor: not a JSON object");
    SystemDescriptor d;
    if (j.contains("vars") && j["vars"] != json({"x", "y"})) throw DescriptorError("descriptor: vars must be [\"x\", \"y\"]");
    d.sys.name = j.value("name", "");
    d.sys.params = j.value("params", std::vector<std::string>{});
    d.sys.domain.text = j.value("domain", "");
    d.sys.p = field(j, "p");
    d.sys.q = field(j, "q");
    if (j.contains("ext")) {
        const auto& e = j["ext"];
        SqrtRel rel;
        rel.root = var_id(e.at("root").get<std::string>());
        rel.radicand = parse_poly(e.at("radicand").get<std::string>());
        d.sys.ext = rel;
    }
    if (j.contains("curves"))
        for (const auto& c : j["curves"]) {
            InvariantCurve ic;
            ic.f = field(c, "f");
            if (c.contains("k")) ic.k = field(c, "k");
            d.curves.push_back(ic);
        }
    for (auto it = j.begin(); it != j.end(); ++it) {
        static const std::vector<std::string> core{"name", "vars", "params", "p", "q", "domain", "curves", "ext"};
        if (std::find(core.begin(), core.end(), it.key()) == core.end()) d.extra[it.key()] = it.value();
    }
    return d;
}

SystemDescriptor load_descriptor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DescriptorError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw DescriptorError(path + ": " + e.what());
    }
    return descriptor_from_json(j);
}

void save_descriptor(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw DescriptorError("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace alc
