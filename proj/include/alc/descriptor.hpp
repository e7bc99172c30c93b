#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "alc/systems.hpp"

namespace alc {

// JSON system descriptor:
// {name, vars:["x","y"], params:[...], p, q, domain, curves:[{f, k}], ext?:{root, radicand}}
struct SystemDescriptor {
    AffineSystem sys;
    std::vector<InvariantCurve> curves;
    nlohmann::json extra = nlohmann::json::object();  // keys outside the core format, kept verbatim
};

class DescriptorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const AffineSystem& sys, const std::vector<InvariantCurve>& curves = {});
SystemDescriptor descriptor_from_json(const nlohmann::json& j);
SystemDescriptor load_descriptor(const std::string& path);
void save_descriptor(const std::string& path, const nlohmann::json& j);

}  // namespace alc
