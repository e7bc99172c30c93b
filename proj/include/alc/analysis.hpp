#pragma once

#include <optional>
#include <string>
#include <vector>

#include "alc/families.hpp"
#include "alc/phase.hpp"

namespace alc {

// Registry window overrides applied on top of default_window.
ComponentOptions family_window(const FamilyRecord& numeric);

// Bounding box of the oval components, enlarged by `margin` of its size on every side.
std::optional<SeedRegion> oval_region(const std::vector<CurveComponent>& comps, double margin = 0.3);

struct FamilyPhase {
    std::string family;
    ParamValues values;
    std::vector<CurveComponent> components;
    std::optional<CycleCertificate> cycle;
    std::string cycle_error;  // set when the detector threw or found no oval to seed from
    bool topology_match = false;  // component kinds and singular-point counts agree with the registry
    nlohmann::json to_json() const;
};

// Components of the first recorded curve, compared with the registry notes, and the limit
// cycle seeded from the oval.
FamilyPhase analyze_family(const FamilyRecord& numeric, const CycleOptions& opt = {});

Scene family_portrait(const FamilyRecord& numeric, const std::vector<CycleCertificate>& cycles, RenderOptions opt);

std::string values_str(const ParamValues& v);

}  // namespace alc
