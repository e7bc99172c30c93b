#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "alc/cremona.hpp"
#include "alc/descriptor.hpp"
#include "alc/local_invariants.hpp"
#include "alc/upoly.hpp"

namespace alc {

struct ComponentNote {
    std::string kind;  // "oval", "unbounded", "isolated_point"
    int singular_points = 0;
};

// Where to look for the curve's real components when the focus-centred default misses them.
struct TopologyWindow {
    std::optional<std::array<double, 2>> center;
    std::optional<double> scale, aspect, cut;
};

struct FamilyRecord {
    std::string name;
    AffineSystem sys;
    std::vector<InvariantCurve> curves;
    int curve_degree = 0;
    std::vector<ParamValues> samples;      // points inside the domain
    std::vector<ComponentNote> components;  // real components of the curve at any domain point
    ParamValues reference_sample;           // used for portraits, cycles and component counts
    TopologyWindow window;
    std::optional<ParamValues> values;      // set for numeric records
};

class UnknownName : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Directory holding families/*.json and golden/*.json; ALC_DATA_DIR overrides the built-in path.
std::string data_dir();
std::vector<std::string> family_names();
// Case-insensitive; accepts the registry file stem as well ("cls5", "yablonskii").
FamilyRecord get_family(const std::string& name);
FamilyRecord get_family(const std::string& name, const ParamValues& values);
FamilyRecord family_from_descriptor(const SystemDescriptor& d);
ParamValues parse_param_values(const nlohmann::json& obj);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::string family;
    bool pass = false;
    std::vector<CheckResult> checks;
    nlohmann::json to_json() const;
};

// Exact checks: invariance identity, stated degree, cofactor degree, sample domain membership.
// Real-component counts are checked separately by the phase module.
VerifyReport verify_family(const FamilyRecord& rec);

// Systems equal up to one global nonzero scalar (time rescaling). Returns the scalar c with a = c b.
std::optional<RationalFn> proportional_systems(const AffineSystem& a, const AffineSystem& b);
std::optional<RationalFn> proportional_curves(const RationalFn& f, const RationalFn& g, const AffineSystem* ctx = nullptr);

struct PipelineSpec {
    std::string id;
    std::string source;
    std::string target;
    std::string preparation;  // human-readable description of the affine steps
    std::string reparameterization;
    CremonaKind kind = CremonaKind::C2;
};
const std::vector<PipelineSpec>& pipeline_specs();
std::vector<std::string> pipeline_ids();

struct DegreeCheck {
    int source_curve_degree = 0;
    int image_curve_degree = 0;
    std::array<int, 3> curve_m{};
    std::array<int, 3> foliation_l{};
    DegreePrediction predicted;
    int image_foliation_degree = 0;
    int corollary_case = 0;
    bool pass = false;
    nlohmann::json to_json() const;
};

// Blow-up multiplicities of the source curve and foliation on the C2 base cluster, the degrees
// they predict, and the degrees actually found on the image.
DegreeCheck c2_degree_check(const AffineSystem& prep, const RationalFn& f, const AffineSystem& image, const RationalFn& g);

struct PipelineReport {
    std::string id;
    bool pass = false;
    std::vector<CheckResult> checks;
    std::vector<DegreeCheck> degrees;
    std::vector<std::pair<std::string, std::string>> systems;  // labelled stages, descriptor JSON dumps
    nlohmann::json extra = nlohmann::json::object();
    nlohmann::json to_json() const;
};

PipelineReport reproduce(const std::string& pipeline_id);

struct EquivalenceResult {
    std::optional<AffineChange> change;
    std::string method;  // "identity", "hint", "search"
    std::string reason;  // why no change was produced
    bool obstruction = false;  // true when an exact invariant rules out equivalence
};

// Affine change of variables and constant time rescaling taking a to b (old = a, new = b).
// Without a hint, works on quadratic systems with numeric coefficients in Q or Q(sqrt d):
// pairs rational singular points, solves the linear-part commutant and the quadratic-part
// conditions exactly, verifies the result.
EquivalenceResult affine_equivalent(const AffineSystem& a, const AffineSystem& b,
                                    const std::optional<AffineChange>& hint = std::nullopt);

// Characteristic polynomial of the values tr^2/det of the Jacobian over the finite singular
// points; invariant under affine changes and constant time rescaling. Rational coefficients only.
struct SingularInvariant {
    bool available = false;
    int variant = 0;  // 1: tr^2/det, 2: det/tr^2
    UPoly charpoly;
};
SingularInvariant singular_ratio_invariant(const Poly& p, const Poly& q);

nlohmann::json change_to_json(const AffineChange& ch);

}  // namespace alc
