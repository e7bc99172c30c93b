#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "alc/projective.hpp"

namespace alc {

// Germ of a 1-form a dx + b dy at the origin of local coordinates (x, y).
struct LocalFoliation {
    Poly a, b;
};

// Lowest total degree in (x, y) after applying the optional square-root relation; -1 for zero.
int local_order(const Poly& f, const SqrtRel* rel = nullptr);
int alg_multiplicity(const LocalFoliation& F, const SqrtRel* rel = nullptr);
bool is_dicritical(const LocalFoliation& F, const SqrtRel* rel = nullptr);

// Strict transform centred at the point of the exceptional divisor with the given direction.
// chart 1: (x, y) -> (x, x (y + slope)), exceptional divisor x = 0.
// chart 2: (x, y) -> (x y, y) centred at x = 0, exceptional divisor y = 0.
LocalFoliation strict_transform(const LocalFoliation& F, int chart, const Poly& slope, int l,
                                const SqrtRel* rel = nullptr);
Poly strict_transform(const Poly& f, int chart, const Poly& slope, const SqrtRel* rel = nullptr);

struct BlowUpResult {
    LocalFoliation chart1, chart2;  // centred at the chart origins
    int m = 0;
    int l = 0;
    bool dicritical = false;
};
BlowUpResult blow_up(const LocalFoliation& F, const SqrtRel* rel = nullptr);

// Singular points on the exceptional divisor for rational germs (non-dicritical case):
// pairs (chart, slope) with rational slopes only.
std::vector<std::pair<int, mpq_class>> exceptional_singular_points(const LocalFoliation& F);

// Vector field (-b, a) of the germ, linear part at the origin.
std::array<Poly, 4> linear_part(const LocalFoliation& F);

struct ClusterPoint {
    int parent = -1;
    std::array<mpq_class, 3> proj{};  // proper points
    int chart = 1;                    // infinitely near: direction in the parent's local coordinates
    Poly slope = Poly(0);
    std::optional<Line> tangent;      // projective tangent line for first-order points
    std::string label;
};

struct Cluster {
    std::vector<ClusterPoint> points;
};

// Base cluster of the C2 normal form: (0:0:1), (0:1:0) and the point infinitely near (0:1:0)
// in the direction of Z = 0.
Cluster c2_base_cluster();
bool cluster_aligned(const Cluster& c);

// Local chart at a proper point: index of the coordinate set to one, the other two in order.
int chart_index(const std::array<mpq_class, 3>& p);
LocalFoliation local_germ(const ProjectiveOneForm& w, const std::array<mpq_class, 3>& p);
Poly local_germ(const Poly& F, const std::array<int, 3>& vars, const std::array<mpq_class, 3>& p);

struct PointInvariants {
    int m = 0;
    int l = 0;  // vanishing order for foliations, value for curves
    bool dicritical = false;
    std::vector<int> proximate_to;
    bool satellite = false;
};

std::vector<PointInvariants> invariants_on_cluster(const ProjectiveOneForm& w, const Cluster& c,
                                                   const SqrtRel* rel = nullptr);
std::vector<PointInvariants> curve_invariants_on_cluster(const Poly& F, const std::array<int, 3>& vars,
                                                         const Cluster& c, const SqrtRel* rel = nullptr);
// m(p) minus the sum of m(q) over the points q proximate to p; nonnegative for curves.
std::vector<int> proximity_excess(const std::vector<PointInvariants>& inv);
// Multiplicities never increase along a chain.
bool multiplicities_monotone(const Cluster& c, const std::vector<PointInvariants>& inv);

class InvalidConfiguration : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DegreePrediction {
    int foliation_degree = 0;
    int curve_degree = 0;
    std::array<int, 3> inverse_m{};  // multiplicity of the curve image at the inverse base points
    std::array<int, 3> inverse_l{};  // vanishing order of the image foliation at the inverse base points
};
// Inverse base point k is opposite to base points i, j.
DegreePrediction predict_degrees(int foliation_degree, int curve_degree, const std::array<int, 3>& curve_m,
                                 const std::array<int, 3>& foliation_l);

// 1..7 for the quadratic-preserving patterns, 0 when none applies.
int classify_quadratic_preserving(const std::array<int, 3>& m, const std::array<bool, 3>& dicritical);
int classify_quadratic_preserving(const ProjectiveOneForm& w, const Cluster& c, const SqrtRel* rel = nullptr);

class NotApplicable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SspWitness {
    std::array<mpq_class, 3> point{};  // proper node
    bool at_infinity = false;
    int ratio = 0;                     // eigenvalue ratio (a, 1)
    Cluster chain;                     // node followed by blow-up directions ending at a star-node
    std::optional<std::array<mpq_class, 3>> completion;  // another singular point completing the trio
};

// Scans proper real singular points with rational coordinates for a node with eigenvalue
// ratio 1, 2 or 3 whose blow-up chain reaches a star-node. Coefficients must be rational.
std::optional<SspWitness> ssp_existence(const AffineSystem& sys);

}  // namespace alc
