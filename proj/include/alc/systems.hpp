#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alc/rational_fn.hpp"

namespace alc {

using ParamValues = std::map<std::string, mpq_class>;

struct VarIds {
    int x = var_id("x");
    int y = var_id("y");
};
const VarIds& xy();

// Semialgebraic parameter domain: conditions "lhs op rhs" separated by ';', op in < > <= >= != =.
struct ParamDomain {
    std::string text;
    bool contains(const ParamValues& v) const;
    std::vector<std::string> violated(const ParamValues& v) const;
};

struct AffineSystem {
    std::string name;
    RationalFn p, q;
    std::vector<std::string> params;
    ParamDomain domain;
    std::optional<SqrtRel> ext;  // coefficients in Q(params)[s] / (s^2 - radicand)

    int degree() const;
    AffineSystem at(const ParamValues& v) const;  // numeric specialization
    RationalFn norm(const RationalFn& f) const;   // apply the square-root relation if any
    bool operator==(const AffineSystem& o) const;
};

struct InvariantCurve {
    RationalFn f;
    RationalFn k;
    bool verified = false;
};

// Old coordinates = M * new + t; new time s with dt/ds = time_scale.
struct AffineChange {
    RationalFn m11 = 1, m12 = 0, m21 = 0, m22 = 1;
    RationalFn tx = 0, ty = 0;
    RationalFn time_scale = 1;

    static AffineChange translation(const RationalFn& x0, const RationalFn& y0);
    static AffineChange swap();
    static AffineChange time_sign(int sgn);
    RationalFn det() const { return m11 * m22 - m12 * m21; }
    AffineChange inverse() const;
    AffineChange then(const AffineChange& next) const;  // apply this, then next
    AffineChange reduced(const SqrtRel& rel) const;
};

class HypothesisError : public std::runtime_error {
public:
    HypothesisError(const std::string& what, std::vector<std::string> failed)
        : std::runtime_error(what), failed_conditions(std::move(failed)) {}
    std::vector<std::string> failed_conditions;
};

RationalFn invariance_residual(const AffineSystem& sys, const RationalFn& f, const RationalFn& k);
bool verify_invariant(const AffineSystem& sys, const RationalFn& f, const RationalFn& k);
std::optional<RationalFn> compute_cofactor(const AffineSystem& sys, const RationalFn& f);

AffineSystem apply_affine(const AffineSystem& sys, const AffineChange& ch);
InvariantCurve apply_affine(const InvariantCurve& c, const AffineChange& ch, const AffineSystem* sys = nullptr);

// Coefficients in the order a00 a10 a01 a20 a11 a02 b00 b10 b01 b20 b11 b02.
std::array<RationalFn, 12> quad_coeffs(const AffineSystem& sys);
extern const std::array<const char*, 12> kQuadCoeffNames;
AffineSystem from_quad_coeffs(const std::array<RationalFn, 12>& c, const std::string& name = "");

enum class PointType { Saddle, Node, StarNode, Focus, CenterFocusUndecided, Degenerate, Complex };
const char* point_type_name(PointType t);

struct SingularPoint {
    std::complex<double> x, y;
    std::optional<std::pair<mpq_class, mpq_class>> exact;  // rational coordinates when available
    std::complex<double> ev1, ev2;
    double trace = 0, det = 0;
    PointType type = PointType::Degenerate;
    bool real = true;
    int index = 0;  // Poincare index (real points only)
};

class SingularLocusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Polynomial p, q in x, y with rational coefficients (parameters already substituted).
std::vector<SingularPoint> singular_points(const Poly& p, const Poly& q);
std::vector<SingularPoint> singular_points(const AffineSystem& sys, const ParamValues& v);

// Chart fields of the Poincare compactification: chart 1 uses (u, v) = (y/x, 1/x),
// chart 2 uses (u, v) = (x/y, 1/y). Returned in variables (u, v).
std::pair<Poly, Poly> chart_field(const Poly& p, const Poly& q, int chart);

struct InfinitePoint {
    int chart = 1;     // 1: direction (1 : u : 0), 2: direction (0 : 1 : 0)
    double u = 0;
    std::optional<mpq_class> exact_u;
    std::complex<double> ev1, ev2;
    PointType type = PointType::Degenerate;
    int index = 0;
};

struct InfinityReport {
    bool line_of_singularities = false;
    std::vector<InfinitePoint> points;  // real points, one per antipodal pair
};
InfinityReport infinite_singular_points(const Poly& p, const Poly& q);

// Poincare index as winding number of (P, Q) around a circle.
int winding_index(const Poly& P, const Poly& Q, int xv, int yv, double x0, double y0, double radius);

// Sum of indices over the sphere (finite points counted twice). nullopt when infinity is
// a line of singular points.
std::optional<int> sphere_index_sum(const Poly& p, const Poly& q);

// Coprimality test of p, q at the given samples via the resultant.
bool coprime_at(const AffineSystem& sys, const std::vector<ParamValues>& samples);

}  // namespace alc
