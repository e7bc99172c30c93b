#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "alc/systems.hpp"

namespace alc {

using Vec2 = std::array<double, 2>;

// Polynomial in two variables with binary64 coefficients.
class NumPoly {
public:
    NumPoly() = default;
    NumPoly(const Poly& p, int xv, int yv);
    double operator()(double x, double y) const;
    Vec2 grad(double x, double y) const;
    double max_abs_coeff() const;
    int degree() const { return deg_; }

private:
    struct Term {
        double c;
        int i, j;
    };
    std::vector<Term> terms_;
    int deg_ = 0;
};

// Affine field plus the two Poincare charts (u, v) = (y/x, 1/x) and (x/y, 1/y), each
// multiplied by v^(d-1); on v < 0 the chart field is multiplied by sign(v)^(d-1) to keep
// the orientation of the affine flow.
struct CompactifiedField {
    Poly p_exact, q_exact;
    NumPoly p, q;
    std::array<NumPoly, 2> cu, cv;  // chart 1 and chart 2 components
    int degree = 0;

    static CompactifiedField from(const Poly& p, const Poly& q);
    static CompactifiedField from(const AffineSystem& numeric);
    Vec2 affine(const Vec2& z) const { return {p(z[0], z[1]), q(z[0], z[1])}; }
    Vec2 chart(int c, const Vec2& uv) const;  // c = 1, 2
    // Largest relative deviation between chart fields and the pushed-forward affine field
    // on random overlap points.
    double chart_consistency(int samples = 200, unsigned seed = 7) const;
};

// Chart transitions; chart 0 is the affine plane.
Vec2 to_chart(int chart, const Vec2& z);
Vec2 from_chart(int chart, const Vec2& uv);
// Poincare disk projection of a point in a chart; `scale` divides affine coordinates first.
Vec2 disk_point(int chart, const Vec2& z, double scale = 1.0);

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, Vec2 where) : std::runtime_error(what), location(where) {}
    Vec2 location;
};

struct IntegrateOptions {
    double tol = 1e-10;          // absolute and relative local error
    double h0 = 1e-3;
    size_t max_steps = 200000;
    bool compactify = false;     // Poincare time and chart switching near infinity
    double switch_radius = 1e3;  // affine radius where charts take over
    std::function<bool(const Vec2& affine_or_chart, int chart)> stop;  // optional early stop
};

struct TrajPoint {
    double t = 0;
    int chart = 0;
    Vec2 z{};
};

struct Trajectory {
    std::vector<TrajPoint> points;
    std::string end;  // "time", "infinity", "stopped", "steps"
};

// Adaptive Dormand-Prince 5(4); t_end may be negative for backward integration.
Trajectory integrate(const CompactifiedField& F, const Vec2& z0, double t_end, const IntegrateOptions& opt = {});

struct CycleOptions {
    double tol = 1e-10;      // integrator
    double cert_tol = 1e-6;  // curve residual bound
    int scan = 40;
    double max_time = 1e4;
    double multiplier_margin = 1e-3;
};

struct SeedRegion {
    double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
    bool contains(const Vec2& z) const { return z[0] >= xmin && z[0] <= xmax && z[1] >= ymin && z[1] <= ymax; }
};

struct CycleCertificate {
    Vec2 focus{};
    Vec2 direction{};                             // transversal focus + s direction
    std::vector<std::pair<double, double>> samples;  // (s, return(s))
    double lo = 0, hi = 0;                        // bracket of the fixed point
    double s = 0;
    Vec2 point{};
    double period = 0;
    double multiplier = 0;
    bool attracting = false;
    std::vector<Vec2> polyline;
    std::optional<double> curve_residual;  // scaled max |f| along the cycle
    std::string verdict;
};

class NoFocus : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws NoFocus when the region holds no focus or weak focus.
std::optional<CycleCertificate> detect_limit_cycle(const CompactifiedField& F, const SeedRegion& region,
                                                   const CycleOptions& opt = {});
// max |f| / (max |coefficient| * scale^deg) along the polyline, scale = max(1, max |coordinate|).
double scaled_curve_residual(const Poly& f, const std::vector<Vec2>& pts);

struct CurveComponent {
    std::string kind;  // "oval", "unbounded", "isolated_point"
    std::vector<Vec2> polyline;   // affine points (finite part)
    std::vector<Vec2> disk;       // same points in the disk picture
    std::vector<Vec2> singular_points;
};

struct ComponentOptions {
    Vec2 center{0, 0};
    double scale = 1.0;  // affine length mapped to disk radius about 0.7
    int grid = 2000;
    double aspect = 1;      // window coordinates (x, y / aspect), for curves much taller than wide
    double cut_radius = 0;  // affine distance from center beyond which branches count as unbounded
    double on_curve_tol = 1e-8;
};

// Real components of f = 0 traced on the Poincare disk, with the real finite singular points
// of (p, q) lying on each. Numeric coefficients only.
std::vector<CurveComponent> curve_components(const Poly& f, const Poly& p, const Poly& q, const ComponentOptions& opt = {});
// Centered on a focus off the curve (the origin if none), scale a tenth of the distance to the
// nearest other singular point, cut at 8 times the singular-point spread.
ComponentOptions default_window(const Poly& p, const Poly& q, const std::optional<Poly>& f = std::nullopt);

struct LogDerivativeCheck {
    double max_deviation = 0;  // |log|f(z(t))| - log|f(z0)| - int k dt|
    double budget = 1e-6;      // 1e-6 (1 + int |k| dt)
    double time = 0;
    bool pass = false;
};
// Integrates (p, q) together with int k dt from z0 for |t| <= t_end, stopping early where
// |f| drops below 1e-6 of its coefficient scale or the orbit leaves a large disk.
LogDerivativeCheck log_derivative_check(const CompactifiedField& F, const Poly& f, const Poly& k, const Vec2& z0,
                                        double t_end, double tol = 1e-10);

struct RenderOptions {
    unsigned seed = 1;
    int trajectories = 24;
    double scale = 0;  // disk scale; 0: largest finite singular point distance, at least 1
    std::optional<ComponentOptions> window;  // curve tracing window; default_window otherwise
    bool reproducible = false;
    int size = 600;
};

struct Scene {
    nlohmann::json json;
    std::string svg;
};

Scene render(const CompactifiedField& F, const std::vector<Poly>& curves, const std::optional<Poly>& cofactor,
             const std::vector<CycleCertificate>& cycles, const RenderOptions& opt = {});

}  // namespace alc
