#include "alc/phase.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

namespace alc {

using nlohmann::json;
namespace odeint = boost::numeric::odeint;

namespace {

using State = std::vector<double>;
using Dopri = odeint::runge_kutta_dopri5<State>;
using Dense = odeint::result_of::make_dense_output<Dopri>::type;

double norm2(const Vec2& a) { return std::hypot(a[0], a[1]); }

// Dense-output stepper over an arbitrary right-hand side.
class DenseRun {
public:
    using Rhs = std::function<void(const State&, State&)>;
    DenseRun(Rhs rhs, const State& x0, double t0, double h0, double tol)
        : rhs_(std::move(rhs)), st_(odeint::make_dense_output(tol, tol, Dopri())) {
        st_.initialize(x0, t0, h0);
    }
    std::pair<double, double> step() {
        auto sys = [this](const State& x, State& dx, double) { rhs_(x, dx); };
        try {
            auto r = st_.do_step(sys);
            if (!(std::abs(r.second - r.first) > 1e-14 * std::max(1.0, std::abs(r.second))))
                throw IntegrationError("step size underflow", loc());
            for (double v : st_.current_state())
                if (!std::isfinite(v)) throw IntegrationError("non-finite state", loc());
            return r;
        } catch (const odeint::step_adjustment_error&) {
            throw IntegrationError("step size underflow", loc());
        }
    }
    State at(double t) {
        State x(st_.current_state().size());
        st_.calc_state(t, x);
        return x;
    }
    const State& x() const { return st_.current_state(); }
    double t() const { return st_.current_time(); }

private:
    Vec2 loc() const { return {st_.current_state()[0], st_.current_state()[1]}; }
    Rhs rhs_;
    Dense st_;
};

struct NumPoly3 {
    struct Term {
        double c;
        int i, j, k;
    };
    std::vector<Term> terms;
    double operator()(double x, double y, double w) const {
        double s = 0;
        for (const auto& t : terms) s += t.c * std::pow(x, t.i) * std::pow(y, t.j) * std::pow(w, t.k);
        return s;
    }
};

double max_coeff(const Poly& f) {
    double m = 0;
    for (const auto& [mono, c] : f.terms()) m = std::max(m, std::abs(c.get_d()));
    return m;
}

std::vector<SingularPoint> real_finite(const Poly& p, const Poly& q) {
    std::vector<SingularPoint> out;
    for (const auto& s : singular_points(p, q))
        if (s.real) out.push_back(s);
    return out;
}

Vec2 sp_xy(const SingularPoint& s) {
    if (s.exact) return {s.exact->first.get_d(), s.exact->second.get_d()};
    return {s.x.real(), s.y.real()};
}

bool on_curve_numeric(const NumPoly& f, const Vec2& z, double tol) {
    double fv = std::abs(f(z[0], z[1])), gn = norm2(f.grad(z[0], z[1]));
    double zs = std::max(1.0, norm2(z));
    return (gn > 0 && fv / gn < tol * zs) || fv < 1e-12 * f.max_abs_coeff() * std::pow(zs, f.degree());
}

}  // namespace

NumPoly::NumPoly(const Poly& p, int xv, int yv) {
    for (const auto& [m, c] : p.terms()) {
        for (size_t v = 0; v < m.size(); ++v)
            if (m[v] != 0 && static_cast<int>(v) != xv && static_cast<int>(v) != yv)
                throw PolyError("NumPoly: unexpected variable " + var_name(static_cast<int>(v)));
        Term t{c.get_d(), mono_exp(m, xv), mono_exp(m, yv)};
        deg_ = std::max(deg_, t.i + t.j);
        terms_.push_back(t);
    }
}

double NumPoly::operator()(double x, double y) const {
    double s = 0;
    for (const auto& t : terms_) {
        double v = t.c;
        for (int a = 0; a < t.i; ++a) v *= x;
        for (int b = 0; b < t.j; ++b) v *= y;
        s += v;
    }
    return s;
}

Vec2 NumPoly::grad(double x, double y) const {
    Vec2 g{0, 0};
    for (const auto& t : terms_) {
        if (t.i > 0) g[0] += t.c * t.i * std::pow(x, t.i - 1) * std::pow(y, t.j);
        if (t.j > 0) g[1] += t.c * t.j * std::pow(x, t.i) * std::pow(y, t.j - 1);
    }
    return g;
}

double NumPoly::max_abs_coeff() const {
    double m = 0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.c));
    return m;
}

CompactifiedField CompactifiedField::from(const Poly& p, const Poly& q) {
    const auto& ids = xy();
    CompactifiedField F;
    F.p_exact = p;
    F.q_exact = q;
    F.p = NumPoly(p, ids.x, ids.y);
    F.q = NumPoly(q, ids.x, ids.y);
    F.degree = std::max(p.degree_in({ids.x, ids.y}), q.degree_in({ids.x, ids.y}));
    int U = var_id("u"), V = var_id("v");
    for (int c = 1; c <= 2; ++c) {
        auto [f, g] = chart_field(p, q, c);
        F.cu[c - 1] = NumPoly(f, U, V);
        F.cv[c - 1] = NumPoly(g, U, V);
    }
    return F;
}

CompactifiedField CompactifiedField::from(const AffineSystem& sys) {
    if (sys.p.den().depends_on_any({xy().x, xy().y}) || sys.q.den().depends_on_any({xy().x, xy().y}))
        throw PolyError("CompactifiedField: polynomial field expected");
    mpq_class dp = sys.p.den().constant_term(), dq = sys.q.den().constant_term();
    if (!sys.p.den().is_constant() || !sys.q.den().is_constant())
        throw PolyError("CompactifiedField: numeric coefficients expected");
    return from(sys.p.num() * mpq_class(1 / dp), sys.q.num() * mpq_class(1 / dq));
}

Vec2 CompactifiedField::chart(int c, const Vec2& uv) const {
    Vec2 r{cu[c - 1](uv[0], uv[1]), cv[c - 1](uv[0], uv[1])};
    if (uv[1] < 0 && (degree - 1) % 2 != 0) r = {-r[0], -r[1]};
    return r;
}

double CompactifiedField::chart_consistency(int samples, unsigned seed) const {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> mag(0.5, 5.0), other(-5.0, 5.0), sgn(-1.0, 1.0);
    double worst = 0;
    for (int i = 0; i < samples; ++i) {
        int c = 1 + i % 2;
        double a = mag(rng) * (sgn(rng) < 0 ? -1 : 1), b = other(rng);
        Vec2 z = c == 1 ? Vec2{a, b} : Vec2{b, a};
        Vec2 f = affine(z);
        Vec2 uv = to_chart(c, z);
        double u = uv[0], v = uv[1];
        Vec2 push = c == 1 ? Vec2{v * (f[1] - u * f[0]), -v * v * f[0]} : Vec2{v * (f[0] - u * f[1]), -v * v * f[1]};
        double w = std::pow(std::abs(v), degree - 1);
        Vec2 expect{w * push[0], w * push[1]};
        Vec2 got = chart(c, uv);
        double scale = std::max({norm2(expect), norm2(got), 1e-300});
        worst = std::max(worst, std::hypot(got[0] - expect[0], got[1] - expect[1]) / scale);
    }
    return worst;
}

Vec2 to_chart(int chart, const Vec2& z) {
    if (chart == 0) return z;
    if (chart == 1) return {z[1] / z[0], 1 / z[0]};
    return {z[0] / z[1], 1 / z[1]};
}

Vec2 from_chart(int chart, const Vec2& uv) {
    if (chart == 0) return uv;
    if (chart == 1) return {1 / uv[1], uv[0] / uv[1]};
    return {uv[0] / uv[1], 1 / uv[1]};
}

Vec2 disk_point(int chart, const Vec2& z, double scale) {
    if (chart == 0) {
        double x = z[0] / scale, y = z[1] / scale, r = std::sqrt(1 + x * x + y * y);
        return {x / r, y / r};
    }
    double u = z[0], v = z[1], sg = v < 0 ? -1.0 : 1.0;
    double r = std::sqrt(scale * scale * v * v + 1 + u * u);
    return chart == 1 ? Vec2{sg / r, sg * u / r} : Vec2{sg * u / r, sg / r};
}

Trajectory integrate(const CompactifiedField& F, const Vec2& z0, double t_end, const IntegrateOptions& opt) {
    Trajectory tr;
    double dir = t_end < 0 ? -1.0 : 1.0, T = std::abs(t_end);
    int chart = 0;
    Vec2 z = z0;
    double t = 0;
    const int d1 = F.degree - 1;
    tr.points.push_back({0, 0, z0});
    auto make = [&](int c) {
        DenseRun::Rhs rhs = [&F, c, dir, d1, &opt](const State& s, State& ds) {
            Vec2 r;
            if (c == 0) {
                r = F.affine({s[0], s[1]});
                if (opt.compactify) {
                    double w = std::pow(1 + s[0] * s[0] + s[1] * s[1], -0.5 * d1);
                    r = {r[0] * w, r[1] * w};
                }
            } else {
                r = F.chart(c, {s[0], s[1]});
            }
            ds[0] = dir * r[0];
            ds[1] = dir * r[1];
        };
        return DenseRun(rhs, State{z[0], z[1]}, t, opt.h0, opt.tol);
    };
    if (opt.compactify && std::max(std::abs(z[0]), std::abs(z[1])) > opt.switch_radius) {
        chart = std::abs(z[0]) >= std::abs(z[1]) ? 1 : 2;
        z = to_chart(chart, z);
    }
    DenseRun run = make(chart);
    size_t steps = 0;
    while (true) {
        if (++steps > opt.max_steps) {
            tr.end = "steps";
            return tr;
        }
        auto [t0, t1] = run.step();
        if (t1 >= T) {
            State s = run.at(T);
            tr.points.push_back({dir * T, chart, {s[0], s[1]}});
            tr.end = "time";
            return tr;
        }
        z = {run.x()[0], run.x()[1]};
        t = t1;
        tr.points.push_back({dir * t, chart, z});
        if (opt.stop && opt.stop(z, chart)) {
            tr.end = "stopped";
            return tr;
        }
        int next = chart;
        if (chart == 0) {
            double r = std::max(std::abs(z[0]), std::abs(z[1]));
            if (!opt.compactify) {
                if (r > 1e8) {
                    tr.end = "infinity";
                    return tr;
                }
            } else if (r > opt.switch_radius) {
                next = std::abs(z[0]) >= std::abs(z[1]) ? 1 : 2;
            }
        } else {
            if (std::abs(z[1]) < 1e-10) {
                tr.end = "infinity";
                return tr;
            }
            if (std::abs(z[1]) > 2 / opt.switch_radius) next = 0;
            else if (std::abs(z[0]) > 2) next = 3 - chart;
        }
        if (next != chart) {
            Vec2 affine_z = from_chart(chart, z);
            z = to_chart(next, affine_z);
            chart = next;
            run = make(chart);
        }
    }
}

double scaled_curve_residual(const Poly& f, const std::vector<Vec2>& pts) {
    const auto& ids = xy();
    NumPoly nf(f, ids.x, ids.y);
    double scale = 1, worst = 0;
    for (const auto& z : pts) {
        scale = std::max({scale, std::abs(z[0]), std::abs(z[1])});
        worst = std::max(worst, std::abs(nf(z[0], z[1])));
    }
    return worst / (nf.max_abs_coeff() * std::pow(scale, nf.degree()));
}

namespace {

struct ReturnResult {
    double s = 0;
    double time = 0;
    std::vector<Vec2> path;
};

// First return of the orbit through focus + s dir to the half-line {focus + r dir, r > 0}.
std::optional<ReturnResult> first_return(const CompactifiedField& F, const Vec2& focus, const Vec2& dir, double s,
                                         const SeedRegion& box, const CycleOptions& opt, bool keep_path, double sense) {
    Vec2 z0{focus[0] + s * dir[0], focus[1] + s * dir[1]};
    auto rhs = [&F, sense](const State& x, State& dx) {
        Vec2 r = F.affine({x[0], x[1]});
        dx[0] = sense * r[0];
        dx[1] = sense * r[1];
    };
    auto angle = [&](const State& x) {
        double rx = x[0] - focus[0], ry = x[1] - focus[1];
        return std::atan2(dir[0] * ry - dir[1] * rx, dir[0] * rx + dir[1] * ry);
    };
    DenseRun run(rhs, State{z0[0], z0[1]}, 0, 1e-3, opt.tol);
    ReturnResult res;
    if (keep_path) res.path.push_back(z0);
    double total = 0, prev = 0;
    const int sub = 4;
    for (size_t steps = 0; steps < 2000000; ++steps) {
        auto [t0, t1] = run.step();
        if (t1 > opt.max_time) return std::nullopt;
        for (int k = 1; k <= sub; ++k) {
            double tk = t0 + (t1 - t0) * k / sub;
            State x = k == sub ? run.x() : run.at(tk);
            double a = angle(x), da = a - prev;
            while (da > M_PI) da -= 2 * M_PI;
            while (da < -M_PI) da += 2 * M_PI;
            double before = total;
            total += da;
            prev = a;
            if (std::abs(total) >= 2 * M_PI) {
                double target = total > 0 ? 2 * M_PI : -2 * M_PI;
                double lo = t0 + (t1 - t0) * (k - 1) / sub, hi = tk, base = before;
                State xl = run.at(lo);
                double alo = angle(xl);
                for (int it = 0; it < 80; ++it) {
                    double mid = 0.5 * (lo + hi);
                    double d = angle(run.at(mid)) - alo;
                    while (d > M_PI) d -= 2 * M_PI;
                    while (d < -M_PI) d += 2 * M_PI;
                    if (std::abs(base + d) >= std::abs(target)) hi = mid;
                    else lo = mid;
                }
                State xc = run.at(hi);
                res.s = dir[0] * (xc[0] - focus[0]) + dir[1] * (xc[1] - focus[1]);
                res.time = hi;
                if (keep_path) res.path.push_back({xc[0], xc[1]});
                return res;
            }
            if (keep_path) res.path.push_back({x[0], x[1]});
            double w = box.xmax - box.xmin, h = box.ymax - box.ymin;
            if (x[0] < box.xmin - w || x[0] > box.xmax + w || x[1] < box.ymin - h || x[1] > box.ymax + h)
                return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<CycleCertificate> detect_limit_cycle(const CompactifiedField& F, const SeedRegion& region,
                                                   const CycleOptions& opt) {
    Vec2 mid{0.5 * (region.xmin + region.xmax), 0.5 * (region.ymin + region.ymax)};
    std::optional<SingularPoint> best;
    double bestd = 0;
    for (const auto& s : real_finite(F.p_exact, F.q_exact)) {
        if (s.type != PointType::Focus && s.type != PointType::CenterFocusUndecided && s.type != PointType::Node &&
            s.type != PointType::StarNode)
            continue;
        Vec2 z = sp_xy(s);
        if (!region.contains(z)) continue;
        // foci take precedence over nodes
        double d = norm2({z[0] - mid[0], z[1] - mid[1]}) + (s.type == PointType::Node || s.type == PointType::StarNode ? 1e9 : 0);
        if (!best || d < bestd) {
            best = s;
            bestd = d;
        }
    }
    if (!best) throw NoFocus("no focus in the seed region");

    CycleCertificate cert;
    cert.focus = sp_xy(*best);
    const Vec2 f0 = cert.focus;
    Vec2 gp = F.p.grad(f0[0], f0[1]), gq = F.q.grad(f0[0], f0[1]);
    double a = gp[0], b = gp[1], c = gq[0], d = gq[1];
    double tr = a + d, det = a * d - b * c, disc = tr * tr - 4 * det;
    Vec2 dir{1, 0};
    if (disc < 0) {
        // real part of the eigenvector for tr/2 + i w: (b, tr/2 - a) or (tr/2 - d, c)
        Vec2 v1{b, 0.5 * tr - a}, v2{0.5 * tr - d, c};
        Vec2 v = norm2(v1) >= norm2(v2) ? v1 : v2;
        double n = norm2(v);
        if (n > 0) dir = {v[0] / n, v[1] / n};
        if (dir[0] < -1e-12 || (std::abs(dir[0]) <= 1e-12 && dir[1] < 0)) dir = {-dir[0], -dir[1]};
    }
    cert.direction = dir;

    // distance to the region boundary along dir
    double smax = 1e300;
    auto clip = [&](double o, double dv, double lo, double hi) {
        if (dv > 1e-15) smax = std::min(smax, (hi - o) / dv);
        else if (dv < -1e-15) smax = std::min(smax, (lo - o) / dv);
    };
    clip(f0[0], dir[0], region.xmin, region.xmax);
    clip(f0[1], dir[1], region.ymin, region.ymax);
    if (!(smax > 0) || smax > 1e100) throw NoFocus("degenerate seed region");

    // Forward return map first; orbits leaving a repelling cycle escape, so fall back to the
    // backward map, whose fixed points are the same.
    double sense = 1;
    auto P = [&](double s) { return first_return(F, f0, dir, s, region, opt, false, sense); };
    std::optional<std::pair<double, double>> bracket;
    for (double sn : {1.0, -1.0}) {
        sense = sn;
        cert.samples.clear();
        double prev_s = 0, prev_g = 0;
        bool have_prev = false;
        for (int i = 0; i < opt.scan && !bracket; ++i) {
            double s = smax * (0.02 + 0.96 * i / std::max(1, opt.scan - 1));
            auto r = P(s);
            if (!r) {
                have_prev = false;
                continue;
            }
            cert.samples.push_back({s, r->s});
            double g = r->s - s;
            if (have_prev && ((prev_g < 0) != (g < 0))) bracket = {prev_s, s};
            prev_s = s;
            prev_g = g;
            have_prev = true;
        }
        if (bracket) break;
    }
    if (!bracket) return std::nullopt;
    cert.lo = bracket->first;
    cert.hi = bracket->second;

    auto g = [&](double s) {
        auto r = P(s);
        if (!r) throw IntegrationError("return map undefined inside the bracket", {f0[0] + s * dir[0], f0[1] + s * dir[1]});
        return r->s - s;
    };
    boost::uintmax_t iters = 100;
    auto root = boost::math::tools::toms748_solve(g, cert.lo, cert.hi, boost::math::tools::eps_tolerance<double>(44), iters);
    cert.s = 0.5 * (root.first + root.second);
    cert.point = {f0[0] + cert.s * dir[0], f0[1] + cert.s * dir[1]};

    double h = std::max(1e-5 * cert.s, 1e-8);
    auto rp = P(cert.s + h), rm = P(cert.s - h);
    if (!rp || !rm) return std::nullopt;
    cert.multiplier = (rp->s - rm->s) / (2 * h);
    // multiplier of the forward map
    if (sense < 0) cert.multiplier = 1 / cert.multiplier;
    cert.attracting = cert.multiplier < 1;

    auto full = first_return(F, f0, dir, cert.s, region, opt, true, 1.0);
    if (!full) full = first_return(F, f0, dir, cert.s, region, opt, true, -1.0);
    if (!full) return std::nullopt;
    cert.period = full->time;
    cert.polyline = std::move(full->path);
    bool isolated = std::abs(cert.multiplier - 1) > opt.multiplier_margin;
    cert.verdict = std::string("numerical evidence: ") +
                   (isolated ? (cert.attracting ? "attracting" : "repelling") + std::string(" limit cycle")
                             : "periodic orbit with multiplier near 1");
    return cert;
}

ComponentOptions default_window(const Poly& p, const Poly& q, const std::optional<Poly>& f) {
    const auto& ids = xy();
    ComponentOptions o;
    auto sps = real_finite(p, q);
    auto off_curve = [&](const SingularPoint& s) {
        if (!f) return true;
        if (s.exact) return !f->eval({{ids.x, s.exact->first}, {ids.y, s.exact->second}}).is_zero();
        return !on_curve_numeric(NumPoly(*f, ids.x, ids.y), sp_xy(s), 1e-8);
    };
    const SingularPoint* focus = nullptr;
    for (const auto& s : sps)
        if ((s.type == PointType::Focus || s.type == PointType::CenterFocusUndecided) && off_curve(s)) {
            focus = &s;
            break;
        }
    double spread = 0;
    if (focus) {
        o.center = sp_xy(*focus);
        double dmin = 1e300;
        for (const auto& s : sps) {
            double dd = norm2({sp_xy(s)[0] - o.center[0], sp_xy(s)[1] - o.center[1]});
            if (dd > 0) dmin = std::min(dmin, dd);
        }
        o.scale = dmin < 1e300 ? 0.1 * dmin : 1.0;
    }
    for (const auto& s : sps) spread = std::max(spread, norm2({sp_xy(s)[0] - o.center[0], sp_xy(s)[1] - o.center[1]}));
    o.cut_radius = 8 * std::max({1.0, o.scale, spread});
    return o;
}

namespace {

// Radial compression r -> t/(1+t) with t = log(1 + r/scale): fine near the centre and still
// reaching the circle at infinity.
struct LogDisk {
    Vec2 c;
    double s;
    Vec2 to_disk(const Vec2& z) const {
        double dx = z[0] - c[0], dy = z[1] - c[1], r = std::hypot(dx, dy);
        if (r == 0) return {0, 0};
        double t = std::log1p(r / s), rho = t / (1 + t);
        return {rho * dx / r, rho * dy / r};
    }
    std::optional<Vec2> to_plane(const Vec2& D) const {
        double rho = norm2(D);
        if (rho >= 1) return std::nullopt;
        if (rho == 0) return c;
        double t = rho / (1 - rho);
        if (t > 30) return std::nullopt;
        double r = s * std::expm1(t);
        return Vec2{c[0] + r * D[0] / rho, c[1] + r * D[1] / rho};
    }
};

}  // namespace

// Angles where f changes sign on the circle of radius rad about z0, including thin dips
// between samples (found by minimising the signed value near each sampled local minimum).
std::vector<double> circle_roots(const NumPoly& f, const Vec2& z0, double rad) {
    const int M = 20000;
    auto on = [&](double th) { return f(z0[0] + rad * std::cos(th), z0[1] + rad * std::sin(th)); };
    std::vector<double> v(M + 2);
    for (int k = 0; k <= M + 1; ++k) v[k] = on(2 * M_PI * k / M);
    auto bisect = [&](double lo, double hi) {
        bool slo = on(lo) < 0;
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            if ((on(mid) < 0) == slo) lo = mid;
            else hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    std::vector<double> roots;
    for (int k = 1; k <= M; ++k) {
        double lo = 2 * M_PI * (k - 1) / M, hi = 2 * M_PI * k / M;
        if ((v[k] < 0) != (v[k - 1] < 0)) {
            roots.push_back(bisect(lo, hi));
            continue;
        }
        double s = v[k] < 0 ? -1 : 1;
        if (s * v[k] <= s * v[k - 1] && s * v[k] <= s * v[k + 1]) {
            double a = lo, b = 2 * M_PI * (k + 1) / M;
            auto r = boost::math::tools::brent_find_minima([&](double th) { return s * on(th); }, a, b, 50);
            if (r.second < 0) {
                roots.push_back(bisect(a, r.first));
                roots.push_back(bisect(r.first, b));
            }
        }
    }
    return roots;
}

// Predictor-corrector continuation along f = 0. Steps are a quarter of the local grid cell,
// and at most a fifth of the distance to `anchor` when given. visit(z, step) returns true to stop.
template <class Cell, class Visit>
void follow(const NumPoly& f, Vec2 z, Vec2 heading, Cell cell, Visit visit, const Vec2* anchor = nullptr,
            int max_steps = 50000) {
    for (int it = 0; it < max_steps; ++it) {
        Vec2 g = f.grad(z[0], z[1]);
        double gn = norm2(g);
        if (gn == 0) return;
        Vec2 t{-g[1] / gn, g[0] / gn};
        if (t[0] * heading[0] + t[1] * heading[1] < 0) t = {-t[0], -t[1]};
        double h = 0.25 * cell(z);
        if (anchor) h = std::min(h, 0.2 * norm2({z[0] - (*anchor)[0], z[1] - (*anchor)[1]}));
        Vec2 w{z[0] + h * t[0], z[1] + h * t[1]};
        for (int n = 0; n < 8; ++n) {
            Vec2 gw = f.grad(w[0], w[1]);
            double g2 = gw[0] * gw[0] + gw[1] * gw[1];
            if (g2 == 0) break;
            double fv = f(w[0], w[1]);
            w = {w[0] - fv * gw[0] / g2, w[1] - fv * gw[1] / g2};
        }
        double step = norm2({w[0] - z[0], w[1] - z[1]});
        if (!(step > 0) || step > 4 * h) return;
        heading = {(w[0] - z[0]) / step, (w[1] - z[1]) / step};
        z = w;
        if (visit(z, step)) return;
    }
}

// Component reached by following a real branch of f = 0 away from the curve point z0.
// Branches start at sign changes of f on small circles around z0; none on any circle means z0
// is an isolated real point (-1). Jumping between branches that meet at z0 is harmless since
// they lie on the same component.
template <class Nearest, class Cell>
int trace_branch(const NumPoly& f, const Vec2& z0, Nearest nearest, Cell cell, double hit) {
    const double c0 = cell(z0);
    for (double delta : {1.0, 0.3, 3.0, 0.1, 10.0}) {
        double rad = delta * c0;
        auto starts = circle_roots(f, z0, rad);
        for (double th : starts) {
            int found = -1;
            follow(
                f, {z0[0] + rad * std::cos(th), z0[1] + rad * std::sin(th)}, {std::cos(th), std::sin(th)}, cell,
                [&](const Vec2& z, double) {
                    if (norm2({z[0] - z0[0], z[1] - z0[1]}) <= 2 * c0) return false;
                    auto [c, d] = nearest(z);
                    if (c >= 0 && d < hit) found = c;
                    return found >= 0;
                },
                &z0);
            if (found >= 0) return found;
        }
        if (!starts.empty()) return -1;
    }
    return -1;
}

namespace {

// Components in a window with unit aspect; `marked` are curve points to attach (system
// singular points).
std::vector<CurveComponent> components_in_window(const Poly& f, const std::vector<Vec2>& marked, const ComponentOptions& opt) {
    const auto& ids = xy();
    const int d = f.degree_in({ids.x, ids.y});
    NumPoly nf(f, ids.x, ids.y);
    Poly top;
    for (const auto& [m, c] : f.terms())
        if (mono_exp(m, ids.x) + mono_exp(m, ids.y) == d) top += Poly::term(c, m);
    NumPoly ntop(top, ids.x, ids.y);
    const double mc = nf.max_abs_coeff(), sd = std::pow(opt.scale, d);
    const LogDisk map{opt.center, opt.scale};
    auto value = [&](double X, double Y) {
        double rho = std::hypot(X, Y);
        if (rho == 0) return nf(opt.center[0], opt.center[1]) / mc;
        double ux = X / rho, uy = Y / rho;
        double t = rho < 1 ? rho / (1 - rho) : 1e300;
        if (t > 30) return sd * ntop(ux, uy) / mc;
        double r = opt.scale * std::expm1(t);
        return nf(opt.center[0] + r * ux, opt.center[1] + r * uy) / (mc * std::pow(1 + r / opt.scale, d));
    };

    const int N = opt.grid;
    const double L = 1.02, hstep = 2 * L / N;
    auto coord = [&](int i) { return -L + i * hstep; };
    double rcut = 1;  // disk radius of the cut circle
    if (opt.cut_radius > 0) {
        double t = std::log1p(opt.cut_radius / opt.scale);
        rcut = t / (1 + t);
    }
    std::vector<double> val((N + 1) * (N + 1));
    auto at = [&](int i, int j) -> double& { return val[i * (N + 1) + j]; };
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j) at(i, j) = value(coord(i), coord(j));
    auto inside = [&](int i, int j) { return coord(i) * coord(i) + coord(j) * coord(j) <= rcut * rcut; };
    auto pos = [](double v) { return v >= 0; };

    // edge ids: horizontal (i,j)-(i+1,j) -> 2*(i*(N+1)+j), vertical (i,j)-(i,j+1) -> 2*(i*(N+1)+j)+1
    auto hid = [&](int i, int j) { return 2 * (i * (N + 1) + j); };
    auto vid = [&](int i, int j) { return 2 * (i * (N + 1) + j) + 1; };
    std::map<int, Vec2> cross;     // disk coordinates of crossings
    std::map<int, bool> boundary;  // crossing on an edge leaving the disk
    std::map<int, std::vector<int>> adj;
    auto crossing = [&](int id, int i0, int j0, int i1, int j1) {
        if (cross.count(id)) return;
        double a = at(i0, j0), b = at(i1, j1), t = a / (a - b);
        cross[id] = {coord(i0) + t * (coord(i1) - coord(i0)), coord(j0) + t * (coord(j1) - coord(j0))};
        boundary[id] = !inside(i0, j0) || !inside(i1, j1);
    };
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (!inside(i, j) && !inside(i + 1, j) && !inside(i, j + 1) && !inside(i + 1, j + 1)) continue;
            bool s00 = pos(at(i, j)), s10 = pos(at(i + 1, j)), s11 = pos(at(i + 1, j + 1)), s01 = pos(at(i, j + 1));
            // e0 bottom, e1 right, e2 top, e3 left
            std::array<int, 4> e{hid(i, j), vid(i + 1, j), hid(i, j + 1), vid(i, j)};
            std::array<bool, 4> has{s00 != s10, s10 != s11, s11 != s01, s01 != s00};
            if (has[0]) crossing(e[0], i, j, i + 1, j);
            if (has[1]) crossing(e[1], i + 1, j, i + 1, j + 1);
            if (has[2]) crossing(e[2], i, j + 1, i + 1, j + 1);
            if (has[3]) crossing(e[3], i, j, i, j + 1);
            std::vector<std::pair<int, int>> links;
            int n = has[0] + has[1] + has[2] + has[3];
            if (n == 2) {
                std::vector<int> ks;
                for (int k = 0; k < 4; ++k)
                    if (has[k]) ks.push_back(e[k]);
                links.push_back({ks[0], ks[1]});
            } else if (n == 4) {
                bool sc = pos(value(coord(i) + 0.5 * hstep, coord(j) + 0.5 * hstep));
                if (sc == s00) links = {{e[0], e[1]}, {e[2], e[3]}};
                else links = {{e[0], e[3]}, {e[1], e[2]}};
            }
            for (auto [u, v] : links) {
                adj[u].push_back(v);
                adj[v].push_back(u);
            }
        }

    struct Chain {
        std::vector<Vec2> disk, plane;
        bool open = false;
    };
    std::vector<Chain> chains;
    std::set<int> seen;
    auto walk = [&](int start) {
        std::vector<int> chain{start};
        seen.insert(start);
        int cur = start;
        while (true) {
            int nxt = -1;
            for (int v : adj[cur])
                if (!seen.count(v)) {
                    nxt = v;
                    break;
                }
            if (nxt < 0) break;
            seen.insert(nxt);
            chain.push_back(nxt);
            cur = nxt;
        }
        return chain;
    };
    auto keep = [&](const std::vector<int>& ids_) {
        Chain c;
        for (int id : ids_) {
            c.open = c.open || boundary[id];
            Vec2 D = cross[id];
            c.disk.push_back(D);
            if (auto a = map.to_plane(D)) c.plane.push_back(*a);
        }
        // loops spanning a few cells are unresolved thin regions, short open chains are cut noise
        if (c.plane.empty() || (!c.open && ids_.size() <= 12) || (c.open && ids_.size() <= 4)) return;
        if (!c.open) {
            c.disk.push_back(c.disk.front());
            c.plane.push_back(c.plane.front());
        }
        chains.push_back(std::move(c));
    };
    // open chains first (endpoints have one neighbour), then closed loops
    for (const auto& [id, nb] : adj)
        if (!seen.count(id) && nb.size() == 1) keep(walk(id));
    for (const auto& [id, nb] : adj)
        if (!seen.count(id)) keep(walk(id));

    std::vector<int> parent(chains.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };

    // spatial index of chain points by disk cell
    std::unordered_map<long, std::vector<std::pair<int, Vec2>>> index;
    auto key = [&](const Vec2& D) {
        long i = std::lround(std::floor((D[0] + L) / hstep)), j = std::lround(std::floor((D[1] + L) / hstep));
        return i * (N + 2) + j;
    };
    for (size_t c = 0; c < chains.size(); ++c)
        for (const auto& D : chains[c].disk) index[key(D)].push_back({static_cast<int>(c), D});
    auto nearest = [&](const Vec2& w) {
        Vec2 D = map.to_disk(w);
        long i = std::lround(std::floor((D[0] + L) / hstep)), j = std::lround(std::floor((D[1] + L) / hstep));
        std::pair<int, double> best{-1, 1e300};
        for (long di = -3; di <= 3; ++di)
            for (long dj = -3; dj <= 3; ++dj) {
                auto it = index.find((i + di) * (N + 2) + (j + dj));
                if (it == index.end()) continue;
                for (const auto& [c, P] : it->second) {
                    double dd = norm2({P[0] - D[0], P[1] - D[1]});
                    if (dd < best.second) best = {find(c), dd};
                }
            }
        return best;
    };
    auto cell_size = [&](const Vec2& w) {
        double r = norm2({w[0] - opt.center[0], w[1] - opt.center[1]}), t = std::log1p(r / opt.scale);
        return hstep * (1 + t) * (1 + t) * (opt.scale + r);
    };
    const double hit = 1.5 * hstep;

    // A loop of the grid picture must close up along the curve itself; loops that run into
    // another chain are pieces of a thin region and are merged with it.
    for (size_t c = 0; c < chains.size(); ++c) {
        if (chains[c].open) continue;
        Vec2 z = chains[c].plane[chains[c].plane.size() / 2];
        for (int n = 0; n < 8; ++n) {
            Vec2 g = nf.grad(z[0], z[1]);
            double g2 = g[0] * g[0] + g[1] * g[1];
            if (g2 == 0) break;
            double fv = nf(z[0], z[1]);
            z = {z[0] - fv * g[0] / g2, z[1] - fv * g[1] / g2};
        }
        Vec2 g = nf.grad(z[0], z[1]);
        for (int sgn : {1, -1}) {
            Vec2 head{-sgn * g[1], sgn * g[0]};
            const Vec2 start = z;
            double travelled = 0, h0 = cell_size(z);
            int other = -1;
            follow(nf, z, head, cell_size, [&](const Vec2& w, double step) {
                travelled += step;
                if (travelled > 8 * h0 && norm2({w[0] - start[0], w[1] - start[1]}) < 2 * h0) return true;
                auto [o, d] = nearest(w);
                if (o >= 0 && o != find(static_cast<int>(c)) && d < hit) other = o;
                return other >= 0;
            });
            if (other >= 0) {
                parent[find(static_cast<int>(c))] = find(other);
                break;
            }
        }
    }

    std::map<int, int> slot;
    std::vector<CurveComponent> comps;
    for (size_t c = 0; c < chains.size(); ++c) {
        int r = find(static_cast<int>(c));
        if (!slot.count(r)) {
            slot[r] = static_cast<int>(comps.size());
            comps.push_back({});
            comps.back().kind = "oval";
        }
        auto& out = comps[slot[r]];
        if (chains[c].open) out.kind = "unbounded";
        for (const auto& D : chains[c].disk) {
            double rr = norm2(D);
            out.disk.push_back(rr > 1 ? Vec2{D[0] / rr, D[1] / rr} : D);
        }
        out.polyline.insert(out.polyline.end(), chains[c].plane.begin(), chains[c].plane.end());
    }

    for (const Vec2& z : marked) {
        auto [bestc, bd] = nearest(z);
        if (bestc < 0 || bd >= 3 * hstep) bestc = trace_branch(nf, z, nearest, cell_size, hit);
        if (bestc >= 0) {
            comps[slot[bestc]].singular_points.push_back(z);
        } else {
            CurveComponent c;
            c.kind = "isolated_point";
            c.polyline = {z};
            c.disk = {map.to_disk(z)};
            c.singular_points = {z};
            comps.push_back(std::move(c));
        }
    }
    return comps;
}

}  // namespace

std::vector<CurveComponent> curve_components(const Poly& f, const Poly& p, const Poly& q, const ComponentOptions& opt) {
    const auto& ids = xy();
    NumPoly nf(f, ids.x, ids.y);
    const double k = opt.aspect;
    std::vector<Vec2> marked;
    for (const auto& s : real_finite(p, q)) {
        Vec2 z = sp_xy(s);
        bool on = s.exact ? f.eval({{ids.x, s.exact->first}, {ids.y, s.exact->second}}).is_zero()
                          : on_curve_numeric(nf, z, opt.on_curve_tol);
        if (on) marked.push_back({z[0], z[1] / k});
    }
    if (k == 1) return components_in_window(f, marked, opt);
    ComponentOptions o = opt;
    o.center = {opt.center[0], opt.center[1] / k};
    Poly g = f.subs(ids.y, Poly::var(ids.y) * mpq_class(k));
    auto comps = components_in_window(g, marked, o);
    for (auto& c : comps) {
        for (auto& z : c.polyline) z[1] *= k;
        for (auto& z : c.singular_points) z[1] *= k;
    }
    return comps;
}

LogDerivativeCheck log_derivative_check(const CompactifiedField& F, const Poly& f, const Poly& k, const Vec2& z0,
                                        double t_end, double tol) {
    const auto& ids = xy();
    NumPoly nf(f, ids.x, ids.y), nk(k, ids.x, ids.y);
    double dir = t_end < 0 ? -1 : 1;
    auto rhs = [&](const State& s, State& ds) {
        Vec2 r = F.affine({s[0], s[1]});
        ds[0] = dir * r[0];
        ds[1] = dir * r[1];
        double kv = nk(s[0], s[1]);
        ds[2] = dir * kv;
        ds[3] = std::abs(kv);
    };
    LogDerivativeCheck out;
    const double mc = nf.max_abs_coeff();
    double l0 = std::log(std::abs(nf(z0[0], z0[1])));
    DenseRun run(rhs, State{z0[0], z0[1], 0.0, 0.0}, 0, 1e-3, tol);
    for (size_t steps = 0; steps < 200000; ++steps) {
        auto [t0, t1] = run.step();
        State s = t1 > std::abs(t_end) ? run.at(std::abs(t_end)) : run.x();
        double fv = std::abs(nf(s[0], s[1])), zs = std::max(1.0, norm2({s[0], s[1]}));
        // stop where evaluating f loses its digits or the orbit runs off
        if (fv < 1e-6 * mc * std::pow(zs, nf.degree()) || zs > 1e3 * std::max(1.0, norm2(z0))) break;
        out.max_deviation = std::max(out.max_deviation, std::abs(std::log(fv) - l0 - dir * s[2]));
        out.budget = 1e-6 * (1 + s[3]);
        out.time = std::min(t1, std::abs(t_end));
        if (t1 >= std::abs(t_end)) break;
    }
    out.pass = out.max_deviation <= out.budget;
    return out;
}

namespace {

std::string fmt(double v, int prec = 2) {
    std::ostringstream o;
    o << std::fixed << std::setprecision(prec) << (std::abs(v) < 0.5 * std::pow(10.0, -prec) ? 0.0 : v);
    return o.str();
}

double round6(double v) { return std::round(v * 1e6) / 1e6; }

json poly_json(const std::vector<Vec2>& pts) {
    json a = json::array();
    for (const auto& p : pts) a.push_back(json::array({round6(p[0]), round6(p[1])}));
    return a;
}

std::vector<Vec2> traj_disk(const Trajectory& t, double scale) {
    std::vector<Vec2> out;
    for (const auto& p : t.points) {
        Vec2 z = p.chart == 0 ? Vec2{p.z[0], p.z[1]} : p.z;
        out.push_back(disk_point(p.chart, z, scale));
    }
    return out;
}

}  // namespace

Scene render(const CompactifiedField& F, const std::vector<Poly>& curves, const std::optional<Poly>& cofactor,
             const std::vector<CycleCertificate>& cycles, const RenderOptions& opt) {
    const auto& ids = xy();
    ComponentOptions win = opt.window ? *opt.window
                                      : default_window(F.p_exact, F.q_exact,
                                                       curves.empty() ? std::nullopt : std::optional<Poly>(curves[0]));
    auto sps = real_finite(F.p_exact, F.q_exact);
    double S = 1;
    for (const auto& s : sps) S = std::max(S, norm2(sp_xy(s)));
    if (opt.scale > 0) S = opt.scale;
    auto D = [&](const Vec2& z) { return disk_point(0, z, S); };

    Scene sc;
    json& j = sc.json;
    j["scale"] = S;
    j["singular_points"] = json::array();
    j["curves"] = json::array();
    j["cycles"] = json::array();
    j["separatrices"] = json::array();
    j["trajectories"] = json::array();
    j["cofactor_line"] = json::array();

    std::vector<std::pair<Vec2, std::string>> markers;
    for (const auto& s : sps) {
        Vec2 z = sp_xy(s);
        j["singular_points"].push_back(
            {{"x", round6(z[0])}, {"y", round6(z[1])}, {"type", point_type_name(s.type)}, {"index", s.index}, {"at_infinity", false}});
        markers.push_back({D(z), point_type_name(s.type)});
    }
    auto inf = infinite_singular_points(F.p_exact, F.q_exact);
    j["line_at_infinity_singular"] = inf.line_of_singularities;
    for (const auto& ip : inf.points) {
        Vec2 dvec = ip.chart == 1 ? Vec2{1, ip.u} : Vec2{0, 1};
        double n = norm2(dvec);
        dvec = {dvec[0] / n, dvec[1] / n};
        for (int sg : {1, -1}) {
            Vec2 pnt{sg * dvec[0], sg * dvec[1]};
            j["singular_points"].push_back({{"x", round6(pnt[0])},
                                            {"y", round6(pnt[1])},
                                            {"type", point_type_name(ip.type)},
                                            {"index", ip.index},
                                            {"at_infinity", true}});
            markers.push_back({pnt, point_type_name(ip.type)});
        }
    }

    std::vector<std::vector<Vec2>> curve_paths;
    for (size_t ci = 0; ci < curves.size(); ++ci) {
        auto comps = curve_components(curves[ci], F.p_exact, F.q_exact, win);
        for (size_t k = 0; k < comps.size(); ++k) {
            j["curves"].push_back({{"curve", ci}, {"component", k}, {"kind", comps[k].kind}, {"polyline", poly_json(comps[k].polyline)}});
            // a component may hold several traced chains; break the path where it jumps
            std::vector<Vec2> piece;
            for (const auto& z : comps[k].polyline) {
                Vec2 d = D(z);
                if (!piece.empty() && std::hypot(d[0] - piece.back()[0], d[1] - piece.back()[1]) > 0.05) {
                    curve_paths.push_back(std::move(piece));
                    piece.clear();
                }
                piece.push_back(d);
            }
            if (!piece.empty()) curve_paths.push_back(std::move(piece));
        }
    }

    std::vector<std::vector<Vec2>> cycle_paths;
    for (const auto& c : cycles) {
        j["cycles"].push_back({{"polyline", poly_json(c.polyline)}, {"multiplier", c.multiplier}});
        std::vector<Vec2> dp;
        for (const auto& z : c.polyline) dp.push_back(D(z));
        cycle_paths.push_back(dp);
    }

    std::vector<Vec2> cof;
    if (cofactor) {
        NumPoly k(*cofactor, ids.x, ids.y);
        Vec2 g = k.grad(0, 0);
        double c0 = k(0, 0), n = norm2(g);
        if (k.degree() == 1 && n > 0) {
            Vec2 base{-c0 * g[0] / (n * n), -c0 * g[1] / (n * n)}, along{-g[1] / n, g[0] / n};
            for (int i = 1; i < 400; ++i) {
                double th = -M_PI / 2 + M_PI * i / 400.0, t = S * std::tan(th);
                cof.push_back(D({base[0] + t * along[0], base[1] + t * along[1]}));
            }
            j["cofactor_line"] = poly_json(cof);
        }
    }

    IntegrateOptions io;
    io.compactify = true;
    io.tol = 1e-8;
    io.max_steps = 20000;
    io.switch_radius = 100 * S;
    std::vector<std::vector<Vec2>> seps, trajs;
    auto safe = [&](const Vec2& z, double T) -> std::vector<Vec2> {
        try {
            return traj_disk(integrate(F, z, T, io), S);
        } catch (const IntegrationError&) {
            return {};
        }
    };
    for (const auto& s : sps) {
        if (s.type != PointType::Saddle) continue;
        Vec2 z = sp_xy(s);
        Vec2 gp = F.p.grad(z[0], z[1]), gq = F.q.grad(z[0], z[1]);
        double a = gp[0], b = gp[1], c = gq[0], d = gq[1];
        double tr = a + d, det = a * d - b * c, disc = std::sqrt(std::max(0.0, tr * tr - 4 * det));
        for (double lam : {0.5 * (tr + disc), 0.5 * (tr - disc)}) {
            Vec2 v1{b, lam - a}, v2{lam - d, c};
            Vec2 v = norm2(v1) >= norm2(v2) ? v1 : v2;
            double n = norm2(v);
            if (n == 0) continue;
            v = {v[0] / n, v[1] / n};
            double eps = 1e-5 * S;
            for (int sg : {1, -1}) {
                Vec2 z0{z[0] + sg * eps * v[0], z[1] + sg * eps * v[1]};
                auto path = safe(z0, lam > 0 ? 200.0 : -200.0);
                path.insert(path.begin(), D(z));
                j["separatrices"].push_back(poly_json(path));
                seps.push_back(path);
            }
        }
    }
    std::mt19937 rng(opt.seed);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int i = 0; i < opt.trajectories; ++i) {
        Vec2 d;
        do d = {U(rng), U(rng)};
        while (d[0] * d[0] + d[1] * d[1] > 0.9);
        double w = std::sqrt(1 - d[0] * d[0] - d[1] * d[1]);
        Vec2 z{S * d[0] / w, S * d[1] / w};
        auto fwd = safe(z, 60.0), bwd = safe(z, -60.0);
        std::reverse(bwd.begin(), bwd.end());
        if (!fwd.empty() && !bwd.empty()) bwd.insert(bwd.end(), fwd.begin() + 1, fwd.end());
        else if (bwd.empty()) bwd = fwd;
        j["trajectories"].push_back(poly_json(bwd));
        trajs.push_back(bwd);
    }

    const double size = opt.size, R = 0.45 * size, C = 0.5 * size;
    auto path_d = [&](const std::vector<Vec2>& pts) {
        std::string s;
        bool first = true;
        Vec2 last{1e9, 1e9};
        for (const auto& p : pts) {
            double X = C + R * p[0], Y = C - R * p[1];
            if (!first && std::hypot(X - last[0], Y - last[1]) < 0.3) continue;
            s += (first ? "M" : " L") + fmt(X) + " " + fmt(Y);
            first = false;
            last = {X, Y};
        }
        return s;
    };
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (!opt.reproducible) {
        std::time_t now = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        svg << "<!-- generated " << buf << " -->\n";
    }
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opt.size << "\" height=\"" << opt.size
        << "\" viewBox=\"0 0 " << opt.size << " " << opt.size << "\">\n";
    svg << "<style>.traj{fill:none;stroke:#9a9a9a;stroke-width:0.6}.sep{fill:none;stroke:#1f4fb5;stroke-width:1.1}"
           ".curve{fill:none;stroke:#c0392b;stroke-width:2.2}.cycle{fill:none;stroke:#e67e22;stroke-width:1.2;stroke-dasharray:2 2}"
           ".cofactor{fill:none;stroke:#333;stroke-width:1;stroke-dasharray:6 4}.disk{fill:none;stroke:#000;stroke-width:1.2}</style>\n";
    svg << "<defs><clipPath id=\"d\"><circle cx=\"" << fmt(C) << "\" cy=\"" << fmt(C) << "\" r=\"" << fmt(R) << "\"/></clipPath></defs>\n";
    svg << "<g clip-path=\"url(#d)\">\n";
    for (const auto& t : trajs) svg << "<path class=\"traj\" d=\"" << path_d(t) << "\"/>\n";
    for (const auto& t : seps) svg << "<path class=\"sep\" d=\"" << path_d(t) << "\"/>\n";
    if (!cof.empty()) svg << "<path class=\"cofactor\" d=\"" << path_d(cof) << "\"/>\n";
    for (const auto& t : curve_paths) svg << "<path class=\"curve\" d=\"" << path_d(t) << "\"/>\n";
    for (const auto& t : cycle_paths) svg << "<path class=\"cycle\" d=\"" << path_d(t) << "\"/>\n";
    svg << "</g>\n";
    svg << "<circle class=\"disk\" cx=\"" << fmt(C) << "\" cy=\"" << fmt(C) << "\" r=\"" << fmt(R) << "\"/>\n";
    for (const auto& [p, type] : markers) {
        std::string fill = type == std::string("saddle") ? "#1f4fb5" : (type == std::string("focus") ? "#c0392b" : "#222");
        svg << "<circle cx=\"" << fmt(C + R * p[0]) << "\" cy=\"" << fmt(C - R * p[1]) << "\" r=\"3.5\" fill=\"" << fill
            << "\"><title>" << type << "</title></circle>\n";
    }
    svg << "</svg>\n";
    sc.svg = svg.str();
    return sc;
}

}  // namespace alc
