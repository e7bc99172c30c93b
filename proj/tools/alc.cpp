#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "alc/analysis.hpp"
#include "alc/cremona.hpp"

using namespace alc;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kHypothesis = 3 };

struct RunConfig {
    std::string family, pipeline, input, output, map = "c2";
    std::vector<std::string> params;
    double tol = 1e-10, cert_tol = 1e-6;
    unsigned seed = 1;
    int trajectories = 24;
    double scale = 0;
    bool reproducible = false, all = false, check_degree = false, force = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// "7/4", "-3", "0.05", "1e-2" -> exact rational
mpq_class parse_rational(const std::string& s) {
    try {
        if (s.find_first_of(".eE") == std::string::npos) {
            mpq_class q(s);
            q.canonicalize();
            return q;
        }
        std::string mant = s;
        long exp10 = 0;
        if (auto e = s.find_first_of("eE"); e != std::string::npos) {
            mant = s.substr(0, e);
            exp10 = std::stol(s.substr(e + 1));
        }
        std::string digits;
        for (char ch : mant) {
            if (ch == '.') continue;
            digits += ch;
        }
        if (auto dot = mant.find('.'); dot != std::string::npos) exp10 -= static_cast<long>(mant.size() - dot - 1);
        mpz_class num(digits), p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
        mpq_class q = exp10 >= 0 ? mpq_class(num * p10) : mpq_class(num, p10);
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw UsageError("not a rational number: " + s);
    }
}

ParamValues parse_params(const std::vector<std::string>& items) {
    ParamValues v;
    for (const auto& item : items) {
        std::stringstream ss(item);
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            if (kv.empty()) continue;
            auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0) throw UsageError("expected name=value, got " + kv);
            v[kv.substr(0, eq)] = parse_rational(kv.substr(eq + 1));
        }
    }
    return v;
}

// Trailing "--beta 7/4" style arguments left over by the parser.
void collect_extras(const CLI::App* sub, RunConfig& cfg) {
    auto rest = sub->remaining();
    for (size_t i = 0; i < rest.size(); ++i) {
        std::string a = rest[i];
        if (a.rfind("--", 0) != 0) throw UsageError("unexpected argument " + a);
        a = a.substr(2);
        if (a.find('=') == std::string::npos) {
            if (i + 1 >= rest.size()) throw UsageError("missing value for --" + a);
            a += "=" + rest[++i];
        }
        cfg.params.push_back(a);
    }
}

void emit(const json& j, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << j.dump(2) << "\n";
}

std::vector<std::string> family_list(const std::string& name) {
    if (name == "all") return family_names();
    return {name};
}

FamilyRecord numeric_record(const std::string& family, const ParamValues& given) {
    FamilyRecord base = get_family(family);
    return get_family(family, given.empty() ? base.reference_sample : given);
}

int cmd_verify(const RunConfig& cfg) {
    if (cfg.family.empty()) throw UsageError("verify needs --family");
    auto names = family_list(cfg.family);
    ParamValues given = parse_params(cfg.params);
    std::vector<std::future<VerifyReport>> jobs;
    for (const auto& n : names) {
        get_family(n);  // unknown names fail here, before any job starts
        jobs.push_back(std::async(std::launch::async, [n, &given] {
            return verify_family(given.empty() ? get_family(n) : get_family(n, given));
        }));
    }
    json out = json::array();
    int passed = 0;
    for (auto& j : jobs) {
        auto rep = j.get();
        passed += rep.pass;
        out.push_back(rep.to_json());
        std::cerr << rep.family << ": " << (rep.pass ? "pass" : "FAIL") << "\n";
    }
    if (names.size() > 1) std::cerr << passed << "/" << names.size() << " pass\n";
    emit(names.size() == 1 ? out[0] : out, cfg.output);
    return passed == static_cast<int>(names.size()) ? kPass : kFail;
}

int cmd_transform(const RunConfig& cfg) {
    if (cfg.input.empty()) throw UsageError("transform needs --input");
    if (cfg.map != "c2") throw UsageError("only --map c2 is available for affine systems");
    SystemDescriptor d = load_descriptor(cfg.input);
    json out;
    bool ok = true;
    auto failed = c2a_hypothesis_failures(d.sys);
    if (!failed.empty() && !cfg.force) {
        std::string msg;
        for (const auto& f : failed) msg += (msg.empty() ? "" : ", ") + f + " violated";
        std::cerr << "error: " << msg << "\n";
        return kHypothesis;
    }
    if (!failed.empty()) {
        int form_degree = 0;
        AffineSystem img = c2_general(d.sys, &form_degree);
        std::cerr << "warning: hypotheses fail (";
        for (size_t i = 0; i < failed.size(); ++i) std::cerr << (i ? ", " : "") << failed[i];
        std::cerr << "); general pullback has degree " << img.degree() << "\n";
        out = to_json(img);
        out["pullback_form_degree"] = form_degree;
        out["warning"] = "general pullback, hypotheses not met";
    } else {
        AffineSystem img = transform_c2a(d.sys);
        std::vector<InvariantCurve> curves;
        json degrees = json::array();
        for (const auto& c : d.curves) {
            curves.push_back(c2a_invariant_curve(img, c));
            ok = ok && curves.back().verified;
            if (cfg.check_degree) {
                DegreeCheck dc = c2_degree_check(d.sys, c.f, img, curves.back().f);
                ok = ok && dc.pass;
                degrees.push_back(dc.to_json());
            }
        }
        out = to_json(img, curves);
        if (cfg.check_degree) out["degree_check"] = degrees;
    }
    emit(out, cfg.output);
    return ok ? kPass : kFail;
}

int cmd_reproduce(const RunConfig& cfg) {
    std::vector<std::string> ids;
    if (cfg.all) ids = pipeline_ids();
    else if (!cfg.pipeline.empty()) ids = {cfg.pipeline};
    else throw UsageError("reproduce needs --pipeline or --all");
    auto known = pipeline_ids();
    for (const auto& id : ids)
        if (std::find(known.begin(), known.end(), id) == known.end()) throw UnknownName("unknown pipeline: " + id);
    std::vector<std::future<PipelineReport>> jobs;
    for (const auto& id : ids) jobs.push_back(std::async(std::launch::async, [id] { return reproduce(id); }));
    json out = json::array();
    int passed = 0;
    for (auto& j : jobs) {
        auto rep = j.get();
        passed += rep.pass;
        out.push_back(rep.to_json());
        std::cerr << rep.id << ": " << (rep.pass ? "pass" : "FAIL") << "\n";
    }
    if (ids.size() > 1) std::cerr << passed << "/" << ids.size() << " pipelines pass\n";
    emit(ids.size() == 1 ? out[0] : out, cfg.output);
    return passed == static_cast<int>(ids.size()) ? kPass : kFail;
}

CycleOptions cycle_options(const RunConfig& cfg) {
    CycleOptions o;
    o.tol = cfg.tol;
    o.cert_tol = cfg.cert_tol;
    return o;
}

int cmd_analyze(const RunConfig& cfg) {
    if (cfg.family.empty()) throw UsageError("analyze needs --family");
    auto names = family_list(cfg.family);
    ParamValues given = parse_params(cfg.params);
    if (names.size() > 1 && !given.empty()) throw UsageError("--params needs a single family");
    std::vector<FamilyRecord> recs;
    for (const auto& n : names) recs.push_back(numeric_record(n, given));
    std::vector<std::future<FamilyPhase>> jobs;
    for (const auto& r : recs)
        jobs.push_back(std::async(std::launch::async, [&r, &cfg] { return analyze_family(r, cycle_options(cfg)); }));
    json out = json::array();
    bool ok = true;
    for (auto& j : jobs) {
        auto ph = j.get();
        bool good = ph.topology_match && ph.cycle && ph.cycle->curve_residual && *ph.cycle->curve_residual < cfg.cert_tol;
        ok = ok && good;
        out.push_back(ph.to_json());
        std::cerr << ph.family << " (" << values_str(ph.values) << "): " << (good ? "pass" : "FAIL") << "\n";
    }
    emit(names.size() == 1 ? out[0] : out, cfg.output);
    return ok ? kPass : kFail;
}

std::string with_extension(const std::string& path, const std::string& ext) {
    return std::filesystem::path(path).replace_extension(ext).string();
}

int cmd_portrait(const RunConfig& cfg) {
    if (cfg.family.empty()) throw UsageError("portrait needs --family");
    auto names = family_list(cfg.family);
    ParamValues given = parse_params(cfg.params);
    if (names.size() > 1 && !given.empty()) throw UsageError("parameters need a single family");
    std::string out = cfg.output;
    if (names.size() > 1) {
        if (out.empty()) out = ".";
        std::filesystem::create_directories(out);
    } else if (out.empty()) {
        out = names[0] + ".svg";
    }
    std::vector<FamilyRecord> recs;
    for (const auto& n : names) recs.push_back(numeric_record(n, given));
    std::vector<std::future<std::pair<std::string, Scene>>> jobs;
    for (const auto& r : recs)
        jobs.push_back(std::async(std::launch::async, [&r, &cfg] {
            auto ph = analyze_family(r, cycle_options(cfg));
            std::vector<CycleCertificate> cycles;
            if (ph.cycle) cycles.push_back(*ph.cycle);
            RenderOptions ro;
            ro.seed = cfg.seed;
            ro.trajectories = cfg.trajectories;
            ro.scale = cfg.scale;
            ro.reproducible = cfg.reproducible;
            Scene sc = family_portrait(r, cycles, ro);
            sc.json["family"] = r.name;
            sc.json["parameters"] = values_str(*r.values);
            return std::make_pair(r.name, sc);
        }));
    for (auto& j : jobs) {
        auto [name, sc] = j.get();
        std::string svg = names.size() > 1 ? (std::filesystem::path(out) / (name + ".svg")).string() : out;
        std::ofstream(svg) << sc.svg;
        emit(sc.json, with_extension(svg, ".json"));
        std::cerr << "wrote " << svg << " and " << with_extension(svg, ".json") << "\n";
    }
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Algebraic limit cycles: exact invariant-curve checks, quadratic Cremona transforms, phase portraits"};
    app.set_config("--config", "", "key=value file mirroring the flags; flags given on the command line win");
    app.require_subcommand(1);
    RunConfig cfg;
    auto common = [&](CLI::App* s) {
        s->add_option("--tol", cfg.tol, "integrator local error tolerance")->capture_default_str();
        s->add_option("--cert-tol", cfg.cert_tol, "bound on the scaled curve residual along a cycle")->capture_default_str();
        s->add_option("-o,--output", cfg.output, "output path (stdout when omitted for JSON)");
    };
    auto* verify = app.add_subcommand("verify", "exact invariance and registry checks for a family or all");
    verify->add_option("--family", cfg.family, "family name or all")->required();
    verify->add_option("--params", cfg.params, "parameter bindings name=value");
    common(verify);

    auto* transform = app.add_subcommand("transform", "apply the quadratic map C2 to a JSON system descriptor");
    transform->add_option("--input", cfg.input, "descriptor file")->required()->check(CLI::ExistingFile);
    transform->add_option("--map", cfg.map, "quadratic map")->capture_default_str();
    transform->add_flag("--check-degree", cfg.check_degree, "cross-check image degrees against the blow-up prediction");
    transform->add_flag("--force", cfg.force, "use the general pullback when the hypotheses fail");
    common(transform);

    auto* repro = app.add_subcommand("reproduce", "rerun a transformation pipeline and compare with the recorded target");
    repro->add_option("--pipeline", cfg.pipeline, "pipeline id");
    repro->add_flag("--all", cfg.all, "every pipeline");
    common(repro);

    auto* analyze = app.add_subcommand("analyze", "curve components and limit cycle at a parameter sample");
    analyze->add_option("--family", cfg.family, "family name or all")->required();
    analyze->add_option("--params", cfg.params, "parameter bindings name=value (default: the registry sample)");
    analyze->allow_extras();
    common(analyze);

    auto* portrait = app.add_subcommand("portrait", "Poincare disk portrait as SVG plus a JSON scene");
    portrait->add_option("--family", cfg.family, "family name or all")->required();
    portrait->add_option("--params", cfg.params, "parameter bindings name=value (default: the registry sample)");
    portrait->add_option("--seed", cfg.seed, "seed for the sampled trajectories")->capture_default_str();
    portrait->add_option("--trajectories", cfg.trajectories, "number of sampled trajectories")->capture_default_str();
    portrait->add_option("--scale", cfg.scale, "affine length mapped to disk radius 1/sqrt 2 (0: automatic)");
    portrait->add_flag("--reproducible", cfg.reproducible, "omit the timestamp comment");
    portrait->allow_extras();
    common(portrait);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }
    try {
        if (*verify) return cmd_verify(cfg);
        if (*transform) return cmd_transform(cfg);
        if (*repro) return cmd_reproduce(cfg);
        if (*analyze) {
            collect_extras(analyze, cfg);
            return cmd_analyze(cfg);
        }
        if (*portrait) {
            collect_extras(portrait, cfg);
            return cmd_portrait(cfg);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UnknownName& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DescriptorError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const HypothesisError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kHypothesis;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
