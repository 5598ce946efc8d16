#include "rwlab/config.hpp"

#include <algorithm>
#include <fstream>

#include "rwlab/errors.hpp"

namespace rwlab {
namespace {

using nlohmann::json;

double need_num(const json& j, const char* key, const char* ctx) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw InvalidInput(std::string(ctx) + ": missing numeric field '" + key + "'");
    }
    return j[key].get<double>();
}

double num_or(const json& j, const char* key, double fallback) {
    return j.contains(key) ? j[key].get<double>() : fallback;
}

std::string need_kind(const json& j, const char* ctx) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw InvalidInput(std::string(ctx) + ": expected an object with a 'kind' field");
    }
    return j["kind"].get<std::string>();
}

Interval parse_interval(const json& j) {
    Interval iv;
    if (j.contains("interval")) {
        const auto& a = j["interval"];
        if (!a.is_array() || a.size() != 2) {
            throw InvalidInput("warping: 'interval' must be [lo, hi]");
        }
        iv.lo = a[0].get<double>();
        iv.hi = a[1].get<double>();
    }
    return iv;
}

Vec3 parse_vec3(const json& j, const char* ctx) {
    if (!j.is_array() || j.size() != 3) {
        throw InvalidInput(std::string(ctx) + ": expected an array of 3 numbers");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

WarpingFunction parse_warping(const json& j) {
    std::string kind = need_kind(j, "warping");
    Interval iv = parse_interval(j);
    if (kind == "constant") return WarpingFunction::constant(need_num(j, "a", "warping"), iv);
    if (kind == "exponential") {
        return WarpingFunction::exponential(need_num(j, "a", "warping"), iv);
    }
    if (kind == "cosh_plus") {
        return WarpingFunction::cosh_plus(need_num(j, "a", "warping"),
                                          need_num(j, "b", "warping"), iv);
    }
    if (kind == "power") {
        if (!j.contains("interval")) throw InvalidInput("warping power: 'interval' is required");
        return WarpingFunction::power(need_num(j, "a", "warping"), need_num(j, "p", "warping"),
                                      iv);
    }
    if (kind == "linear") {
        if (!j.contains("interval")) throw InvalidInput("warping linear: 'interval' is required");
        return WarpingFunction::linear(need_num(j, "a", "warping"), need_num(j, "b", "warping"),
                                       iv);
    }
    throw InvalidInput("warping: unknown kind '" + kind + "'");
}

Profile parse_profile(const json& j) {
    if (j.is_number()) return Profile::constant(j.get<double>());
    std::string kind = need_kind(j, "profile");
    if (kind == "constant") return Profile::constant(need_num(j, "value", "profile constant"));
    if (kind == "linear") {
        return Profile::linear(need_num(j, "a", "profile linear"), num_or(j, "b", 0.0));
    }
    if (kind == "poly") {
        if (!j.contains("coeffs") || !j["coeffs"].is_array()) {
            throw InvalidInput("profile poly: missing 'coeffs' array");
        }
        return Profile::poly(j["coeffs"].get<std::vector<double>>());
    }
    if (kind == "trig") {
        return Profile::trig(need_num(j, "a", "profile trig"), need_num(j, "b", "profile trig"),
                             num_or(j, "c", 0.0), num_or(j, "d", 0.0));
    }
    if (kind == "exponential") {
        return Profile::exponential(need_num(j, "a", "profile exponential"),
                                    need_num(j, "b", "profile exponential"), num_or(j, "c", 0.0));
    }
    throw InvalidInput("profile: unknown kind '" + kind + "'");
}

Grid parse_grid(const json& j) {
    if (!j.is_object()) throw InvalidInput("grid: expected an object");
    Grid g{need_num(j, "u0", "grid"), need_num(j, "u1", "grid"),
           static_cast<int>(num_or(j, "nu", 32)), need_num(j, "v0", "grid"),
           need_num(j, "v1", "grid"), static_cast<int>(num_or(j, "nv", 32))};
    if (g.nu < 2 || g.nv < 2) throw InvalidInput("grid: nu and nv must be >= 2");
    if (!(g.u1 > g.u0) || !(g.v1 > g.v0)) throw InvalidInput("grid: need u1 > u0 and v1 > v0");
    return g;
}

SphereFrame parse_frame(const json& j) {
    if (!j.is_object()) throw InvalidInput("frame0: expected an object");
    return SphereFrame{parse_vec3(j.at("alpha"), "frame0.alpha"),
                       parse_vec3(j.at("alpha_d"), "frame0.alpha_d"),
                       parse_vec3(j.at("n"), "frame0.n")};
}

namespace {

SphericalFamilySpec parse_spherical(const json& j, const WarpingFunction& f, const Rect& domain) {
    SphericalFamilySpec s{parse_profile(j.at("kappa")),
                          parse_frame(j.at("frame0")),
                          parse_profile(j.at("phi1")),
                          parse_profile(j.at("R")),
                          parse_profile(j.at("tau0")),
                          num_or(j, "psi1_0", 0.0),
                          num_or(j, "psi2_0", 0.0),
                          f,
                          domain};
    s.ode_step = num_or(j, "ode_step", 1e-3);
    s.quad_panels = static_cast<int>(num_or(j, "quad_panels", 512));
    return s;
}

}  // namespace

AnyFamilySpec parse_family(const json& j, const WarpingFunction& f, const Rect& domain) {
    std::string kind = need_kind(j, "family");
    try {
        if (kind == "cylinder") {
            return CylinderFamilySpec{parse_profile(j.at("x1")), parse_profile(j.at("x2")), f,
                                      domain};
        }
        if (kind == "revolution") {
            return RevolutionFamilySpec{parse_profile(j.at("zeta1")),
                                        parse_profile(j.at("zeta2")), f, domain};
        }
        if (kind == "spherical") return parse_spherical(j, f, domain);
        if (kind == "minimal_cylinder") {
            return MinimalCylinderParams{f, need_num(j, "c1", "minimal_cylinder"),
                                         need_num(j, "c2", "minimal_cylinder"),
                                         need_num(j, "c3", "minimal_cylinder"), domain};
        }
        if (kind == "minimal_revolution") {
            RevolutionInit init{need_num(j, "zeta1_0", "minimal_revolution"),
                                num_or(j, "zeta2_0", 0.0),
                                need_num(j, "zeta1_d0", "minimal_revolution"),
                                num_or(j, "zeta2_d0", 0.0)};
            return MinimalRevolutionParams{f, init, domain, num_or(j, "step", 1e-3)};
        }
        if (kind == "eta_parallel_cylinder") {
            return EtaParallelSpec{EtaParallelCylinderSpec{
                need_num(j, "c1", "eta_parallel_cylinder"),
                need_num(j, "c2", "eta_parallel_cylinder"),
                num_or(j, "c3", 0.0), f, domain}};
        }
        if (kind == "eta_parallel_spherical") {
            EtaParallelSphericalSpec s{need_num(j, "c", "eta_parallel_spherical"),
                                       num_or(j, "tau_offset", 0.0),
                                       parse_profile(j.at("kappa")),
                                       parse_profile(j.at("phi1")),
                                       parse_frame(j.at("frame0")),
                                       num_or(j, "psi1_0", 0.0),
                                       num_or(j, "psi2_0", 0.0),
                                       f,
                                       domain};
            s.ode_step = num_or(j, "ode_step", 1e-3);
            s.quad_panels = static_cast<int>(num_or(j, "quad_panels", 512));
            return EtaParallelSpec{s};
        }
        if (kind == "perturbed_cylinder") {
            CylinderFamilySpec base{parse_profile(j.at("x1")), parse_profile(j.at("x2")), f,
                                    domain};
            return PerturbedCylinderSpec{base, num_or(j, "amplitude", 0.1)};
        }
    } catch (const json::exception& e) {
        throw InvalidInput("family '" + kind + "': " + e.what());
    }
    throw InvalidInput("family: unknown kind '" + kind + "'");
}

SuiteSpec parse_suite(const json& j) {
    SuiteSpec spec = default_suite();
    if (j.is_null()) return spec;
    if (!j.is_object()) throw InvalidInput("suite: expected an object");
    if (j.contains("checks")) {
        std::vector<std::string> checks;
        if (j["checks"].is_string()) {
            // comma-separated shorthand for --set overrides
            std::string s = j["checks"].get<std::string>();
            size_t pos = 0;
            while (pos <= s.size()) {
                size_t c = s.find(',', pos);
                if (c == std::string::npos) c = s.size();
                if (c > pos) checks.push_back(s.substr(pos, c - pos));
                pos = c + 1;
            }
        } else {
            checks = j["checks"].get<std::vector<std::string>>();
        }
        auto known = all_check_names();
        for (const auto& c : checks) {
            if (std::find(known.begin(), known.end(), c) == known.end()) {
                throw InvalidInput("suite: unknown check '" + c + "'");
            }
        }
        spec.checks = checks;
    }
    if (j.contains("tolerances")) {
        for (const auto& [k, v] : j["tolerances"].items()) {
            double tol = v.get<double>();
            if (!(tol > 0.0)) throw InvalidInput("suite: tolerance for '" + k + "' must be > 0");
            spec.tolerances[k] = tol;
        }
    }
    if (j.contains("seed")) spec.seed = j["seed"].get<unsigned>();
    return spec;
}

const std::vector<FamilyInfo>& family_catalog() {
    static const std::vector<FamilyInfo> catalog = {
        {"cylinder", "graph (u, x1(u), x2(u), v) over a plane curve; flat second direction",
         {"x1", "x2"}},
        {"revolution", "rotational graph (u, zeta1 cos v, zeta1 sin v, zeta2), zeta1 > 0",
         {"zeta1", "zeta2"}},
        {"spherical",
         "phi1 alpha + phi2 alpha' + phi3 n over a unit-speed sphere curve with geodesic "
         "curvature kappa; phi2, phi3 from the separation ansatz",
         {"kappa", "frame0", "phi1", "R", "tau0", "psi1_0", "psi2_0", "ode_step", "quad_panels"}},
        {"minimal_cylinder",
         "minimal cylinder-type graph by quadrature; requires c3 < 0 and "
         "c3 f^4 + c1^2 + 1 > 0",
         {"c1", "c2", "c3"}},
        {"minimal_revolution", "minimal rotational graph from the profile ODE system",
         {"zeta1_0", "zeta2_0", "zeta1_d0", "zeta2_d0", "step"}},
        {"eta_parallel_cylinder",
         "parallel normalized mean curvature direction, cylinder variant; c1^2 + c2^2 > 1",
         {"c1", "c2", "c3"}},
        {"eta_parallel_spherical",
         "parallel normalized mean curvature direction, spherical variant; R = c/f with c^2 > 1",
         {"c", "tau_offset", "kappa", "phi1", "frame0", "psi1_0", "psi2_0"}},
        {"perturbed_cylinder", "cylinder graph plus an off-chart displacement (negative control)",
         {"x1", "x2", "amplitude"}},
    };
    return catalog;
}

void apply_override(json& config, const std::string& assignment) {
    size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw InvalidInput("--set expects path.to.key=value, got '" + assignment + "'");
    }
    std::string path = assignment.substr(0, eq);
    std::string raw = assignment.substr(eq + 1);

    json value;
    try {
        value = json::parse(raw);
    } catch (const json::exception&) {
        value = raw;  // bare strings need no quotes
    }

    json* node = &config;
    size_t pos = 0;
    while (true) {
        size_t dot = path.find('.', pos);
        std::string key = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
        if (key.empty()) throw InvalidInput("--set: empty key segment in '" + path + "'");
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return;
        }
        if (!node->contains(key) || !(*node)[key].is_object()) (*node)[key] = json::object();
        node = &(*node)[key];
        pos = dot + 1;
    }
}

json load_config(const std::string& path, const std::vector<std::string>& overrides) {
    json config = json::object();
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw InvalidInput("cannot open config file '" + path + "'");
        try {
            in >> config;
        } catch (const json::exception& e) {
            throw InvalidInput("config '" + path + "': " + e.what());
        }
        if (!config.is_object()) throw InvalidInput("config '" + path + "': expected an object");
    }
    for (const auto& o : overrides) apply_override(config, o);
    return config;
}

}  // namespace rwlab
