#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rwlab/config.hpp"
#include "rwlab/errors.hpp"

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerdictFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericError = 3;

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw rwlab::InvalidInput("cannot write '" + tmp + "'");
        out << content;
        if (!out) throw rwlab::InvalidInput("write to '" + tmp + "' failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw rwlab::InvalidInput("cannot move '" + tmp + "' to '" + path + "'");
    }
}

std::string output_path(const json& config, const char* key, const char* fallback) {
    if (config.contains("output") && config["output"].contains(key)) {
        return config["output"][key].get<std::string>();
    }
    return fallback;
}

rwlab::WarpingFunction config_warping(const json& config) {
    if (!config.contains("ambient") || !config["ambient"].contains("warping")) {
        throw rwlab::InvalidInput("config needs ambient.warping");
    }
    int c = config["ambient"].contains("c") ? config["ambient"]["c"].get<int>() : 0;
    if (c != 0) {
        throw rwlab::InvalidInput("family charts are defined over the flat base (ambient.c = 0)");
    }
    return rwlab::parse_warping(config["ambient"]["warping"]);
}

rwlab::FamilyPatch config_patch(const json& config, rwlab::Grid& grid_out) {
    if (!config.contains("family")) throw rwlab::InvalidInput("config needs a family object");
    if (!config.contains("grid")) throw rwlab::InvalidInput("config needs a grid object");
    rwlab::Grid grid = rwlab::parse_grid(config["grid"]);
    rwlab::Rect domain{grid.u0, grid.u1, grid.v0, grid.v1};
    rwlab::AnyFamilySpec spec =
        rwlab::parse_family(config["family"], config_warping(config), domain);
    grid_out = grid;
    return rwlab::build_fixture(spec);
}

double tol_for(const json& config, const std::string& name, double fallback) {
    if (config.contains("tolerances") && config["tolerances"].contains(name)) {
        double tol = config["tolerances"][name].get<double>();
        if (!(tol > 0.0)) throw rwlab::InvalidInput("tolerance for '" + name + "' must be > 0");
        return tol;
    }
    return fallback;
}

int cmd_generate(const json& config, const std::string& project) {
    rwlab::Grid grid{};
    rwlab::FamilyPatch fp = config_patch(config, grid);

    bool extended = config.value("columns", std::string("basic")) == "extended";
    std::vector<std::string> coords = {"t", "x", "y", "z"};
    if (!project.empty()) {
        coords.clear();
        std::stringstream ss(project);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok != "t" && tok != "x" && tok != "y" && tok != "z") {
                throw rwlab::InvalidInput("--project: unknown coordinate '" + tok +
                                          "' (use t,x,y,z)");
            }
            coords.push_back(tok);
        }
        if (coords.size() != 3) throw rwlab::InvalidInput("--project expects 3 coordinates");
    }

    std::ostringstream csv;
    csv << "u,v";
    for (const auto& c : coords) csv << ',' << c;
    if (extended) csv << ",theta,h311,h312,h322,h411,h412,h422,H3,H4";
    csv << '\n';

    for (int i = 0; i < grid.nu; ++i) {
        for (int j = 0; j < grid.nv; ++j) {
            double u = grid.u(i), v = grid.v(j);
            rwlab::AmbientPoint p = fp.patch.position(u, v);
            double comp[4] = {p.t, p.q[0], p.q[1], p.q[2]};
            csv << fmt(u) << ',' << fmt(v);
            for (const auto& c : coords) {
                int idx = c == "t" ? 0 : c == "x" ? 1 : c == "y" ? 2 : 3;
                csv << ',' << fmt(comp[idx]);
            }
            if (extended) {
                rwlab::AdaptedFrame fr = rwlab::adapted_frame(fp.patch, u, v);
                rwlab::FundamentalData d = rwlab::fundamental_forms(fp.patch, u, v);
                for (double x : {fr.theta, d.h3_11, d.h3_12, d.h3_22, d.h4_11, d.h4_12, d.h4_22,
                                 d.H3, d.H4}) {
                    csv << ',' << fmt(x);
                }
            }
            csv << '\n';
        }
    }

    ordered_json meta;
    meta["schema_version"] = 1;
    meta["family"] = fp.family;
    meta["flags"] = fp.flags;
    meta["rows"] = grid.size();
    meta["columns"] = extended ? "extended" : "basic";
    if (!project.empty()) meta["project"] = project;
    meta["resolved_config"] = config;

    write_atomic(output_path(config, "mesh", "mesh.csv"), csv.str());
    write_atomic(output_path(config, "metadata", "mesh.meta.json"), meta.dump(2) + "\n");
    std::cout << "wrote " << grid.size() << " rows (" << fp.family << ")\n";
    return kExitPass;
}

int cmd_check(const json& config) {
    rwlab::Grid grid{};
    rwlab::FamilyPatch fp = config_patch(config, grid);

    std::vector<std::string> predicates;
    if (config.contains("checks")) predicates = config["checks"].get<std::vector<std::string>>();

    ordered_json out;
    out["schema_version"] = 1;
    out["family"] = fp.family;
    out["predicates"] = ordered_json::array();
    bool pass = true;
    for (const auto& name : predicates) {
        double tol = tol_for(config, name, rwlab::kDefaultVerdictTol);
        rwlab::ResidualReport r;
        if (name == "classa") {
            r = rwlab::class_a_residuals(fp.patch, grid, tol);
        } else if (name == "minimality") {
            r = rwlab::minimality_residual(fp.patch, grid, tol);
        } else if (name == "eta_parallel") {
            r = rwlab::eta_parallel_residuals(fp.patch, grid, tol);
        } else if (name == "eigen_e3" || name == "eigen_e4" || name == "eigen_eta") {
            rwlab::NormalLeg leg = name == "eigen_e3"  ? rwlab::NormalLeg::E3
                                   : name == "eigen_e4" ? rwlab::NormalLeg::E4
                                                        : rwlab::NormalLeg::Eta;
            r = rwlab::eigen_residual(fp.patch, grid, leg, tol);
        } else if (name == "lemma31") {
            r = rwlab::lemma31_check(fp.patch, grid, tol);
        } else {
            throw rwlab::InvalidInput("check: unknown predicate '" + name + "'");
        }
        if (r.name.empty()) r.name = name;
        pass = pass && r.verdict;
        out["predicates"].push_back(rwlab::residual_report_json(r));
    }
    out["pass"] = pass;
    write_atomic(output_path(config, "report", "check.json"), out.dump(2) + "\n");
    std::cout << (pass ? "pass" : "FAIL") << " (" << predicates.size() << " predicate"
              << (predicates.size() == 1 ? "" : "s") << ")\n";
    return pass ? kExitPass : kExitVerdictFailure;
}

int cmd_verify(const json& config) {
    rwlab::SuiteSpec spec =
        rwlab::parse_suite(config.contains("suite") ? config["suite"] : json());
    rwlab::SuiteReport report = rwlab::run_suite(spec);

    for (const auto& c : report.checks) {
        double worst = 0.0;
        for (const auto& r : c.reports) worst = std::max(worst, r.max_residual());
        std::cout << (c.blocked ? "blocked" : c.pass ? "pass   " : "FAIL   ") << ' ' << c.check
                  << "  max=" << fmt(worst);
        if (c.blocked) std::cout << "  (" << c.blocked_reason << ')';
        std::cout << '\n';
    }
    std::cout << (report.pass ? "suite pass" : "suite FAIL") << " in "
              << fmt(report.wall_seconds) << " s\n";

    write_atomic(output_path(config, "report", "verify.json"),
                 rwlab::suite_report_json(report).dump(2) + "\n");
    return report.pass ? kExitPass : kExitVerdictFailure;
}

int cmd_list_families() {
    for (const auto& f : rwlab::family_catalog()) {
        std::cout << f.name << "\n    " << f.description << "\n    parameters:";
        for (const auto& p : f.parameters) std::cout << ' ' << p;
        std::cout << "\n";
    }
    return kExitPass;
}

int error_record(const char* type, const std::string& message, int code) {
    ordered_json err;
    err["error"] = message;
    err["type"] = type;
    std::cerr << err.dump() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"space-like surface families in warped-product spacetimes"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--set", overrides, "dotted-path override, e.g. grid.nu=64");

    std::string project;
    auto* gen = app.add_subcommand("generate", "sample a family patch to CSV");
    gen->add_option("--project", project, "emit 3 coordinate columns, e.g. t,x,y");
    auto* chk = app.add_subcommand("check", "run predicates on a configured patch");
    auto* ver = app.add_subcommand("verify", "run the verification suite");
    auto* lst = app.add_subcommand("list-families", "describe the family catalog");
    for (auto* sub : {gen, chk, ver, lst}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        json config = rwlab::load_config(config_path, overrides);
        if (gen->parsed()) return cmd_generate(config, project);
        if (chk->parsed()) return cmd_check(config);
        if (ver->parsed()) return cmd_verify(config);
        if (lst->parsed()) return cmd_list_families();
    } catch (const rwlab::DomainError& e) {
        return error_record("domain", e.what(), kExitConfigError);
    } catch (const rwlab::NumericError& e) {
        return error_record("numeric", e.what(), kExitNumericError);
    } catch (const std::exception& e) {
        return error_record("internal", e.what(), kExitNumericError);
    }
    return kExitConfigError;
}
