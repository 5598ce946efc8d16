#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rwlab/classa.hpp"
#include "rwlab/families.hpp"

namespace rwlab {

/// Quadrature-defined minimal cylinder-type member, kept as raw parameters so
/// checks can also probe the profile ODE.
struct MinimalCylinderParams {
    WarpingFunction f;
    double c1, c2, c3;
    Rect domain;
};

/// Minimal rotational member kept as raw parameters (the spherical wrap checks
/// need to rebuild it with different curve curvatures).
struct MinimalRevolutionParams {
    WarpingFunction f;
    RevolutionInit init;
    Rect domain;
    double step = 1e-3;
};

/// Deliberately broken patch: a cylinder-type graph displaced by
/// (0, amplitude*sin(u+v), 0, 0), which destroys the chart orthogonality.
struct PerturbedCylinderSpec {
    CylinderFamilySpec base;
    double amplitude = 0.1;
};

using AnyFamilySpec = std::variant<CylinderFamilySpec, RevolutionFamilySpec, SphericalFamilySpec,
                                   EtaParallelSpec, MinimalCylinderParams,
                                   MinimalRevolutionParams, PerturbedCylinderSpec>;

struct SuiteFixture {
    std::string name;
    AnyFamilySpec spec;
    Grid grid;
};

/// Named checks of the suite (each certifies one statement of the underlying
/// classification; the anchor text in the report describes it neutrally).
std::vector<std::string> all_check_names();

struct SuiteSpec {
    std::vector<SuiteFixture> fixtures;
    std::vector<std::string> checks;           // empty = none; see default_suite()
    std::map<std::string, double> tolerances;  // per-check verdict override
    unsigned seed = 20240915;
};

/// Shipped fixture set + all checks.
SuiteSpec default_suite();

struct CheckReport {
    std::string check;
    std::string anchor;
    std::vector<ResidualReport> reports;  // one per (fixture, aspect)
    bool blocked = false;                 // no applicable fixture could be built
    std::string blocked_reason;
    bool pass = false;  // all reports verdict true and not blocked
};

struct SuiteReport {
    int schema_version = 1;
    unsigned seed = 0;
    std::vector<CheckReport> checks;
    bool pass = false;
    double wall_seconds = 0.0;  // informational; excluded from serialization
};

SuiteReport run_suite(const SuiteSpec& spec);

/// Six frame identities relating the connection coefficients, the normal
/// connection and the theta derivatives to the second fundamental form.
ResidualReport lemma31_check(const ImmersionPatch& patch, const Grid& grid,
                             double tol = kDefaultVerdictTol);

/// Builds the immersion patch for any fixture spec (throws on inadmissible
/// parameters, which run_suite converts to "blocked").
FamilyPatch build_fixture(const AnyFamilySpec& spec);

nlohmann::ordered_json residual_report_json(const ResidualReport& report,
                                            bool include_rows = false);
nlohmann::ordered_json suite_report_json(const SuiteReport& report);

}  // namespace rwlab
