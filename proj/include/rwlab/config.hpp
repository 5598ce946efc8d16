#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rwlab/harness.hpp"

namespace rwlab {

// JSON schema of one run configuration (shared by the CLI and the bindings):
//   ambient:    { warping: {kind, a, b|p, interval?: [lo, hi]}, c: 0 }
//   family:     { kind, ...kind-specific parameters... }
//   grid:       { u0, u1, nu, v0, v1, nv }
//   checks:     [predicate names]            (check command)
//   suite:      { checks?: [...], tolerances?: {name: tol}, seed? }
//   tolerances: { predicate: tol }
//   output:     { mesh?, metadata?, report? }
//   columns:    "basic" | "extended"

WarpingFunction parse_warping(const nlohmann::json& j);
Profile parse_profile(const nlohmann::json& j);
Grid parse_grid(const nlohmann::json& j);
SphereFrame parse_frame(const nlohmann::json& j);

/// Family spec from config: the `family` object plus the ambient warping and
/// the grid rectangle (families own their domain).
AnyFamilySpec parse_family(const nlohmann::json& family, const WarpingFunction& f,
                           const Rect& domain);

/// SuiteSpec from the `suite` object: shipped fixtures, optional check subset,
/// tolerance overrides and seed.
SuiteSpec parse_suite(const nlohmann::json& suite);

struct FamilyInfo {
    std::string name;
    std::string description;
    std::vector<std::string> parameters;
};

const std::vector<FamilyInfo>& family_catalog();

/// Applies one `path.to.key=value` override in place; the value is parsed as
/// JSON when possible, otherwise taken as a string.
void apply_override(nlohmann::json& config, const std::string& assignment);

/// Reads the config file (missing path => empty object) and applies overrides.
nlohmann::json load_config(const std::string& path, const std::vector<std::string>& overrides);

}  // namespace rwlab
