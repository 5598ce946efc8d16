#pragma once

#include <string>
#include <vector>

#include "rwlab/surface.hpp"

namespace rwlab {

struct Grid {
    double u0, u1;
    int nu;
    double v0, v1;
    int nv;

    double u(int i) const { return nu < 2 ? u0 : u0 + (u1 - u0) * i / (nu - 1); }
    double v(int j) const { return nv < 2 ? v0 : v0 + (v1 - v0) * j / (nv - 1); }
    int size() const { return nu * nv; }

    static Grid over(const Rect& r, int nu, int nv) { return {r.u0, r.u1, nu, r.v0, r.v1, nv}; }
    Grid refined() const { return {u0, u1, 2 * nu, v0, v1, 2 * nv}; }
};

/// Per-residual summary over a grid sweep.
struct ResidualStat {
    double max = 0.0;
    double mean = 0.0;
    double argmax_u = 0.0;
    double argmax_v = 0.0;
};

/// Grid sweep of named residuals with verdict at tol_verdict. Rows where the
/// frame (or any prerequisite) failed carry the error text and are excluded
/// from the summaries; the verdict then reports the failure mask.
struct ResidualReport {
    std::string name;
    std::vector<std::string> residual_names;
    struct Row {
        double u, v;
        std::vector<double> values;
        bool ok = true;
        std::string error;
    };
    std::vector<Row> rows;
    std::vector<ResidualStat> stats;
    double tol_verdict = 1e-5;
    bool verdict = false;
    int failed_rows = 0;
    std::vector<std::string> flags;

    double max_residual() const;
    const ResidualStat& stat(const std::string& residual) const;

    /// Fills stats/verdict from the rows (compensated mean, fixed order).
    void finalize();
};

inline constexpr double kDefaultVerdictTol = 1e-5;

/// Point evaluator: a row of named residual values at (u, v).
using ResidualFn = std::vector<double> (*)(const ImmersionPatch&, double, double);

/// Shape-diagonality residuals: |h3_12|, |h4_12|, |e2(theta)|, |g~(nabla_perp_{e2} e4, e3)|
/// (and the Weingarten mirror |n34(e2)|); verdict over the first four.
ResidualReport class_a_residuals(const ImmersionPatch& patch, const Grid& grid,
                                 double tol = kDefaultVerdictTol);

/// |H3|, |H4| and ||H||; verdict over ||H||.
ResidualReport minimality_residual(const ImmersionPatch& patch, const Grid& grid,
                                   double tol = kDefaultVerdictTol);

/// eta-parallelism: |e1(theta)|, |e2(theta)|, |n34(e1)|, |n34(e2)| plus the
/// assembled |nabla_perp_X eta| for X = e1, e2.
ResidualReport eta_parallel_residuals(const ImmersionPatch& patch, const Grid& grid,
                                      double tol = kDefaultVerdictTol);

enum class NormalLeg { E3, E4, Eta };

/// ||A_xi T - (g(A_xi T, T)/g(T,T)) T|| per point.
ResidualReport eigen_residual(const ImmersionPatch& patch, const Grid& grid, NormalLeg normal,
                              double tol = kDefaultVerdictTol);

/// Generic sweep driver used by the verification harness as well.
ResidualReport sweep_residuals(
    const std::string& name, std::vector<std::string> residual_names, const Grid& grid,
    const std::function<std::vector<double>(double, double)>& eval, double tol);

}  // namespace rwlab
