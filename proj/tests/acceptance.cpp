// Acceptance runner: one line per criterion, exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "rwlab/config.hpp"
#include "rwlab/harness.hpp"
#include "rwlab/numerics.hpp"

using namespace rwlab;

namespace {

int g_failures = 0;

void criterion(int n, const std::string& label, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s — %s (%s)\n", n, ok ? "pass" : "FAIL", label.c_str(),
                detail.c_str());
    if (!ok) ++g_failures;
}

struct Timed {
    SuiteReport report;
    double seconds;
};

Timed run_checks(std::vector<std::string> checks) {
    SuiteSpec spec = default_suite();
    spec.checks = std::move(checks);
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport r = run_suite(spec);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(r), s};
}

double suite_max(const SuiteReport& r) {
    double m = 0.0;
    for (const auto& c : r.checks) {
        for (const auto& rep : c.reports) m = std::max(m, rep.max_residual());
    }
    return m;
}

char buf_storage[256];
std::string fmt(const char* f, ...) {
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf_storage, sizeof buf_storage, f, ap);
    va_end(ap);
    return buf_storage;
}

void run_1_connection() {
    Timed t = run_checks({"lemma21"});
    criterion(1, "connection decomposition, 1000 pts x kind x curvature @1e-8",
              t.report.pass && t.seconds < 5.0,
              fmt("max=%.3g, %.2fs", suite_max(t.report), t.seconds));
}

void run_2_closed_forms() {
    Timed t = run_checks({"eq45", "eq412"});
    int fixtures = 0;
    for (const auto& c : t.report.checks) fixtures += static_cast<int>(c.reports.size());
    criterion(2, "closed-form h tables vs numeric pipeline @1e-6",
              t.report.pass && fixtures >= 6 && t.seconds < 10.0,
              fmt("max=%.3g over %d fixtures, %.2fs", suite_max(t.report), fixtures, t.seconds));
}

void run_3_frame_identities() {
    Timed t = run_checks({"lemma31"});
    size_t fixtures = t.report.checks.empty() ? 0 : t.report.checks[0].reports.size();
    criterion(3, "six frame identities on every shipped fixture @1e-5",
              t.report.pass && fixtures >= 5,
              fmt("max=%.3g over %zu fixtures", suite_max(t.report), fixtures));
}

void run_4_certification() {
    Timed t = run_checks({"prop32", "thm44", "cor34"});
    FamilyPatch base = build_fixture(AnyFamilySpec{CylinderFamilySpec{
        Profile::linear(1.2, 0.0), Profile::trig(0.2, 1.0, 0.0, 0.0),
        WarpingFunction::cosh_plus(1.0, 0.5), Rect{-0.4, 0.4, -0.4, 0.4}}});
    ImmersionPatch broken = base.patch.perturbed([](double u, double v) {
        return AmbientVector{0.0, {0.1 * std::sin(u + v), 0.0, 0.0}};
    });
    ResidualReport r = class_a_residuals(broken, Grid{-0.4, 0.4, 32, -0.4, 0.4, 32});
    criterion(4, "class certification passes; perturbed patch fails above 1e-3",
              t.report.pass && !r.verdict && r.max_residual() > 1e-3,
              fmt("families max=%.3g, perturbed max=%.3g", suite_max(t.report),
                  r.max_residual()));
}

void run_5_minimality() {
    Timed t = run_checks({"prop45", "prop48", "lemma47", "thm49"});
    // direct curvature injection: the minimal rotational solution wrapped over
    // a curved sphere curve must lose minimality
    WarpingFunction one = WarpingFunction::constant(1.0);
    MinimalRevolutionResult res = solve_minimal_revolution(
        one, RevolutionInit{1.0, 0.0, std::sqrt(2.0), 1.0}, Rect{0.0, 0.8, 0.1, 0.9});
    SphericalPatch injected =
        build_spherical(revolution_as_spherical(res.spec, Profile::constant(1.0)));
    ResidualReport inj = minimality_residual(
        injected.patch(), Grid::over(res.spec.domain, 16, 16), 1.0);
    criterion(5, "minimal solutions @1e-5; curvature injection exceeds 1e-3",
              t.report.pass && inj.stat("H_norm").max > 1e-3,
              fmt("suite max=%.3g, injected |H|=%.3g", suite_max(t.report),
                  inj.stat("H_norm").max));
}

void run_6_eta_parallel() {
    Timed t = run_checks({"lemma51", "thm52"});
    // constant theta on both parallel-eta variants
    double spread = 0.0;
    for (const auto& fx : default_suite().fixtures) {
        const auto* eta = std::get_if<EtaParallelSpec>(&fx.spec);
        if (!eta) continue;
        FamilyPatch fp = build_fixture(fx.spec);
        double lo = 1e300, hi = -1e300, sum = 0.0;
        std::vector<double> thetas;
        for (int i = 0; i < fx.grid.nu; ++i) {
            for (int j = 0; j < fx.grid.nv; ++j) {
                double th = adapted_frame(fp.patch, fx.grid.u(i), fx.grid.v(j)).theta;
                thetas.push_back(th);
                lo = std::min(lo, th);
                hi = std::max(hi, th);
                sum += th;
            }
        }
        double mean = sum / static_cast<double>(thetas.size());
        spread = std::max(spread, std::max(hi - mean, mean - lo));
    }
    criterion(6, "parallel-eta residuals @1e-6 with constant theta @1e-7",
              t.report.pass && spread < 1e-7,
              fmt("suite max=%.3g, theta spread=%.3g", suite_max(t.report), spread));
}

void run_7_convergence() {
    // RK4 on the sphere-curve frame system with constant curvature 1; the
    // exact orbit is a circle about w = (alpha0 + n0)/sqrt(2)
    SphereFrame f0{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    auto exact = [](double v) {
        double om = std::sqrt(2.0);
        Vec3 w{0.5, 0.0, 0.5}, beta{0.5, 0.0, -0.5}, tb{0.0, 1.0 / om, 0.0};
        Vec3 a;
        for (int k = 0; k < 3; ++k) {
            a[k] = w[k] + std::cos(om * v) * beta[k] + std::sin(om * v) * tb[k];
        }
        return a;
    };
    std::vector<double> rk_err;
    for (double h : {0.2, 0.1, 0.05, 0.025}) {
        SphereCurve curve(Profile::constant(1.0), f0, 0.0, 0.0, 1.0, h, false);
        Vec3 got = curve.eval(1.0).alpha, want = exact(1.0);
        double e = 0.0;
        for (int k = 0; k < 3; ++k) e = std::max(e, std::abs(got[k] - want[k]));
        rk_err.push_back(e);
    }
    bool rk_ok = true;
    for (size_t i = 1; i < rk_err.size(); ++i) {
        double ratio = rk_err[i - 1] / rk_err[i];
        rk_ok = rk_ok && ratio > 8.0 && ratio < 32.0;
    }

    // composite Simpson against a closed-form integral
    auto g = [](double x) { return std::exp(3.0 * x); };
    double exact_int = (std::exp(3.0) - 1.0) / 3.0;
    std::vector<double> sp_err;
    for (int n : {8, 16, 32, 64}) {
        sp_err.push_back(std::abs(simpson(g, 0.0, 1.0, n) - exact_int));
    }
    bool sp_ok = true;
    for (size_t i = 1; i < sp_err.size(); ++i) {
        double ratio = sp_err[i - 1] / sp_err[i];
        sp_ok = sp_ok && ratio > 8.0 && ratio < 32.0;
    }
    criterion(7, "RK4 and Simpson are fourth order across three halvings", rk_ok && sp_ok,
              fmt("rk4 ratios %.1f/%.1f/%.1f, simpson %.1f/%.1f/%.1f", rk_err[0] / rk_err[1],
                  rk_err[1] / rk_err[2], rk_err[2] / rk_err[3], sp_err[0] / sp_err[1],
                  sp_err[1] / sp_err[2], sp_err[2] / sp_err[3]));
}

void run_8_determinism() {
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport a = run_suite(default_suite());
    double first = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    SuiteReport b = run_suite(default_suite());
    std::string ja = suite_report_json(a).dump(2);
    std::string jb = suite_report_json(b).dump(2);
    criterion(8, "byte-identical verify reports; full suite under 60 s",
              a.pass && ja == jb && first < 60.0,
              fmt("%zu bytes, %.2fs", ja.size(), first));
}

}  // namespace

int main() {
    run_1_connection();
    run_2_closed_forms();
    run_3_frame_identities();
    run_4_certification();
    run_5_minimality();
    run_6_eta_parallel();
    run_7_convergence();
    run_8_determinism();
    std::printf("%d/8 criteria passed\n", 8 - g_failures);
    return g_failures;
}
