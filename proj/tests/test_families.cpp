#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rwlab/classa.hpp"
#include "rwlab/errors.hpp"
#include "rwlab/families.hpp"
#include "helpers.hpp"

using namespace rwlab;
using namespace rwlab::testing;

namespace {

void check_closed_vs_numeric(const FamilyPatch& fp, double tol) {
    REQUIRE(fp.closed_form_h.has_value());
    Grid g = standard_grid(fp.patch.domain());
    for (int i = 0; i < g.nu; ++i) {
        for (int j = 0; j < g.nv; ++j) {
            FundamentalData d = fundamental_forms(fp.patch, g.u(i), g.v(j));
            ClosedFormH h = (*fp.closed_form_h)(g.u(i), g.v(j));
            CAPTURE(fp.family);
            CAPTURE(g.u(i));
            CHECK(std::abs(d.h3_11 - h.h3_11) < tol);
            CHECK(std::abs(d.h3_12 - h.h3_12) < tol);
            CHECK(std::abs(d.h3_22 - h.h3_22) < tol);
            CHECK(std::abs(d.h4_11 - h.h4_11) < tol);
            CHECK(std::abs(d.h4_12 - h.h4_12) < tol);
            CHECK(std::abs(d.h4_22 - h.h4_22) < tol);
        }
    }
}

}  // namespace

TEST_CASE("cylinder: plane has vanishing h; fV = 2 member hits -2/sqrt(3)") {
    FamilyPatch plane = build_cylinder(plane_spec());
    ClosedFormH h = (*plane.closed_form_h)(0.1, 0.0);
    for (double x : {h.h3_11, h.h3_22, h.h4_11, h.h4_22}) CHECK(x == doctest::Approx(0.0));

    FamilyPatch cyl = build_cylinder(exp_cylinder_spec());
    for (double u : {-0.2, 0.0, 0.25}) {
        ClosedFormH e = (*cyl.closed_form_h)(u, 0.0);
        CHECK(e.h3_22 == doctest::Approx(-2.0 / std::sqrt(3.0)).epsilon(1e-10));
    }
}

TEST_CASE("cylinder and revolution: closed form vs numeric pipeline") {
    check_closed_vs_numeric(build_cylinder(plane_spec()), 1e-6);
    check_closed_vs_numeric(build_cylinder(exp_cylinder_spec()), 1e-6);
    check_closed_vs_numeric(build_cylinder(generic_cylinder_spec()), 1e-6);
    check_closed_vs_numeric(build_revolution(cone_spec()), 1e-6);
    check_closed_vs_numeric(build_revolution(generic_revolution_spec()), 1e-6);
}

TEST_CASE("revolution: cone closed-form values from first principles") {
    // independent hand computation on the cone (f = 1, zeta1 = 2u, V = 2):
    // e2 = (1/zeta1) d_v, nabla_{e2} e2 has base-normal component
    // -zeta1'/(zeta1 V sqrt(V^2 - 1)) against e3; h4 vanishes since zeta2' = 0
    FamilyPatch cone = build_revolution(cone_spec());
    for (double u : {0.6, 1.0, 1.4}) {
        ClosedFormH h = (*cone.closed_form_h)(u, 0.5);
        CHECK(h.h3_11 == doctest::Approx(0.0));
        CHECK(h.h3_22 == doctest::Approx(-1.0 / (2.0 * std::sqrt(3.0) * u)).epsilon(1e-12));
        CHECK(h.h4_11 == doctest::Approx(0.0));
        CHECK(h.h4_22 == doctest::Approx(0.0));
        FundamentalData d = fundamental_forms(cone.patch, u, 0.5);
        CHECK(d.h3_22 == doctest::Approx(h.h3_22).epsilon(1e-8));
    }
    // closed-form theta: sinh(theta) = -1/sqrt(3)
    CHECK((*cone.closed_form_theta)(1.0, 0.5) ==
          doctest::Approx(-std::asinh(1.0 / std::sqrt(3.0))));
}

TEST_CASE("family constructors reject inadmissible specs with named constraints") {
    WarpingFunction one = unit_warp();
    // not space-like: f^2 V^2 - 1 <= 0
    CHECK_THROWS_WITH_AS(
        build_cylinder({Profile::linear(0.5, 0.0), Profile::constant(0.0), one,
                        Rect{-0.5, 0.5, -0.5, 0.5}}),
        doctest::Contains("space-like"), DomainError);
    // zeta1 must stay positive
    CHECK_THROWS_WITH_AS(
        build_revolution({Profile::linear(2.0, 0.0), Profile::constant(0.0), one,
                          Rect{-1.5, -0.5, 0.0, 1.0}}),
        doctest::Contains("zeta1"), DomainError);
}

TEST_CASE("sphere curve: great circle and constant-curvature circle") {
    SphereFrame f0{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    SphereCurve great(Profile::constant(0.0), f0, 0.0, 0.0, 3.2, 1e-3);
    SphereFrame at_pi = great.eval(M_PI);
    CHECK(std::abs(at_pi.alpha[0] + 1.0) < 1e-8);
    CHECK(std::abs(at_pi.alpha[1]) < 1e-8);
    CHECK(std::abs(at_pi.alpha[2]) < 1e-8);

    // kappa = 1: circle of spherical radius with orbit distance 1/sqrt(2)
    // from the fixed axis w = (alpha0 + n0)/sqrt(2)
    SphereCurve small(Profile::constant(1.0), f0, 0.0, 0.0, 6.0, 1e-3);
    Vec3 w{1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0)};
    for (double v : {0.5, 2.0, 4.5}) {
        SphereFrame fr = small.eval(v);
        double along = fr.alpha[0] * w[0] + fr.alpha[1] * w[1] + fr.alpha[2] * w[2];
        double r2 = 0.0;
        for (int k = 0; k < 3; ++k) {
            double c = fr.alpha[k] - along * w[k];
            r2 += c * c;
        }
        CHECK(std::sqrt(r2) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
        // frame stays orthonormal
        double n2 = fr.alpha[0] * fr.alpha[0] + fr.alpha[1] * fr.alpha[1] +
                    fr.alpha[2] * fr.alpha[2];
        CHECK(n2 == doctest::Approx(1.0).epsilon(1e-8));
    }
    CHECK(small.frame_defect() < 1e-8);

    SphereFrame bad{{1.0, 0.0, 0.0}, {0.2, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    CHECK_THROWS_AS(SphereCurve(Profile::constant(0.0), bad, 0.0, 0.0, 1.0, 1e-3),
                    InvalidInput);
}

TEST_CASE("spherical family: theta closed form and canonical chart") {
    SphericalPatch sp = build_spherical(generic_spherical_spec());
    Grid g = coarse_grid(sp.patch().domain());
    for (int i = 0; i < g.nu; ++i) {
        double u = g.u(i);
        AdaptedFrame fr = adapted_frame(sp.patch(), u, g.v(3));
        CHECK(std::abs(std::sinh(fr.theta) - sp.sinh_theta(u)) < 1e-7);
    }
    ResidualReport r = class_a_residuals(sp.patch(), standard_grid(sp.patch().domain()));
    CHECK(r.verdict);
}

TEST_CASE("spherical family: psi system decouples for kappa = 0") {
    SphericalFamilySpec spec = generic_spherical_spec();
    spec.kappa = Profile::constant(0.0);
    SphericalPatch sp = build_spherical(spec);
    // psi2' = -kappa psi1 = 0: phi3 separates as C(u) + const
    double c0 = sp.phi3(0.1, 0.0) - sp.phi3(0.0, 0.0);
    for (double v : {0.1, 0.2, 0.3}) {
        CHECK(sp.phi3(0.1, v) - sp.phi3(0.0, v) == doctest::Approx(c0).epsilon(1e-9));
    }
}

TEST_CASE("minimal cylinder: quadrature solution, ODE residual, flat case") {
    WarpingFunction one = unit_warp();
    CylinderFamilySpec flat =
        solve_minimal_cylinder(one, 0.0, 0.7, -0.75, Rect{0.0, 1.0, -0.5, 0.5});
    CHECK(flat.x1.d1(0.5) == doctest::Approx(2.0).epsilon(1e-10));
    FamilyPatch fp = build_cylinder(flat);
    CHECK(minimality_residual(fp.patch, coarse_grid(fp.patch.domain())).max_residual() < 1e-9);

    WarpingFunction fe = WarpingFunction::exponential(1.0);
    CylinderFamilySpec min =
        solve_minimal_cylinder(fe, 0.3, 0.1, -0.5 * std::exp(-4.0), Rect{0.0, 1.0, -0.5, 0.5});
    FamilyPatch mp = build_cylinder(min);
    ResidualReport r = minimality_residual(mp.patch, standard_grid(mp.patch.domain()));
    CHECK(r.max_residual() < 1e-5);
    // profile ODE along the solution
    for (double u : {0.1, 0.5, 0.9}) {
        double fv = fe.value(u), fp1 = fe.d1(u);
        double xp = min.x1.d1(u), xpp = min.x1.d2(u);
        double res = fv * xpp - 2.0 * fv * fv * (1.0 + 0.3 * 0.3) * fp1 * xp * xp * xp +
                     3.0 * fp1 * xp;
        CHECK(std::abs(res) < 1e-6);
    }

    CHECK_THROWS_WITH_AS(
        solve_minimal_cylinder(one, 0.0, 0.0, 0.5, Rect{0.0, 1.0, -0.5, 0.5}),
        doctest::Contains("c3 < 0"), DomainError);
}

TEST_CASE("minimal revolution: catenoid oracle for f = 1, zeta2' = 0") {
    // with f = 1 and zeta2' = 0 the profile system becomes
    // zeta1'' = (zeta1'^2 - 1)/zeta1, solved exactly by zeta1 = A sinh((u-u0)/A)
    WarpingFunction one = unit_warp();
    RevolutionInit init{1.0, 0.0, std::sqrt(2.0), 0.0};
    MinimalRevolutionResult res =
        solve_minimal_revolution(one, init, Rect{0.0, 0.8, 0.1, 0.9});
    double u0 = -std::asinh(1.0);
    for (double u : {0.0, 0.2, 0.4, 0.6, 0.8}) {
        CHECK(res.spec.zeta1.value(u) == doctest::Approx(std::sinh(u - u0)).epsilon(1e-9));
        CHECK(res.spec.zeta2.value(u) == doctest::Approx(0.0));
    }
    FamilyPatch fp = build_revolution(res.spec);
    CHECK(minimality_residual(fp.patch, standard_grid(fp.patch.domain())).max_residual() <
          1e-5);
}

TEST_CASE("minimal revolution: initial accelerations and zeta2' conservation for f = 1") {
    // from the profile system: zeta1'' = (f^2 V^2 - 1)/(f^2 zeta1),
    // zeta2'' = 0 when f' = 0; with V^2 = 3, zeta1 = 1 this gives 2 and 0
    WarpingFunction one = unit_warp();
    RevolutionInit init{1.0, 0.0, std::sqrt(2.0), 1.0};
    MinimalRevolutionResult res =
        solve_minimal_revolution(one, init, Rect{0.0, 0.8, 0.1, 0.9});
    CHECK(res.spec.zeta1.d2(0.0) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(res.spec.zeta2.d2(0.0) == doctest::Approx(0.0));
    for (double u : {0.2, 0.5, 0.8}) {
        CHECK(res.spec.zeta2.d1(u) == doctest::Approx(1.0).epsilon(1e-10));
    }
    FamilyPatch fp = build_revolution(res.spec);
    CHECK(minimality_residual(fp.patch, standard_grid(fp.patch.domain())).max_residual() <
          1e-5);

    RevolutionInit bad{1.0, 0.0, 0.5, 0.5};  // f^2 V^2 - 1 < 0
    CHECK_THROWS_AS(solve_minimal_revolution(one, bad, Rect{0.0, 0.8, 0.1, 0.9}),
                    InvalidInput);
}

TEST_CASE("revolution wrapped as spherical family: kappa = 0 reproduces positions") {
    RevolutionFamilySpec rev = generic_revolution_spec();
    FamilyPatch direct = build_revolution(rev);
    SphericalFamilySpec wrap = revolution_as_spherical(rev, Profile::constant(0.0));
    SphericalPatch sp = build_spherical(wrap);
    Grid g = coarse_grid(rev.domain);
    for (int i = 0; i < g.nu; ++i) {
        for (int j = 0; j < g.nv; ++j) {
            AmbientPoint a = direct.patch.position(g.u(i), g.v(j));
            AmbientPoint b = sp.patch().position(g.u(i), g.v(j));
            CHECK(a.t == doctest::Approx(b.t));
            for (int k = 0; k < 3; ++k) {
                CHECK(a.q[k] == doctest::Approx(b.q[k]).epsilon(1e-7));
            }
        }
    }
}

TEST_CASE("eta-parallel: cylinder quadrature, constant theta, constraint errors") {
    WarpingFunction fe = WarpingFunction::exponential(1.0);
    Rect dom{0.0, 0.8, -0.4, 0.4};
    FamilyPatch eta =
        build_eta_parallel(EtaParallelSpec{EtaParallelCylinderSpec{2.0, 0.0, 0.0, fe, dom}});
    // x1 = 2(e^{-u0} - e^{-u}) with u0 = 0
    for (double u : {0.2, 0.5}) {
        AmbientPoint p = eta.patch.position(u, 0.0);
        CHECK(p.q[0] == doctest::Approx(2.0 * (1.0 - std::exp(-u))).epsilon(1e-9));
    }
    double t0 = adapted_frame(eta.patch, 0.1, 0.0).theta;
    CHECK(t0 == doctest::Approx(-std::asinh(1.0 / std::sqrt(3.0))).epsilon(1e-8));
    for (double u : {0.3, 0.6}) {
        CHECK(adapted_frame(eta.patch, u, 0.2).theta == doctest::Approx(t0).epsilon(1e-9));
    }

    CHECK_THROWS_WITH_AS(
        build_eta_parallel(EtaParallelSpec{EtaParallelCylinderSpec{0.5, 0.5, 0.0, fe, dom}}),
        doctest::Contains("c1^2 + c2^2 > 1"), DomainError);

    SphereFrame f0{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    WarpingFunction fc = WarpingFunction::cosh_plus(1.0, 0.0);
    EtaParallelSphericalSpec sph{2.0, 0.2, Profile::constant(1.0), Profile::constant(0.3),
                                 f0, -2.5, 0.0, fc, Rect{0.0, 0.4, 0.0, 0.3}};
    FamilyPatch esp = build_eta_parallel(EtaParallelSpec{sph});
    ResidualReport r = eta_parallel_residuals(esp.patch, standard_grid(esp.patch.domain()),
                                              1e-6);
    CHECK(r.verdict);

    sph.c = 0.9;
    CHECK_THROWS_AS(build_eta_parallel(EtaParallelSpec{sph}), DomainError);
}

TEST_CASE("base principal curvatures: mean-curvature relation on the wrap") {
    RevolutionFamilySpec rev = generic_revolution_spec();
    SphericalPatch sp = build_spherical(revolution_as_spherical(rev, Profile::constant(0.0)));
    const WarpingFunction& f = sp.spec().f;
    Grid g = coarse_grid(sp.patch().domain());
    for (int i = 1; i + 1 < g.nu; ++i) {
        double u = g.u(i), v = g.v(2);
        auto [k1, k2] = sp.base_principals(u, v);
        FundamentalData d = fundamental_forms(sp.patch(), u, v);
        double fv = f.value(u), R = sp.spec().R.value(u);
        double want = fv * R * R * k1 / (-1.0 + fv * fv * R * R) + k2 / fv;
        CHECK(std::abs((d.h4_11 + d.h4_22) - want) < 1e-5);
    }
}
