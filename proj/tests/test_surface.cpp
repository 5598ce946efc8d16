#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rwlab/errors.hpp"
#include "rwlab/families.hpp"
#include "helpers.hpp"

using namespace rwlab;
using namespace rwlab::testing;

TEST_CASE("jet: plane patch has linear structure") {
    FamilyPatch plane = build_cylinder(plane_spec());
    SurfaceJet2 j = plane.patch.jet(0.2, -0.1);
    CHECK(j.du.t == doctest::Approx(1.0));
    CHECK(j.du.bar[0] == doctest::Approx(std::sqrt(2.0)));
    CHECK(j.du.bar[2] == doctest::Approx(0.0));
    CHECK(j.dv.bar[2] == doctest::Approx(1.0));
    for (const AmbientVector* d : {&j.duu, &j.duv, &j.dvv}) {
        CHECK(std::abs(d->t) < 1e-14);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(d->bar[k]) < 1e-14);
    }
}

TEST_CASE("jet: rotational patch phi_v at v=0") {
    RevolutionFamilySpec spec = cone_spec();
    spec.domain = Rect{0.5, 1.5, -0.5, 0.5};
    FamilyPatch cone = build_revolution(spec);
    SurfaceJet2 j = cone.patch.jet(1.0, 0.0);
    CHECK(j.dv.t == doctest::Approx(0.0));
    CHECK(j.dv.bar[0] == doctest::Approx(0.0));
    CHECK(j.dv.bar[1] == doctest::Approx(2.0));  // zeta1(1) = 2
    CHECK(j.dv.bar[2] == doctest::Approx(0.0));
}

TEST_CASE("jet: analytic vs numeric on family patches") {
    for (const FamilyPatch& fp : {build_cylinder(generic_cylinder_spec()),
                                  build_revolution(generic_revolution_spec())}) {
        Grid g = coarse_grid(fp.patch.domain());
        for (int i = 1; i + 1 < g.nu; ++i) {
            for (int j = 1; j + 1 < g.nv; ++j) {
                SurfaceJet2 a = fp.patch.jet(g.u(i), g.v(j));
                SurfaceJet2 n = fp.patch.jet_numeric(g.u(i), g.v(j));
                auto close = [](const AmbientVector& x, const AmbientVector& y) {
                    CHECK(std::abs(x.t - y.t) < 1e-7);
                    for (int k = 0; k < 3; ++k) CHECK(std::abs(x.bar[k] - y.bar[k]) < 1e-7);
                };
                close(a.du, n.du);
                close(a.dv, n.dv);
                close(a.duu, n.duu);
                close(a.duv, n.duv);
                close(a.dvv, n.dvv);
            }
        }
    }
}

TEST_CASE("induced metric: canonical chart closed form and plane values") {
    FamilyPatch plane = build_cylinder(plane_spec());
    InducedMetric m = induced_metric(plane.patch.ambient(), plane.patch.jet(0.1, 0.2));
    CHECK(m.g11 == doctest::Approx(1.0));  // -1 + f^2 V^2 = -1 + 2
    CHECK(m.g12 == doctest::Approx(0.0));
    CHECK(m.g22 == doctest::Approx(1.0));

    FamilyPatch cyl = build_cylinder(generic_cylinder_spec());
    double u = 0.15, v = -0.2;
    SurfaceJet2 j = cyl.patch.jet(u, v);
    InducedMetric mc = induced_metric(cyl.patch.ambient(), j);
    const WarpingFunction& f = cyl.patch.ambient().warping();
    double Et = j.du.bar[0] * j.du.bar[0] + j.du.bar[1] * j.du.bar[1];
    CHECK(mc.g11 == doctest::Approx(-1.0 + f.value(u) * f.value(u) * Et).epsilon(1e-12));
    CHECK(mc.g12 == doctest::Approx(0.0));
    CHECK(mc.det() > 0.0);
}

TEST_CASE("induced metric: timelike direction rejected") {
    AmbientSpec flat(WarpingFunction::constant(1.0), 0);
    SurfaceJet2 j{};
    j.du = {1.0, {0.1, 0.0, 0.0}};  // timelike
    j.dv = {0.0, {0.0, 1.0, 0.0}};
    CHECK_THROWS_AS(induced_metric(flat, j), CausalDegeneracyError);
}

TEST_CASE("adapted frame: plane theta and Gram matrix") {
    FamilyPatch plane = build_cylinder(plane_spec());
    AdaptedFrame fr = adapted_frame(plane.patch, 0.0, 0.0);
    CHECK(fr.theta == doctest::Approx(-std::asinh(1.0)));
    CHECK(fr.theta == doctest::Approx(-0.881374).epsilon(1e-5));

    const AmbientSpec& amb = plane.patch.ambient();
    AmbientPoint p = plane.patch.position(0.0, 0.0);
    const AmbientVector* e[4] = {&fr.e1, &fr.e2, &fr.e3, &fr.e4};
    double want[4] = {1.0, 1.0, -1.0, 1.0};
    for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < 4; ++k) {
            double g = metric(amb, p, *e[i], *e[k]);
            CHECK(g == doctest::Approx(i == k ? want[i] : 0.0).epsilon(1e-9));
        }
    }
    // d/dt = sinh(theta) e1 + cosh(theta) e3
    AmbientVector rec = std::sinh(fr.theta) * fr.e1 + std::cosh(fr.theta) * fr.e3;
    CHECK(rec.t == doctest::Approx(1.0).epsilon(1e-8));
    for (int k = 0; k < 3; ++k) CHECK(std::abs(rec.bar[k]) < 1e-8);
    CHECK(std::sinh(fr.theta) < 0.0);
}

TEST_CASE("adapted frame: canonical and generic routes agree") {
    for (const FamilyPatch& fp : {build_cylinder(generic_cylinder_spec()),
                                  build_revolution(generic_revolution_spec())}) {
        Grid g = coarse_grid(fp.patch.domain());
        for (int i = 0; i < g.nu; ++i) {
            for (int j = 0; j < g.nv; ++j) {
                AdaptedFrame a = adapted_frame(fp.patch, g.u(i), g.v(j));
                AdaptedFrame b = adapted_frame_generic(fp.patch, g.u(i), g.v(j));
                CHECK(a.theta == doctest::Approx(b.theta).epsilon(1e-8));
                for (int k = 0; k < 3; ++k) {
                    CHECK(a.e4.bar[k] == doctest::Approx(b.e4.bar[k]).epsilon(1e-6));
                }
            }
        }
    }
}

TEST_CASE("adapted frame: degenerate and slice cases throw") {
    // x1' = 1 makes f^2 V^2 - 1 = 0 identically: degenerate frame
    AmbientSpec flat(WarpingFunction::constant(1.0), 0);
    ImmersionPatch degenerate(
        flat, Rect{-0.5, 0.5, -0.5, 0.5},
        ImmersionPatch::PositionFn(
            [](double u, double v) { return AmbientPoint{u, {u, 0.0, v}}; }),
        false, Rect{-0.5, 0.5, -0.5, 0.5});
    CHECK_THROWS_AS(adapted_frame_generic(degenerate, 0.0, 0.0), NumericError);

    // slice surface {t = 0} x Q^3
    ImmersionPatch slice(flat, Rect{-0.5, 0.5, -0.5, 0.5},
                         ImmersionPatch::PositionFn([](double u, double v) {
                             return AmbientPoint{0.0, {u, v, 0.0}};
                         }),
                         false, Rect{-0.5, 0.5, -0.5, 0.5});
    CHECK_THROWS_AS(adapted_frame_generic(slice, 0.0, 0.0), SliceSurfaceError);
}

TEST_CASE("fundamental forms: totally geodesic plane") {
    FamilyPatch plane = build_cylinder(plane_spec());
    FundamentalData d = fundamental_forms(plane.patch, 0.1, -0.2);
    for (double h : {d.h3_11, d.h3_12, d.h3_22, d.h4_11, d.h4_12, d.h4_22, d.H3, d.H4}) {
        CHECK(std::abs(h) < 1e-9);
    }
    CHECK(d.mean_curvature_norm() < 1e-9);
}

TEST_CASE("fundamental forms: mean curvature sign convention and h symmetry") {
    FamilyPatch cone = build_revolution(cone_spec());
    Grid g = coarse_grid(cone.patch.domain());
    for (int i = 0; i < g.nu; ++i) {
        FundamentalData d = fundamental_forms(cone.patch, g.u(i), g.v(1));
        CHECK(d.H3 == doctest::Approx(-(d.h3_11 + d.h3_22) / 2.0).epsilon(1e-12));
        CHECK(d.H4 == doctest::Approx((d.h4_11 + d.h4_22) / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("theta derivatives: Lemma-style identities") {
    FamilyPatch cyl = build_cylinder(exp_cylinder_spec());
    Grid g = coarse_grid(cyl.patch.domain());
    const WarpingFunction& f = cyl.patch.ambient().warping();
    for (int i = 1; i + 1 < g.nu; ++i) {
        double u = g.u(i), v = g.v(2);
        auto [e1t, e2t] = theta_derivatives(cyl.patch, u, v);
        FundamentalData d = fundamental_forms(cyl.patch, u, v);
        AdaptedFrame fr = adapted_frame(cyl.patch, u, v);
        CHECK(std::abs(e2t - d.h3_12) < 1e-6);
        CHECK(std::abs(e1t - f.log_d1(u) * std::cosh(fr.theta) - d.h3_11) < 1e-6);
    }
}

TEST_CASE("warp restriction residual") {
    FamilyPatch constant = build_cylinder(plane_spec());
    CHECK(warp_restriction_residual(constant.patch, 0.1, 0.1) < 1e-12);

    FamilyPatch cyl = build_cylinder(exp_cylinder_spec());
    CHECK(warp_restriction_residual(cyl.patch, 0.05, 0.1) < 1e-7);

    RevolutionFamilySpec rev = generic_revolution_spec();
    FamilyPatch rp = build_revolution(rev);
    CHECK(warp_restriction_residual(rp.patch, 0.1, 0.5) < 1e-7);
}

TEST_CASE("shape-operator duality and normal-connection identities") {
    FamilyPatch rev = build_revolution(generic_revolution_spec());
    Grid g = coarse_grid(rev.patch.domain());
    for (int i = 0; i < g.nu; i += 2) {
        for (int j = 0; j < g.nv; j += 2) {
            FundamentalData d = fundamental_forms(rev.patch, g.u(i), g.v(j));
            AdaptedFrame fr = adapted_frame(rev.patch, g.u(i), g.v(j));
            double th = fr.theta;
            CHECK(std::abs(d.n34_e1 + d.h4_11 * std::tanh(th)) < 1e-6);
            CHECK(std::abs(d.n34_e2 + d.h4_12 * std::tanh(th)) < 1e-6);
        }
    }
}
