#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rwlab/profile.hpp"
#include "rwlab/surface.hpp"

namespace rwlab {

/// Frame-basis second fundamental form produced by a family's closed-form
/// expressions (independent of the finite-difference pipeline).
struct ClosedFormH {
    double h3_11 = 0.0, h3_12 = 0.0, h3_22 = 0.0;
    double h4_11 = 0.0, h4_12 = 0.0, h4_22 = 0.0;
};

using ClosedFormHFn = std::function<ClosedFormH(double, double)>;

/// A constructed family member: the immersion patch plus whatever closed-form
/// side data the family carries.
struct FamilyPatch {
    std::string family;
    ImmersionPatch patch;
    std::optional<ClosedFormHFn> closed_form_h;
    std::optional<std::function<double(double, double)>> closed_form_theta;
    std::vector<std::string> flags;
};

// ---------------------------------------------------------------------------
// Cylinder-type graphs: phi(u, v) = (u, x1(u), x2(u), v), c = 0.

struct CylinderFamilySpec {
    Profile x1, x2;
    WarpingFunction f;
    Rect domain;
};

FamilyPatch build_cylinder(const CylinderFamilySpec& spec);

// ---------------------------------------------------------------------------
// Rotational graphs: phi(u, v) = (u, zeta1(u) cos v, zeta1(u) sin v, zeta2(u)).

struct RevolutionFamilySpec {
    Profile zeta1, zeta2;
    WarpingFunction f;
    Rect domain;
};

FamilyPatch build_revolution(const RevolutionFamilySpec& spec);

// ---------------------------------------------------------------------------
// Spherical-curve family: phi~(u, v) = phi1(v) alpha(v) + phi2(u, v) alpha'(v)
// + phi3(u, v) n(v) over a unit-speed curve alpha on S^2 with geodesic
// curvature kappa.

/// Orthonormal right-handed moving frame of a curve on the unit sphere.
struct SphereFrame {
    Vec3 alpha, alpha_d, n;
};

/// Dense output of the sphere-curve frame ODE
///   alpha' = T,  T' = kappa n - alpha,  n' = -kappa T,
/// integrated with RK4 and (optionally) re-orthonormalized each step.
class SphereCurve {
public:
    SphereCurve() = default;
    /// Initial frame given at v_init in [v_lo, v_hi]; integrates both ways on
    /// a uniform grid with node spacing <= step.
    SphereCurve(Profile kappa, SphereFrame initial, double v_init, double v_lo, double v_hi,
                double step, bool renormalize = true);

    SphereFrame eval(double v) const;
    const Profile& kappa() const { return kappa_; }

    /// Worst raw orthonormality drift seen at the nodes (before the per-step
    /// re-orthonormalization, when enabled).
    double frame_defect() const { return frame_defect_; }

private:
    Profile kappa_ = Profile::constant(0.0);
    std::array<HermiteSeries, 9> comp_;
    double frame_defect_ = 0.0;
};

struct SphericalFamilySpec {
    Profile kappa;        // geodesic curvature, function of v
    SphereFrame frame0;   // frame at v = domain.v0
    Profile phi1;         // alpha-coefficient, function of v
    Profile R;            // nonvanishing speed profile, function of u
    Profile tau0;         // angle profile, function of u
    double psi1_0 = 0.0;  // psi1(domain.v0)
    double psi2_0 = 0.0;  // psi2(domain.v0)
    WarpingFunction f;
    Rect domain;
    double ode_step = 1e-3;
    int quad_panels = 512;
};

/// Built spherical-family member. Keeps the separation caches so the base
/// surface's principal curvatures stay available in closed form.
class SphericalPatch {
public:
    SphericalPatch(SphericalFamilySpec spec);

    const ImmersionPatch& patch() const { return patch_; }
    FamilyPatch family_patch() const;

    double tau(double u, double v) const;
    double phi2(double u, double v) const;
    double phi3(double u, double v) const;
    double sinh_theta(double u) const;  // -1/sqrt(-1 + f(u)^2 R(u)^2)

    /// Principal curvatures (k1 along the profile direction, k2 along the
    /// curve direction) of the base surface in Q^3.
    std::pair<double, double> base_principals(double u, double v) const;

    const SphericalFamilySpec& spec() const;
    const SphereCurve& curve() const;

private:
    /// Separation caches; shared with the patch's jet closure.
    struct Cache {
        SphericalFamilySpec spec;
        SphereCurve curve;
        CumulativeIntegral s_int, c_int;   // S(u), C(u)
        HermiteSeries k, psi1, psi2;       // K(v), psi1(v), psi2(v)

        SurfaceJet2 jet(double u, double v) const;
    };

    std::shared_ptr<const Cache> cache_;
    ImmersionPatch patch_;
};

SphericalPatch build_spherical(const SphericalFamilySpec& spec);

// ---------------------------------------------------------------------------
// Minimal members.

/// Minimal cylinder-type graph from quadrature:
///   x1(u) = int_{u0}^{u} dxi / (f sqrt(c3 f^4 + c1^2 + 1)),  x2 = c1 x1 + c2.
/// Requires c3 < 0 and c3 f^4 + c1^2 + 1 > 0 over the (padded) u-range.
CylinderFamilySpec solve_minimal_cylinder(const WarpingFunction& f, double c1, double c2,
                                          double c3, const Rect& domain, int panels = 512);

struct RevolutionInit {
    double zeta1, zeta2, zeta1_d, zeta2_d;
};

struct MinimalRevolutionResult {
    RevolutionFamilySpec spec;
    bool domain_exit = false;  // integration left the admissible region early
    double u_end = 0.0;        // last admissible u actually reached
};

/// Integrates the minimal-rotational profile system
///   f zeta1'' = f' zeta1' (2 f^2 V^2 - 3) + (f^2 V^2 - 1) / (f zeta1),
///   f zeta2'' = f' zeta2' (2 f^2 V^2 - 3),
/// from initial data at domain.u0, with dense Hermite output.
MinimalRevolutionResult solve_minimal_revolution(const WarpingFunction& f,
                                                 const RevolutionInit& init, const Rect& domain,
                                                 double step = 1e-3);

/// Wraps a rotational graph as a spherical-family spec over a great circle
/// (kappa = 0 reproduces the graph; other kappa probes the family's rigidity).
SphericalFamilySpec revolution_as_spherical(const RevolutionFamilySpec& rev, Profile kappa,
                                            double ode_step = 1e-3, int quad_panels = 512);

// ---------------------------------------------------------------------------
// Members with parallel normalized mean curvature direction.

struct EtaParallelCylinderSpec {
    double c1, c2, c3;  // x1 = c1 int du/f, x2 = c2 int du/f + c3; c1^2 + c2^2 > 1
    WarpingFunction f;
    Rect domain;
};

struct EtaParallelSphericalSpec {
    double c;            // R = c / f, c^2 > 1
    double tau_offset;   // constant tau0
    Profile kappa;       // of v
    Profile phi1;        // of v
    SphereFrame frame0;
    double psi1_0 = 0.0, psi2_0 = 0.0;
    WarpingFunction f;
    Rect domain;
    double ode_step = 1e-3;
    int quad_panels = 512;
};

using EtaParallelSpec = std::variant<EtaParallelCylinderSpec, EtaParallelSphericalSpec>;

FamilyPatch build_eta_parallel(const EtaParallelSpec& spec);

}  // namespace rwlab
