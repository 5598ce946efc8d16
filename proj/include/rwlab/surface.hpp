#pragma once

#include <functional>
#include <optional>
#include <string>

#include "rwlab/ambient.hpp"

namespace rwlab {

struct Rect {
    double u0 = 0.0, u1 = 1.0;
    double v0 = 0.0, v1 = 1.0;
};

/// Position and all partial derivatives up to order 2 at one parameter point.
struct SurfaceJet2 {
    AmbientPoint pos;
    AmbientVector du, dv;
    AmbientVector duu, duv, dvv;
};

struct InducedMetric {
    double g11, g12, g22;
    double det() const { return g11 * g22 - g12 * g12; }
};

/// Orthonormal adapted frame: e1, e2 tangent space-like, e3 normal time-like,
/// e4 normal space-like, plus the hyperbolic angle theta with
/// d/dt = sinh(theta) e1 + cosh(theta) e3 and sinh(theta) < 0.
struct AdaptedFrame {
    AmbientVector e1, e2, e3, e4;
    double theta;
    // e1 = a1 du + a2 dv, e2 = b1 du + b2 dv in the coordinate basis.
    double a1, a2, b1, b2;
};

/// Frame-basis second fundamental form, mean curvature components, connection
/// form and normal-connection coefficients at one point.
struct FundamentalData {
    double h3_11, h3_12, h3_22;
    double h4_11, h4_12, h4_22;
    double H3, H4;                    // H = H3 e3 + H4 e4
    double omega12_e1, omega12_e2;    // g(nabla_{e_i} e1, e2)
    double n34_e1, n34_e2;            // g~(nabla^perp_{e_i} e3, e4)

    double mean_curvature_norm() const;
};

/// Immersed surface patch phi(u,v) = (T(u,v), phi~(u,v)). Jets come from an
/// analytic provider when the family supplies one, otherwise from central
/// finite differences of the position map.
class ImmersionPatch {
public:
    using JetFn = std::function<SurfaceJet2(double, double)>;
    using PositionFn = std::function<AmbientPoint(double, double)>;

    /// Analytic patch. `canonical` asserts T = u together with the chart
    /// conditions g_c(phi~_u, phi~_v) = 0 and d_v g_c(phi~_u, phi~_u) = 0,
    /// which unlocks the closed-form frame route.
    ImmersionPatch(AmbientSpec ambient, Rect domain, JetFn jet, bool canonical,
                   Rect eval_domain);

    /// Numeric patch; jets by central differences with step control.
    ImmersionPatch(AmbientSpec ambient, Rect domain, PositionFn position, bool canonical,
                   Rect eval_domain);

    const AmbientSpec& ambient() const { return ambient_; }
    const Rect& domain() const { return domain_; }
    const Rect& eval_domain() const { return eval_domain_; }
    bool canonical() const { return canonical_; }
    bool has_analytic_jet() const { return static_cast<bool>(jet_fn_); }

    SurfaceJet2 jet(double u, double v) const;
    /// Finite-difference jet of the position map regardless of an analytic
    /// provider; the oracle side of the jet cross-check.
    SurfaceJet2 jet_numeric(double u, double v) const;

    AmbientPoint position(double u, double v) const;

    /// Returns a patch whose position is this patch's plus `offset` (an
    /// ambient displacement in chart components). Canonicality is dropped.
    ImmersionPatch perturbed(std::function<AmbientVector(double, double)> offset) const;

private:
    AmbientSpec ambient_;
    Rect domain_;
    Rect eval_domain_;
    bool canonical_;
    JetFn jet_fn_;
    PositionFn position_fn_;
};

InducedMetric induced_metric(const AmbientSpec& spec, const SurfaceJet2& jet);

/// Frame degeneracy guard on -1 + f^2*E~.
inline constexpr double kFrameEpsilon = 1e-8;

AdaptedFrame adapted_frame(const ImmersionPatch& patch, double u, double v);

/// Generic projection route (ignores canonicality); used for route
/// cross-checks and for patches without the canonical chart.
AdaptedFrame adapted_frame_generic(const ImmersionPatch& patch, double u, double v);

FundamentalData fundamental_forms(const ImmersionPatch& patch, double u, double v);

/// Directional derivatives (e1(theta), e2(theta)) by finite differences of the
/// frame angle over the chart.
std::pair<double, double> theta_derivatives(const ImmersionPatch& patch, double u, double v);

/// |f'(t) + (1/sinh theta) e1(f o T)|.
double warp_restriction_residual(const ImmersionPatch& patch, double u, double v);

/// g~(nabla_{e_i} e_a, w) with the frame field differentiated by finite
/// differences over the chart. `a` selects the frame leg (1..4).
AmbientVector frame_field_derivative(const ImmersionPatch& patch, double u, double v, int which,
                                     int along);  // along: 1 or 2 (e1/e2 direction)

}  // namespace rwlab
