#pragma once

#include <array>

#include "rwlab/vec.hpp"
#include "rwlab/warping.hpp"

namespace rwlab {

/// Point of I x Q^3_c: interval coordinate t plus chart coordinates on the base.
struct AmbientPoint {
    double t = 0.0;
    Vec3 q{0.0, 0.0, 0.0};
};

/// Tangent vector in the decomposition X = X0 d/dt + Xbar.
struct AmbientVector {
    double t = 0.0;  // X0
    Vec3 bar{0.0, 0.0, 0.0};

    Vec4 components() const { return {t, bar[0], bar[1], bar[2]}; }
    static AmbientVector from_components(const Vec4& c) { return {c[0], {c[1], c[2], c[3]}}; }
};

inline AmbientVector operator+(const AmbientVector& a, const AmbientVector& b) {
    return {a.t + b.t, a.bar + b.bar};
}
inline AmbientVector operator-(const AmbientVector& a, const AmbientVector& b) {
    return {a.t - b.t, a.bar - b.bar};
}
inline AmbientVector operator*(double s, const AmbientVector& a) { return {s * a.t, s * a.bar}; }
inline AmbientVector operator-(const AmbientVector& a) { return {-a.t, -a.bar}; }

using ChristoffelTable = std::array<std::array<std::array<double, 4>, 4>, 4>;  // [lambda][mu][nu]
using Matrix3 = std::array<std::array<double, 3>, 3>;
using Matrix4 = std::array<std::array<double, 4>, 4>;

enum class CausalCharacter { Spacelike, Timelike, Null };

/// Value and directional derivative of a vector field at a point, enough to
/// take one covariant derivative.
struct VectorFieldJet {
    AmbientVector value;
    AmbientVector dir_deriv;  // derivative of the components along the chosen direction
};

/// The warped product I x_f Q^3_c. For c = +-1 the base is served through one
/// fixed conformal chart (stereographic for the sphere, Poincare ball for
/// hyperbolic space); chart-boundary points are rejected.
class AmbientSpec {
public:
    AmbientSpec(WarpingFunction warping, int curvature);

    const WarpingFunction& warping() const { return warping_; }
    int curvature() const { return c_; }

    void require_in_domain(const AmbientPoint& p) const;

    // Base geometry in the fixed chart.
    double base_metric(const AmbientPoint& p, const Vec3& x, const Vec3& y) const;
    Matrix3 base_metric_components(const AmbientPoint& p) const;
    /// d(g_c)_{ij}/dq^k, index order [k][i][j].
    std::array<Matrix3, 3> base_metric_derivatives(const AmbientPoint& p) const;
    /// Base Christoffel symbols, index order [i][j][k] (upper first).
    std::array<Matrix3, 3> base_christoffel(const AmbientPoint& p) const;

    /// Unit base vector orthogonal to two base vectors w.r.t. g_c, oriented by
    /// the chart right-hand rule.
    Vec3 base_unit_normal(const AmbientPoint& p, const Vec3& a, const Vec3& b) const;

private:
    WarpingFunction warping_;
    int c_;

    double conformal_factor(const Vec3& q) const;       // lambda with g_c = lambda^2 delta
    Vec3 conformal_log_gradient(const Vec3& q) const;   // grad ln lambda
};

/// g~(X,Y) = -X0*Y0 + f(t)^2 g_c(Xbar, Ybar).
double metric(const AmbientSpec& spec, const AmbientPoint& p, const AmbientVector& x,
              const AmbientVector& y);

/// Full 4x4 metric component matrix in coordinates (t, q1, q2, q3).
Matrix4 metric_components(const AmbientSpec& spec, const AmbientPoint& p);

/// Analytic partial derivatives d(g~)_{nu lambda}/dx^mu, index order [mu][nu][lambda].
std::array<Matrix4, 4> metric_derivatives(const AmbientSpec& spec, const AmbientPoint& p);

ChristoffelTable christoffel(const AmbientSpec& spec, const AmbientPoint& p);

/// Gamma^lambda_{mu nu} X^mu Y^nu as an ambient vector.
AmbientVector christoffel_apply(const ChristoffelTable& gamma, const AmbientVector& x,
                                const AmbientVector& y);

AmbientVector covariant_derivative(const AmbientSpec& spec, const AmbientPoint& p,
                                   const VectorFieldJet& field, const AmbientVector& direction);

/// Same covariant derivative through the decomposition into the product
/// connection plus the (ln f)' correction terms.
AmbientVector covariant_derivative_decomposed(const AmbientSpec& spec, const AmbientPoint& p,
                                              const VectorFieldJet& field,
                                              const AmbientVector& direction);

CausalCharacter causal_character(const AmbientSpec& spec, const AmbientPoint& p,
                                 const AmbientVector& x, double tol = -1.0);

}  // namespace rwlab
