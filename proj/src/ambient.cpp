#include "rwlab/ambient.hpp"

#include <cmath>

#include "rwlab/errors.hpp"

namespace rwlab {

AmbientSpec::AmbientSpec(WarpingFunction warping, int curvature)
    : warping_(std::move(warping)), c_(curvature) {
    if (c_ != -1 && c_ != 0 && c_ != 1) {
        throw InvalidInput("curvature must be one of -1, 0, +1");
    }
}

void AmbientSpec::require_in_domain(const AmbientPoint& p) const {
    warping_.require_in_domain(p.t);
    if (c_ == -1) {
        double r2 = dot(p.q, p.q);
        if (r2 >= 1.0 - 1e-12) {
            throw DomainError("point leaves the hyperbolic chart (|q| >= 1)");
        }
    }
}

double AmbientSpec::conformal_factor(const Vec3& q) const {
    return 2.0 / (1.0 + c_ * dot(q, q));
}

Vec3 AmbientSpec::conformal_log_gradient(const Vec3& q) const {
    double s = -2.0 * c_ / (1.0 + c_ * dot(q, q));
    return {s * q[0], s * q[1], s * q[2]};
}

double AmbientSpec::base_metric(const AmbientPoint& p, const Vec3& x, const Vec3& y) const {
    if (c_ == 0) return dot(x, y);
    double lam = conformal_factor(p.q);
    return lam * lam * dot(x, y);
}

Matrix3 AmbientSpec::base_metric_components(const AmbientPoint& p) const {
    double s = (c_ == 0) ? 1.0 : conformal_factor(p.q) * conformal_factor(p.q);
    Matrix3 g{};
    for (int i = 0; i < 3; ++i) g[i][i] = s;
    return g;
}

std::array<Matrix3, 3> AmbientSpec::base_metric_derivatives(const AmbientPoint& p) const {
    std::array<Matrix3, 3> dg{};
    if (c_ == 0) return dg;
    double lam2 = conformal_factor(p.q) * conformal_factor(p.q);
    Vec3 sigma = conformal_log_gradient(p.q);
    for (int k = 0; k < 3; ++k) {
        for (int i = 0; i < 3; ++i) dg[k][i][i] = 2.0 * lam2 * sigma[k];
    }
    return dg;
}

std::array<Matrix3, 3> AmbientSpec::base_christoffel(const AmbientPoint& p) const {
    std::array<Matrix3, 3> gamma{};
    if (c_ == 0) return gamma;
    Vec3 sigma = conformal_log_gradient(p.q);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                double v = 0.0;
                if (i == j) v += sigma[k];
                if (i == k) v += sigma[j];
                if (j == k) v -= sigma[i];
                gamma[i][j][k] = v;
            }
        }
    }
    return gamma;
}

Vec3 AmbientSpec::base_unit_normal(const AmbientPoint& p, const Vec3& a, const Vec3& b) const {
    // For a conformal metric the g_c-orthogonal complement of span{a,b} is the
    // Euclidean one; only the normalization changes.
    Vec3 n = cross(a, b);
    double len2 = base_metric(p, n, n);
    if (len2 <= 0.0 || !std::isfinite(len2)) {
        throw NumericError("degenerate tangent plane in base_unit_normal");
    }
    return (1.0 / std::sqrt(len2)) * n;
}

double metric(const AmbientSpec& spec, const AmbientPoint& p, const AmbientVector& x,
              const AmbientVector& y) {
    spec.require_in_domain(p);
    double f = spec.warping().value(p.t);
    return -x.t * y.t + f * f * spec.base_metric(p, x.bar, y.bar);
}

Matrix4 metric_components(const AmbientSpec& spec, const AmbientPoint& p) {
    spec.require_in_domain(p);
    double f = spec.warping().value(p.t);
    Matrix3 gc = spec.base_metric_components(p);
    Matrix4 g{};
    g[0][0] = -1.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) g[i + 1][j + 1] = f * f * gc[i][j];
    }
    return g;
}

std::array<Matrix4, 4> metric_derivatives(const AmbientSpec& spec, const AmbientPoint& p) {
    spec.require_in_domain(p);
    double f = spec.warping().value(p.t);
    double fp = spec.warping().d1(p.t);
    Matrix3 gc = spec.base_metric_components(p);
    std::array<Matrix3, 3> dgc = spec.base_metric_derivatives(p);
    std::array<Matrix4, 4> dg{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            dg[0][i + 1][j + 1] = 2.0 * f * fp * gc[i][j];
            for (int k = 0; k < 3; ++k) dg[k + 1][i + 1][j + 1] = f * f * dgc[k][i][j];
        }
    }
    return dg;
}

ChristoffelTable christoffel(const AmbientSpec& spec, const AmbientPoint& p) {
    spec.require_in_domain(p);
    double f = spec.warping().value(p.t);
    double fp = spec.warping().d1(p.t);
    Matrix3 gc = spec.base_metric_components(p);
    std::array<Matrix3, 3> bg = spec.base_christoffel(p);

    ChristoffelTable gamma{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            gamma[0][i + 1][j + 1] = f * fp * gc[i][j];
            for (int k = 0; k < 3; ++k) gamma[i + 1][j + 1][k + 1] = bg[i][j][k];
        }
        gamma[i + 1][0][i + 1] = fp / f;
        gamma[i + 1][i + 1][0] = fp / f;
    }
    return gamma;
}

AmbientVector christoffel_apply(const ChristoffelTable& gamma, const AmbientVector& x,
                                const AmbientVector& y) {
    Vec4 xc = x.components();
    Vec4 yc = y.components();
    Vec4 out{};
    for (int l = 0; l < 4; ++l) {
        double s = 0.0;
        for (int m = 0; m < 4; ++m) {
            for (int n = 0; n < 4; ++n) s += gamma[l][m][n] * xc[m] * yc[n];
        }
        out[l] = s;
    }
    return AmbientVector::from_components(out);
}

AmbientVector covariant_derivative(const AmbientSpec& spec, const AmbientPoint& p,
                                   const VectorFieldJet& field, const AmbientVector& direction) {
    ChristoffelTable gamma = christoffel(spec, p);
    return field.dir_deriv + christoffel_apply(gamma, direction, field.value);
}

AmbientVector covariant_derivative_decomposed(const AmbientSpec& spec, const AmbientPoint& p,
                                              const VectorFieldJet& field,
                                              const AmbientVector& direction) {
    spec.require_in_domain(p);
    // Product connection of I x Q^3_c (f == 1): base Christoffels only.
    std::array<Matrix3, 3> bg = spec.base_christoffel(p);
    AmbientVector prod = field.dir_deriv;
    for (int i = 0; i < 3; ++i) {
        double s = 0.0;
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) s += bg[i][j][k] * direction.bar[j] * field.value.bar[k];
        }
        prod.bar[i] += s;
    }
    // Warping correction (ln f)'(g~(Xbar,Ybar) d/dt + X0 Ybar + Y0 Xbar).
    double f = spec.warping().value(p.t);
    double lf = spec.warping().log_d1(p.t);
    double gbar = f * f * spec.base_metric(p, direction.bar, field.value.bar);
    AmbientVector corr{lf * gbar,
                       lf * (direction.t * field.value.bar + field.value.t * direction.bar)};
    return prod + corr;
}

CausalCharacter causal_character(const AmbientSpec& spec, const AmbientPoint& p,
                                 const AmbientVector& x, double tol) {
    Vec4 xc = x.components();
    if (norm4_euclid(xc) == 0.0) throw InvalidInput("causal character of the zero vector");
    double q = metric(spec, p, x, x);
    if (tol < 0.0) tol = 1e-10 * (1.0 + std::abs(q));
    if (std::abs(q) <= tol) return CausalCharacter::Null;
    return q > 0.0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
}

}  // namespace rwlab
