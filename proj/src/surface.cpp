#include "rwlab/surface.hpp"

#include <cmath>

#include "rwlab/errors.hpp"

namespace rwlab {

namespace {

double fd_step1(double u, double v) { return 1e-5 * std::max({1.0, std::abs(u), std::abs(v)}); }
double fd_step2(double u, double v) { return 1e-4 * std::max({1.0, std::abs(u), std::abs(v)}); }

Vec4 point_components(const AmbientPoint& p) { return {p.t, p.q[0], p.q[1], p.q[2]}; }

AmbientVector diff_points(const AmbientPoint& a, const AmbientPoint& b, double scale) {
    Vec4 pa = point_components(a), pb = point_components(b);
    return AmbientVector::from_components(scale * (pa - pb));
}

}  // namespace

double FundamentalData::mean_curvature_norm() const { return std::hypot(H3, H4); }

ImmersionPatch::ImmersionPatch(AmbientSpec ambient, Rect domain, JetFn jet, bool canonical,
                               Rect eval_domain)
    : ambient_(std::move(ambient)),
      domain_(domain),
      eval_domain_(eval_domain),
      canonical_(canonical),
      jet_fn_(std::move(jet)) {
    position_fn_ = [fn = jet_fn_](double u, double v) { return fn(u, v).pos; };
}

ImmersionPatch::ImmersionPatch(AmbientSpec ambient, Rect domain, PositionFn position,
                               bool canonical, Rect eval_domain)
    : ambient_(std::move(ambient)),
      domain_(domain),
      eval_domain_(eval_domain),
      canonical_(canonical),
      position_fn_(std::move(position)) {}

AmbientPoint ImmersionPatch::position(double u, double v) const { return position_fn_(u, v); }

SurfaceJet2 ImmersionPatch::jet(double u, double v) const {
    if (jet_fn_) return jet_fn_(u, v);
    return jet_numeric(u, v);
}

SurfaceJet2 ImmersionPatch::jet_numeric(double u, double v) const {
    double h1 = fd_step1(u, v);
    double h2 = fd_step2(u, v);
    if (u - 2.0 * h2 < eval_domain_.u0 || u + 2.0 * h2 > eval_domain_.u1 ||
        v - 2.0 * h2 < eval_domain_.v0 || v + 2.0 * h2 > eval_domain_.v1) {
        throw JetError("finite-difference jet too close to the patch boundary");
    }
    const auto& p = position_fn_;
    SurfaceJet2 out;
    out.pos = p(u, v);
    out.du = diff_points(p(u + h1, v), p(u - h1, v), 1.0 / (2.0 * h1));
    out.dv = diff_points(p(u, v + h1), p(u, v - h1), 1.0 / (2.0 * h1));

    Vec4 c = point_components(out.pos);
    Vec4 uu = point_components(p(u + h2, v)) + point_components(p(u - h2, v)) - 2.0 * c;
    Vec4 vv = point_components(p(u, v + h2)) + point_components(p(u, v - h2)) - 2.0 * c;
    out.duu = AmbientVector::from_components((1.0 / (h2 * h2)) * uu);
    out.dvv = AmbientVector::from_components((1.0 / (h2 * h2)) * vv);
    Vec4 uv = point_components(p(u + h2, v + h2)) - point_components(p(u + h2, v - h2)) -
              point_components(p(u - h2, v + h2)) + point_components(p(u - h2, v - h2));
    out.duv = AmbientVector::from_components((1.0 / (4.0 * h2 * h2)) * uv);
    return out;
}

ImmersionPatch ImmersionPatch::perturbed(
    std::function<AmbientVector(double, double)> offset) const {
    PositionFn base = position_fn_;
    PositionFn shifted = [base, offset](double u, double v) {
        AmbientPoint p = base(u, v);
        AmbientVector d = offset(u, v);
        return AmbientPoint{p.t + d.t, p.q + d.bar};
    };
    return ImmersionPatch(ambient_, domain_, shifted, false, eval_domain_);
}

InducedMetric induced_metric(const AmbientSpec& spec, const SurfaceJet2& jet) {
    InducedMetric g{metric(spec, jet.pos, jet.du, jet.du), metric(spec, jet.pos, jet.du, jet.dv),
                    metric(spec, jet.pos, jet.dv, jet.dv)};
    if (g.g11 <= 0.0 || g.det() <= 0.0) {
        throw CausalDegeneracyError("induced metric is not positive-definite (surface left the space-like region)");
    }
    return g;
}

namespace {

// Vector x with x . y = det[w1; w2; w3; y] for all y: the 4D cross product of
// the rows w1, w2, w3.
Vec4 cross4(const Vec4& w1, const Vec4& w2, const Vec4& w3) {
    auto det3 = [](double a0, double a1, double a2, double b0, double b1, double b2, double c0,
                   double c1, double c2) {
        return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);
    };
    Vec4 x{};
    // Cofactor expansion along the final row (y).
    x[0] = +det3(w1[1], w1[2], w1[3], w2[1], w2[2], w2[3], w3[1], w3[2], w3[3]);
    x[1] = -det3(w1[0], w1[2], w1[3], w2[0], w2[2], w2[3], w3[0], w3[2], w3[3]);
    x[2] = +det3(w1[0], w1[1], w1[3], w2[0], w2[1], w2[3], w3[0], w3[1], w3[3]);
    x[3] = -det3(w1[0], w1[1], w1[2], w2[0], w2[1], w2[2], w3[0], w3[1], w3[2]);
    // det[w1;w2;w3;y] expands along the last row with signs (-1)^{3+k}.
    return {-x[0], -x[1], -x[2], -x[3]};
}

double det4_rows(const Vec4& r0, const Vec4& r1, const Vec4& r2, const Vec4& r3) {
    Vec4 x = cross4(r0, r1, r2);
    return x[0] * r3[0] + x[1] * r3[1] + x[2] * r3[2] + x[3] * r3[3];
}

Vec4 metric_lower(const Matrix4& g, const AmbientVector& x) {
    Vec4 xc = x.components();
    Vec4 out{};
    for (int i = 0; i < 4; ++i) {
        double s = 0.0;
        for (int j = 0; j < 4; ++j) s += g[i][j] * xc[j];
        out[i] = s;
    }
    return out;
}

}  // namespace

AdaptedFrame adapted_frame_generic(const ImmersionPatch& patch, double u, double v) {
    const AmbientSpec& spec = patch.ambient();
    SurfaceJet2 jet = patch.jet(u, v);
    InducedMetric g = induced_metric(spec, jet);

    // Tangential projection of d/dt.
    AmbientVector dt{1.0, {0.0, 0.0, 0.0}};
    double b1 = metric(spec, jet.pos, dt, jet.du);
    double b2 = metric(spec, jet.pos, dt, jet.dv);
    double det = g.det();
    double c1 = (g.g22 * b1 - g.g12 * b2) / det;
    double c2 = (-g.g12 * b1 + g.g11 * b2) / det;
    AmbientVector T = c1 * jet.du + c2 * jet.dv;
    double t_norm2 = metric(spec, jet.pos, T, T);
    if (t_norm2 < 1e-16) {
        throw SliceSurfaceError("tangential part of d/dt vanishes (slice surface)");
    }
    double t_norm = std::sqrt(t_norm2);

    AdaptedFrame fr;
    fr.theta = -std::asinh(t_norm);
    double sinh_theta = -t_norm;
    double cosh_theta = std::sqrt(1.0 + t_norm2);

    fr.e1 = (1.0 / sinh_theta) * T;
    fr.a1 = c1 / sinh_theta;
    fr.a2 = c2 / sinh_theta;

    double c = metric(spec, jet.pos, jet.dv, fr.e1);
    AmbientVector w = jet.dv - c * fr.e1;
    double wn = std::sqrt(metric(spec, jet.pos, w, w));
    fr.e2 = (1.0 / wn) * w;
    fr.b1 = -c * fr.a1 / wn;
    fr.b2 = (1.0 - c * fr.a2) / wn;

    fr.e3 = (1.0 / cosh_theta) * (dt - T);

    // e4 spans the g~-orthogonal complement of {e1, e2, e3}.
    Matrix4 gm = metric_components(spec, jet.pos);
    Vec4 n = cross4(metric_lower(gm, fr.e1), metric_lower(gm, fr.e2), metric_lower(gm, fr.e3));
    AmbientVector e4 = AmbientVector::from_components(n);
    double nn = metric(spec, jet.pos, e4, e4);
    if (nn <= 0.0) throw NumericError("failed to orient the second normal direction");
    e4 = (1.0 / std::sqrt(nn)) * e4;
    // Orientation convention of the canonical frame (e4 along the base cross
    // product of the tangent directions): positive coordinate determinant.
    if (det4_rows(fr.e1.components(), fr.e2.components(), fr.e3.components(), e4.components()) <
        0.0) {
        e4 = -e4;
    }
    fr.e4 = e4;
    return fr;
}

AdaptedFrame adapted_frame(const ImmersionPatch& patch, double u, double v) {
    const AmbientSpec& spec = patch.ambient();
    if (!patch.canonical() || spec.curvature() != 0) {
        return adapted_frame_generic(patch, u, v);
    }
    SurfaceJet2 jet = patch.jet(u, v);
    double f = spec.warping().value(jet.pos.t);
    Vec3 pu = jet.du.bar, pv = jet.dv.bar;
    double E = dot(pu, pu);
    double G = dot(pv, pv);
    double D = -1.0 + f * f * E;
    if (D <= kFrameEpsilon) {
        throw DegenerateFrameError("-1 + f^2*E~ below the frame guard");
    }
    AdaptedFrame fr;
    double sd = std::sqrt(D);
    fr.theta = -std::asinh(1.0 / sd);
    fr.e1 = (1.0 / sd) * jet.du;
    fr.a1 = 1.0 / sd;
    fr.a2 = 0.0;
    fr.e2 = AmbientVector{0.0, (1.0 / (f * std::sqrt(G))) * pv};
    fr.b1 = 0.0;
    fr.b2 = 1.0 / (f * std::sqrt(G));
    double denom = std::sqrt(f * f * E * E - E);
    fr.e3 = AmbientVector{f * E / denom, (1.0 / (f * denom)) * pu};
    Vec3 n = normalized(cross(pu, pv));
    fr.e4 = AmbientVector{0.0, (1.0 / f) * n};
    return fr;
}

AmbientVector frame_field_derivative(const ImmersionPatch& patch, double u, double v, int which,
                                     int along) {
    double h = fd_step1(u, v);
    auto leg = [&](double uu, double vv) -> AmbientVector {
        AdaptedFrame f = adapted_frame(patch, uu, vv);
        switch (which) {
            case 1: return f.e1;
            case 2: return f.e2;
            case 3: return f.e3;
            default: return f.e4;
        }
    };
    AdaptedFrame fr = adapted_frame(patch, u, v);
    AmbientVector ddu = (1.0 / (2.0 * h)) * (leg(u + h, v) - leg(u - h, v));
    AmbientVector ddv = (1.0 / (2.0 * h)) * (leg(u, v + h) - leg(u, v - h));
    double cu = (along == 1) ? fr.a1 : fr.b1;
    double cv = (along == 1) ? fr.a2 : fr.b2;
    AmbientVector dir = (along == 1) ? fr.e1 : fr.e2;
    AmbientVector value = leg(u, v);

    SurfaceJet2 jet = patch.jet(u, v);
    ChristoffelTable gamma = christoffel(patch.ambient(), jet.pos);
    return cu * ddu + cv * ddv + christoffel_apply(gamma, dir, value);
}

FundamentalData fundamental_forms(const ImmersionPatch& patch, double u, double v) {
    const AmbientSpec& spec = patch.ambient();
    SurfaceJet2 jet = patch.jet(u, v);
    AdaptedFrame fr = adapted_frame(patch, u, v);
    ChristoffelTable gamma = christoffel(spec, jet.pos);

    // nabla~ along coordinate directions, split against the normal legs.
    AmbientVector s_uu = jet.duu + christoffel_apply(gamma, jet.du, jet.du);
    AmbientVector s_uv = jet.duv + christoffel_apply(gamma, jet.du, jet.dv);
    AmbientVector s_vv = jet.dvv + christoffel_apply(gamma, jet.dv, jet.dv);

    auto proj = [&](const AmbientVector& s, const AmbientVector& e) {
        return metric(spec, jet.pos, s, e);
    };
    double k3[2][2] = {{proj(s_uu, fr.e3), proj(s_uv, fr.e3)},
                       {proj(s_uv, fr.e3), proj(s_vv, fr.e3)}};
    double k4[2][2] = {{proj(s_uu, fr.e4), proj(s_uv, fr.e4)},
                       {proj(s_uv, fr.e4), proj(s_vv, fr.e4)}};

    double a[2] = {fr.a1, fr.a2};
    double b[2] = {fr.b1, fr.b2};
    auto contract = [](const double k[2][2], const double* x, const double* y) {
        return k[0][0] * x[0] * y[0] + k[0][1] * (x[0] * y[1] + x[1] * y[0]) +
               k[1][1] * x[1] * y[1];
    };

    FundamentalData d{};
    d.h3_11 = contract(k3, a, a);
    d.h3_12 = contract(k3, a, b);
    d.h3_22 = contract(k3, b, b);
    d.h4_11 = contract(k4, a, a);
    d.h4_12 = contract(k4, a, b);
    d.h4_22 = contract(k4, b, b);
    d.H3 = -(d.h3_11 + d.h3_22) / 2.0;
    d.H4 = (d.h4_11 + d.h4_22) / 2.0;

    AmbientVector de1_1 = frame_field_derivative(patch, u, v, 1, 1);
    AmbientVector de1_2 = frame_field_derivative(patch, u, v, 1, 2);
    AmbientVector de3_1 = frame_field_derivative(patch, u, v, 3, 1);
    AmbientVector de3_2 = frame_field_derivative(patch, u, v, 3, 2);
    d.omega12_e1 = metric(spec, jet.pos, de1_1, fr.e2);
    d.omega12_e2 = metric(spec, jet.pos, de1_2, fr.e2);
    d.n34_e1 = metric(spec, jet.pos, de3_1, fr.e4);
    d.n34_e2 = metric(spec, jet.pos, de3_2, fr.e4);
    return d;
}

std::pair<double, double> theta_derivatives(const ImmersionPatch& patch, double u, double v) {
    double h = fd_step1(u, v);
    auto theta = [&](double uu, double vv) { return adapted_frame(patch, uu, vv).theta; };
    AdaptedFrame fr = adapted_frame(patch, u, v);
    double tu = (theta(u + h, v) - theta(u - h, v)) / (2.0 * h);
    double tv = (theta(u, v + h) - theta(u, v - h)) / (2.0 * h);
    return {fr.a1 * tu + fr.a2 * tv, fr.b1 * tu + fr.b2 * tv};
}

double warp_restriction_residual(const ImmersionPatch& patch, double u, double v) {
    const WarpingFunction& f = patch.ambient().warping();
    double h = fd_step1(u, v);
    auto fm = [&](double uu, double vv) { return f.value(patch.position(uu, vv).t); };
    AdaptedFrame fr = adapted_frame(patch, u, v);
    double fu = (fm(u + h, v) - fm(u - h, v)) / (2.0 * h);
    double fv = (fm(u, v + h) - fm(u, v - h)) / (2.0 * h);
    double e1f = fr.a1 * fu + fr.a2 * fv;
    double t = patch.position(u, v).t;
    return std::abs(f.d1(t) + e1f / std::sinh(fr.theta));
}

}  // namespace rwlab
