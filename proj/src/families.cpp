#include "rwlab/families.hpp"

#include <cmath>
#include <sstream>

#include "rwlab/errors.hpp"

namespace rwlab {

namespace {

constexpr double kAdmissibleEps = 1e-8;
constexpr int kAdmissibleSamples = 400;

double pad_amount(double span) { return std::max(0.05 * span, 0.01); }

/// Pads the parameter rectangle (for finite-difference stencils and caches)
/// while staying strictly inside the warping function's t-interval.
Rect padded_rect(const Rect& r, const Interval& t_iv) {
    Rect p = r;
    double pu = pad_amount(r.u1 - r.u0), pv = pad_amount(r.v1 - r.v0);
    p.u0 = r.u0 - pu;
    p.u1 = r.u1 + pu;
    p.v0 = r.v0 - pv;
    p.v1 = r.v1 + pv;
    if (std::isfinite(t_iv.lo) && !(p.u0 > t_iv.lo)) p.u0 = r.u0 - 0.5 * (r.u0 - t_iv.lo);
    if (std::isfinite(t_iv.hi) && !(p.u1 < t_iv.hi)) p.u1 = r.u1 + 0.5 * (t_iv.hi - r.u1);
    return p;
}

/// Samples a scalar condition over [lo, hi]; throws DomainError naming the
/// constraint and the first violating u if it drops to <= eps anywhere.
void require_positive_on(const std::string& what, const std::function<double(double)>& cond,
                         double lo, double hi, double eps = kAdmissibleEps) {
    for (int i = 0; i <= kAdmissibleSamples; ++i) {
        double u = lo + (hi - lo) * i / kAdmissibleSamples;
        if (!(cond(u) > eps)) {
            std::ostringstream os;
            os << what << " violated at u = " << u << " (value " << cond(u) << ")";
            throw DomainError(os.str());
        }
    }
}

double theta_from_sq(double d) {
    // d = -1 + f^2 V^2 > 0;  sinh(theta) = -1/sqrt(d).
    return -std::asinh(1.0 / std::sqrt(d));
}

using Rhs = std::function<std::vector<double>(double, const std::vector<double>&)>;
using StateFn = std::function<std::vector<double>(double, const std::vector<double>&)>;

/// Dense two-sided RK4 integration anchored at x_init, on a uniform grid
/// covering [x_lo, x_hi]. `second` returns the nodewise second derivative of
/// each tracked component; `post` (optional) adjusts the state after a step;
/// `admissible` (optional) stops the march when the state leaves the good
/// region.
struct DenseOde {
    double x0 = 0.0, h = 1.0;
    std::vector<std::vector<double>> y, y1, y2;  // node-major
    bool stopped_lo = false, stopped_hi = false;
    double lo() const { return x0; }
    double hi() const { return x0 + h * (static_cast<double>(y.size()) - 1.0); }

    HermiteSeries series(int comp) const {
        std::vector<double> a, b, c;
        a.reserve(y.size());
        b.reserve(y.size());
        c.reserve(y.size());
        for (std::size_t k = 0; k < y.size(); ++k) {
            a.push_back(y[k][comp]);
            b.push_back(y1[k][comp]);
            c.push_back(y2[k][comp]);
        }
        return HermiteSeries(x0, h, std::move(a), std::move(b), std::move(c));
    }
};

DenseOde integrate_dense(const Rhs& rhs, const StateFn& second, const std::vector<double>& y_init,
                         double x_init, double x_lo, double x_hi, double step,
                         const std::function<void(std::vector<double>&)>& post = nullptr,
                         const std::function<bool(double, const std::vector<double>&)>& admissible =
                             nullptr) {
    if (!(x_lo <= x_init && x_init <= x_hi)) throw InvalidInput("ODE anchor outside range");
    if (!(step > 0.0)) throw InvalidInput("ODE step must be positive");
    int n_lo = x_init > x_lo ? static_cast<int>(std::ceil((x_init - x_lo) / step)) : 0;
    int n_hi = x_hi > x_init ? static_cast<int>(std::ceil((x_hi - x_init) / step)) : 0;
    double h = step;
    // March one side: collects nodes after the anchor (excluded) in step order.
    auto march = [&](double dir, int n, std::vector<std::vector<double>>& out) {
        out.clear();
        std::vector<double> y = y_init;
        double x = x_init;
        for (int k = 0; k < n; ++k) {
            rk4_step(rhs, x, y, dir * h);
            x += dir * h;
            if (post) post(y);
            if (admissible && !admissible(x, y)) return true;
            out.push_back(y);
        }
        return false;
    };
    std::vector<std::vector<double>> fwd, bwd;
    DenseOde d;
    d.stopped_hi = march(+1.0, n_hi, fwd);
    d.stopped_lo = march(-1.0, n_lo, bwd);
    n_hi = static_cast<int>(fwd.size());
    n_lo = static_cast<int>(bwd.size());
    if (n_lo + n_hi < 1) throw NumericError("ODE admissible region collapsed at the anchor");
    d.x0 = x_init - n_lo * h;
    d.h = h;
    d.y.reserve(n_lo + n_hi + 1);
    for (int k = n_lo - 1; k >= 0; --k) d.y.push_back(bwd[k]);
    d.y.push_back(y_init);
    for (auto& s : fwd) d.y.push_back(std::move(s));
    d.y1.reserve(d.y.size());
    d.y2.reserve(d.y.size());
    for (std::size_t k = 0; k < d.y.size(); ++k) {
        double x = d.x0 + h * static_cast<double>(k);
        d.y1.push_back(rhs(x, d.y[k]));
        d.y2.push_back(second(x, d.y[k]));
    }
    return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// Cylinder-type graphs.

FamilyPatch build_cylinder(const CylinderFamilySpec& spec) {
    AmbientSpec ambient(spec.f, 0);
    Rect pr = padded_rect(spec.domain, spec.f.interval());
    Profile x1 = spec.x1, x2 = spec.x2;
    WarpingFunction f = spec.f;

    auto speed2 = [x1, x2](double u) {
        double a = x1.d1(u), b = x2.d1(u);
        return a * a + b * b;
    };
    require_positive_on("space-likeness (f^2 V^2 - 1 > 0) of the cylinder-type graph",
                        [&](double u) { return f.value(u) * f.value(u) * speed2(u) - 1.0; },
                        pr.u0, pr.u1);

    auto jet = [x1, x2](double u, double v) {
        SurfaceJet2 j;
        j.pos = {u, {x1.value(u), x2.value(u), v}};
        j.du = {1.0, {x1.d1(u), x2.d1(u), 0.0}};
        j.dv = {0.0, {0.0, 0.0, 1.0}};
        j.duu = {0.0, {x1.d2(u), x2.d2(u), 0.0}};
        j.duv = {0.0, {0.0, 0.0, 0.0}};
        j.dvv = {0.0, {0.0, 0.0, 0.0}};
        return j;
    };

    auto closed_h = [x1, x2, f](double u, double) {
        double fv = f.value(u), fp = f.d1(u);
        double a = x1.d1(u), b = x2.d1(u), ap = x1.d2(u), bp = x2.d2(u);
        double V = std::hypot(a, b);
        double Vp = (a * ap + b * bp) / V;
        double D = fv * fv * V * V - 1.0;
        ClosedFormH h;
        h.h3_11 = (fv * Vp - V * (fv * fv * V * V - 2.0) * fp) / std::pow(D, 1.5);
        h.h3_22 = -V * fp / std::sqrt(D);
        h.h4_11 = fv * (b * ap - a * bp) / (V * D);
        h.h4_22 = 0.0;
        return h;
    };
    auto closed_theta = [speed2, f](double u, double) {
        return theta_from_sq(f.value(u) * f.value(u) * speed2(u) - 1.0);
    };

    return FamilyPatch{"cylinder",
                       ImmersionPatch(ambient, spec.domain, ImmersionPatch::JetFn(jet), true, pr),
                       closed_h,
                       closed_theta,
                       {}};
}

// ---------------------------------------------------------------------------
// Rotational graphs.

FamilyPatch build_revolution(const RevolutionFamilySpec& spec) {
    AmbientSpec ambient(spec.f, 0);
    Rect pr = padded_rect(spec.domain, spec.f.interval());
    Profile z1 = spec.zeta1, z2 = spec.zeta2;
    WarpingFunction f = spec.f;

    auto speed2 = [z1, z2](double u) {
        double a = z1.d1(u), b = z2.d1(u);
        return a * a + b * b;
    };
    require_positive_on("space-likeness (f^2 V^2 - 1 > 0) of the rotational graph",
                        [&](double u) { return f.value(u) * f.value(u) * speed2(u) - 1.0; },
                        pr.u0, pr.u1);
    require_positive_on("rotational radius zeta1 > 0",
                        [&](double u) { return z1.value(u); }, pr.u0, pr.u1);

    auto jet = [z1, z2](double u, double v) {
        double c = std::cos(v), s = std::sin(v);
        double r = z1.value(u), rp = z1.d1(u), rpp = z1.d2(u);
        double w = z2.value(u), wp = z2.d1(u), wpp = z2.d2(u);
        SurfaceJet2 j;
        j.pos = {u, {r * c, r * s, w}};
        j.du = {1.0, {rp * c, rp * s, wp}};
        j.dv = {0.0, {-r * s, r * c, 0.0}};
        j.duu = {0.0, {rpp * c, rpp * s, wpp}};
        j.duv = {0.0, {-rp * s, rp * c, 0.0}};
        j.dvv = {0.0, {-r * c, -r * s, 0.0}};
        return j;
    };

    auto closed_h = [z1, z2, f](double u, double) {
        double fv = f.value(u), fp = f.d1(u);
        double a = z1.d1(u), b = z2.d1(u), ap = z1.d2(u), bp = z2.d2(u);
        double V = std::hypot(a, b);
        double Vp = (a * ap + b * bp) / V;
        double D = -1.0 + fv * fv * V * V;
        ClosedFormH h;
        h.h3_11 = (V * (2.0 - fv * fv * V * V) * fp + fv * Vp) / std::pow(D, 1.5);
        double r = z1.value(u);
        h.h3_22 = -V * fp / std::sqrt(D) - a / (fv * r * V * std::sqrt(D));
        h.h4_11 = -fv * (b * ap - a * bp) / (V * D);
        h.h4_22 = b / (fv * r * V);
        return h;
    };
    auto closed_theta = [speed2, f](double u, double) {
        return theta_from_sq(f.value(u) * f.value(u) * speed2(u) - 1.0);
    };

    return FamilyPatch{"revolution",
                       ImmersionPatch(ambient, spec.domain, ImmersionPatch::JetFn(jet), true, pr),
                       closed_h,
                       closed_theta,
                       {}};
}

// ---------------------------------------------------------------------------
// Sphere-curve frame.

SphereCurve::SphereCurve(Profile kappa, SphereFrame initial, double v_init, double v_lo,
                         double v_hi, double step, bool renormalize)
    : kappa_(kappa) {
    const Vec3& a0 = initial.alpha;
    const Vec3& t0 = initial.alpha_d;
    Vec3 want_n = cross(a0, t0);
    double defect = std::abs(norm(a0) - 1.0) + std::abs(norm(t0) - 1.0) +
                    std::abs(dot(a0, t0)) + norm(initial.n - want_n);
    if (defect > 1e-8) {
        throw InvalidInput("sphere-curve initial frame is not orthonormal right-handed "
                           "(alpha, alpha', n = alpha x alpha')");
    }

    auto rhs = [kappa](double v, const std::vector<double>& y) {
        double k = kappa.value(v);
        std::vector<double> r(9);
        for (int i = 0; i < 3; ++i) {
            double a = y[i], t = y[3 + i], n = y[6 + i];
            r[i] = t;
            r[3 + i] = k * n - a;
            r[6 + i] = -k * t;
        }
        return r;
    };
    auto second = [kappa](double v, const std::vector<double>& y) {
        double k = kappa.value(v), kp = kappa.d1(v);
        std::vector<double> r(9);
        for (int i = 0; i < 3; ++i) {
            double a = y[i], t = y[3 + i], n = y[6 + i];
            r[i] = k * n - a;
            r[3 + i] = kp * n - (k * k + 1.0) * t;
            r[6 + i] = -kp * t - k * (k * n - a);
        }
        return r;
    };
    double* worst = &frame_defect_;
    auto post = [renormalize, worst](std::vector<double>& y) {
        Vec3 a{y[0], y[1], y[2]}, t{y[3], y[4], y[5]}, n{y[6], y[7], y[8]};
        double drift = std::abs(norm(a) - 1.0) + std::abs(norm(t) - 1.0) + std::abs(dot(a, t)) +
                       norm(n - cross(a, t));
        if (drift > *worst) *worst = drift;
        if (!renormalize) return;
        a = normalized(a);
        t = t - dot(t, a) * a;
        t = normalized(t);
        n = cross(a, t);
        y = {a[0], a[1], a[2], t[0], t[1], t[2], n[0], n[1], n[2]};
    };

    std::vector<double> y0 = {a0[0], a0[1], a0[2], t0[0], t0[1], t0[2],
                              initial.n[0], initial.n[1], initial.n[2]};
    DenseOde d = integrate_dense(rhs, second, y0, v_init, v_lo, v_hi, step, post);
    for (int i = 0; i < 9; ++i) comp_[i] = d.series(i);
}

SphereFrame SphereCurve::eval(double v) const {
    SphereFrame fr;
    for (int i = 0; i < 3; ++i) {
        fr.alpha[i] = comp_[i].value(v);
        fr.alpha_d[i] = comp_[3 + i].value(v);
        fr.n[i] = comp_[6 + i].value(v);
    }
    return fr;
}

// ---------------------------------------------------------------------------
// Spherical-curve family.

SurfaceJet2 SphericalPatch::Cache::jet(double u, double v) const {
    const Profile& R = spec.R;
    const Profile& tau0 = spec.tau0;
    const Profile& kap = spec.kappa;
    const Profile& p1 = spec.phi1;

    double Kv = k.value(v);
    double cK = std::cos(Kv), sK = std::sin(Kv);
    double kv = kap.value(v), kvp = kap.d1(v);
    double Ru = R.value(u), Rp = R.d1(u);
    double t0 = tau0.value(u), t0p = tau0.d1(u);
    double tau = t0 + Kv;
    double ct = std::cos(tau), st = std::sin(tau);
    double S = s_int(u), C = c_int(u);
    double phi1 = p1.value(v), phi1p = p1.d1(v), phi1pp = p1.d2(v);

    double A = cK * C - sK * S;  // d/dK of (cK*S + sK*C)
    double B = sK * C + cK * S;
    double phi2 = cK * S + sK * C + psi1.value(v);
    double phi3 = A + psi2.value(v);
    double phi2_u = Ru * st, phi3_u = Ru * ct;
    double phi2_uu = Rp * st + Ru * ct * t0p;
    double phi3_uu = Rp * ct - Ru * st * t0p;
    double phi2_uv = Ru * ct * kv, phi3_uv = -Ru * st * kv;
    double phi2_v = kv * A + psi1.d1(v);
    double phi3_v = -kv * B + psi2.d1(v);
    double phi2_vv = kvp * A - kv * kv * B + psi1.d2(v);
    double phi3_vv = -kvp * B - kv * kv * A + psi2.d2(v);

    SphereFrame fr = curve.eval(v);
    const Vec3 &a = fr.alpha, &T = fr.alpha_d, &n = fr.n;
    Vec3 Tp = kv * n - a;
    Vec3 np = -kv * T;
    Vec3 Tpp = kvp * n - (kv * kv + 1.0) * T;
    Vec3 npp = -kvp * T - kv * Tp;

    SurfaceJet2 j;
    j.pos = {u, phi1 * a + phi2 * T + phi3 * n};
    j.du = {1.0, phi2_u * T + phi3_u * n};
    j.duu = {0.0, phi2_uu * T + phi3_uu * n};
    j.duv = {0.0, phi2_uv * T + phi2_u * Tp + phi3_uv * n + phi3_u * np};
    j.dv = {0.0, phi1p * a + (phi1 + phi2_v) * T + phi2 * Tp + phi3_v * n + phi3 * np};
    j.dvv = {0.0, phi1pp * a + 2.0 * phi1p * T + phi1 * Tp + phi2_vv * T + 2.0 * phi2_v * Tp +
                      phi2 * Tpp + phi3_vv * n + 2.0 * phi3_v * np + phi3 * npp};
    return j;
}

SphericalPatch::SphericalPatch(SphericalFamilySpec spec)
    : cache_(nullptr),
      patch_([&spec, this]() -> ImmersionPatch {
          AmbientSpec ambient(spec.f, 0);
          Rect pr = padded_rect(spec.domain, spec.f.interval());

          const Profile& R = spec.R;
          const Profile& t0 = spec.tau0;
          WarpingFunction f = spec.f;
          require_positive_on("space-likeness (-1 + f^2 R^2 > 0) of the spherical family",
                              [&](double u) {
                                  double r = R.value(u);
                                  return f.value(u) * f.value(u) * r * r - 1.0;
                              },
                              pr.u0, pr.u1);
          require_positive_on("nonvanishing speed profile R^2 > 0",
                              [&](double u) { return R.value(u) * R.value(u); }, pr.u0, pr.u1);

          SphereCurve curve(spec.kappa, spec.frame0, spec.domain.v0, pr.v0, pr.v1,
                            spec.ode_step);

          CumulativeIntegral s_int([R, t0](double x) { return R.value(x) * std::sin(t0.value(x)); },
                                   spec.domain.u0, pr.u0, pr.u1, spec.quad_panels);
          CumulativeIntegral c_int([R, t0](double x) { return R.value(x) * std::cos(t0.value(x)); },
                                   spec.domain.u0, pr.u0, pr.u1, spec.quad_panels);

          // K' = kappa;  psi1' = kappa psi2 - phi1;  psi2' = -kappa psi1.
          Profile kap = spec.kappa, p1 = spec.phi1;
          auto rhs = [kap, p1](double v, const std::vector<double>& y) {
              double k = kap.value(v);
              return std::vector<double>{k, k * y[2] - p1.value(v), -k * y[1]};
          };
          auto second = [kap, p1](double v, const std::vector<double>& y) {
              double k = kap.value(v), kp = kap.d1(v);
              return std::vector<double>{kp, kp * y[2] - k * k * y[1] - p1.d1(v),
                                         -kp * y[1] - k * (k * y[2] - p1.value(v))};
          };
          DenseOde d = integrate_dense(rhs, second, {0.0, spec.psi1_0, spec.psi2_0},
                                       spec.domain.v0, pr.v0, pr.v1, spec.ode_step);

          auto cache = std::make_shared<Cache>(Cache{spec, std::move(curve), std::move(s_int),
                                                     std::move(c_int), d.series(0), d.series(1),
                                                     d.series(2)});

          // Orthogonality degeneracy guard: phi1' - phi2 must not vanish.
          {
              const int ns = 64;
              for (int i = 0; i <= ns; ++i) {
                  double u = pr.u0 + (pr.u1 - pr.u0) * i / ns;
                  for (int jj = 0; jj <= ns; ++jj) {
                      double v = pr.v0 + (pr.v1 - pr.v0) * jj / ns;
                      double cK = std::cos(cache->k.value(v)), sK = std::sin(cache->k.value(v));
                      double phi2 = cK * cache->s_int(u) + sK * cache->c_int(u) +
                                    cache->psi1.value(v);
                      double gap = cache->spec.phi1.d1(v) - phi2;
                      if (!(std::abs(gap) > kAdmissibleEps)) {
                          std::ostringstream os;
                          os << "orthogonality degeneracy: phi1' - phi2 vanishes at (u, v) = ("
                             << u << ", " << v << ")";
                          throw DomainError(os.str());
                      }
                  }
              }
          }

          cache_ = cache;
          auto jet = [cache](double u, double v) { return cache->jet(u, v); };
          return ImmersionPatch(ambient, spec.domain, ImmersionPatch::JetFn(jet), true, pr);
      }()) {}

FamilyPatch SphericalPatch::family_patch() const {
    auto cache = cache_;
    auto closed_theta = [cache](double u, double) {
        double r = cache->spec.R.value(u), fv = cache->spec.f.value(u);
        return theta_from_sq(fv * fv * r * r - 1.0);
    };
    return FamilyPatch{"spherical", patch_, std::nullopt, closed_theta, {}};
}

const SphericalFamilySpec& SphericalPatch::spec() const { return cache_->spec; }
const SphereCurve& SphericalPatch::curve() const { return cache_->curve; }

double SphericalPatch::tau(double u, double v) const {
    return cache_->spec.tau0.value(u) + cache_->k.value(v);
}

double SphericalPatch::phi2(double u, double v) const {
    double K = cache_->k.value(v);
    return std::cos(K) * cache_->s_int(u) + std::sin(K) * cache_->c_int(u) +
           cache_->psi1.value(v);
}

double SphericalPatch::phi3(double u, double v) const {
    double K = cache_->k.value(v);
    return std::cos(K) * cache_->c_int(u) - std::sin(K) * cache_->s_int(u) +
           cache_->psi2.value(v);
}

double SphericalPatch::sinh_theta(double u) const {
    double r = cache_->spec.R.value(u), fv = cache_->spec.f.value(u);
    return -1.0 / std::sqrt(fv * fv * r * r - 1.0);
}

std::pair<double, double> SphericalPatch::base_principals(double u, double v) const {
    double k1 = cache_->spec.tau0.d1(u) / cache_->spec.R.value(u);
    double gap = cache_->spec.phi1.d1(v) - phi2(u, v);
    double k2 = std::cos(tau(u, v)) / gap;
    return {k1, k2};
}

SphericalPatch build_spherical(const SphericalFamilySpec& spec) { return SphericalPatch(spec); }

// ---------------------------------------------------------------------------
// Minimal members.

CylinderFamilySpec solve_minimal_cylinder(const WarpingFunction& f, double c1, double c2,
                                          double c3, const Rect& domain, int panels) {
    if (!(c3 < 0.0)) {
        throw DomainError("minimal cylinder-type member requires c3 < 0 "
                          "(space-likeness forces -1 + f^2 V^2 = -c3 f^4 / (c3 f^4 + c1^2 + 1) "
                          "to be positive)");
    }
    Rect pr = padded_rect(domain, f.interval());
    WarpingFunction fc = f;
    auto radicand = [fc, c1, c3](double u) {
        double fv = fc.value(u);
        return c3 * fv * fv * fv * fv + c1 * c1 + 1.0;
    };
    require_positive_on("minimal cylinder-type radicand c3 f^4 + c1^2 + 1 > 0", radicand, pr.u0,
                        pr.u1, 1e-10);

    auto g = [fc, radicand](double u) { return 1.0 / (fc.value(u) * std::sqrt(radicand(u))); };
    auto g1 = [fc, c1, c3, radicand](double u) {
        double fv = fc.value(u), fp = fc.d1(u);
        double A = radicand(u), sA = std::sqrt(A);
        double Ap = 4.0 * c3 * fv * fv * fv * fp;
        return -(fp * sA + fv * Ap / (2.0 * sA)) / (fv * fv * A);
    };
    Profile x1 = Profile::quadrature(g, g1, domain.u0, pr.u0, pr.u1, panels);
    Profile x2 = Profile::affine(x1, c1, c2);
    return CylinderFamilySpec{x1, x2, f, domain};
}

MinimalRevolutionResult solve_minimal_revolution(const WarpingFunction& f,
                                                 const RevolutionInit& init, const Rect& domain,
                                                 double step) {
    WarpingFunction fc = f;
    double rad0 = fc.value(domain.u0) * fc.value(domain.u0) *
                      (init.zeta1_d * init.zeta1_d + init.zeta2_d * init.zeta2_d) -
                  1.0;
    if (!(rad0 > kFrameEpsilon)) {
        throw InvalidInput("minimal rotational initial data is not space-like: f^2 V^2 - 1 <= 0 "
                           "at the anchor");
    }
    if (!(init.zeta1 > 0.0)) {
        throw InvalidInput("minimal rotational initial data needs zeta1 > 0");
    }

    // State (zeta1, zeta2, p, q) with p = zeta1', q = zeta2'.
    auto sys = [fc](double u, const std::vector<double>& y) {
        double fv = fc.value(u), fp = fc.d1(u);
        double p = y[2], q = y[3];
        double V2 = p * p + q * q;
        double w = 2.0 * fv * fv * V2 - 3.0;
        double rad = fv * fv * V2 - 1.0;
        double src = (rad > 0.0 && y[0] > 0.0) ? rad / (fv * y[0]) : 0.0;
        return std::vector<double>{p, q, (fp * p * w + src) / fv, fp * q * w / fv};
    };
    auto second = [sys](double u, const std::vector<double>& y) {
        auto r = sys(u, y);
        return std::vector<double>{r[2], r[3], 0.0, 0.0};
    };
    auto admissible = [fc](double u, const std::vector<double>& y) {
        double fv = fc.value(u);
        double rad = fv * fv * (y[2] * y[2] + y[3] * y[3]) - 1.0;
        return rad > 1e-6 && y[0] > 1e-6 && fc.interval().contains(u);
    };

    double pad = pad_amount(domain.u1 - domain.u0);
    Rect wide = padded_rect({domain.u0 - pad, domain.u1 + pad, domain.v0, domain.v1},
                            fc.interval());
    DenseOde d = integrate_dense(sys, second, {init.zeta1, init.zeta2, init.zeta1_d, init.zeta2_d},
                                 domain.u0, wide.u0, wide.u1, step, nullptr, admissible);

    Rect dom = domain;
    if (d.stopped_hi) dom.u1 = std::min(dom.u1, d.hi() - pad);
    if (d.stopped_lo) dom.u0 = std::max(dom.u0, d.lo() + pad);
    if (!(dom.u1 > dom.u0)) {
        throw NumericError("minimal rotational profile: admissible u-range collapsed");
    }
    return MinimalRevolutionResult{
        RevolutionFamilySpec{Profile::hermite(d.series(0)), Profile::hermite(d.series(1)), f, dom},
        d.stopped_hi || d.stopped_lo, d.hi()};
}

SphericalFamilySpec revolution_as_spherical(const RevolutionFamilySpec& rev, Profile kappa,
                                            double ode_step, int quad_panels) {
    Profile z1 = rev.zeta1, z2 = rev.zeta2;
    auto Vfn = [z1, z2](double u) { return std::hypot(z1.d1(u), z2.d1(u)); };
    auto Vd1 = [z1, z2, Vfn](double u) {
        return (z1.d1(u) * z1.d2(u) + z2.d1(u) * z2.d2(u)) / Vfn(u);
    };
    const double hfd = 1e-4;
    Profile R = Profile::custom("profile_speed", Vfn, Vd1, [Vd1, hfd](double u) {
        return (Vd1(u + hfd) - Vd1(u - hfd)) / (2.0 * hfd);
    });
    auto tfn = [z1, z2](double u) { return std::atan2(-z1.d1(u), z2.d1(u)); };
    auto td1 = [z1, z2, Vfn](double u) {
        double V = Vfn(u);
        return (-z1.d2(u) * z2.d1(u) + z1.d1(u) * z2.d2(u)) / (V * V);
    };
    Profile tau0 = Profile::custom("profile_angle", tfn, td1, [td1, hfd](double u) {
        return (td1(u + hfd) - td1(u - hfd)) / (2.0 * hfd);
    });

    double v0 = rev.domain.v0;
    SphereFrame frame0{{-std::sin(v0), std::cos(v0), 0.0},
                       {-std::cos(v0), -std::sin(v0), 0.0},
                       {0.0, 0.0, 1.0}};
    SphericalFamilySpec s{std::move(kappa),
                          frame0,
                          Profile::constant(0.0),
                          R,
                          tau0,
                          -z1.value(rev.domain.u0),
                          z2.value(rev.domain.u0),
                          rev.f,
                          rev.domain,
                          ode_step,
                          quad_panels};
    return s;
}

// ---------------------------------------------------------------------------
// Parallel normalized mean curvature direction.

FamilyPatch build_eta_parallel(const EtaParallelSpec& spec) {
    if (const auto* cy = std::get_if<EtaParallelCylinderSpec>(&spec)) {
        if (!(cy->c1 * cy->c1 + cy->c2 * cy->c2 > 1.0)) {
            throw DomainError("parallel-eta cylinder-type member requires c1^2 + c2^2 > 1 "
                              "(space-likeness of the graph)");
        }
        Rect pr = padded_rect(cy->domain, cy->f.interval());
        WarpingFunction f = cy->f;
        auto g = [f](double u) { return 1.0 / f.value(u); };
        auto g1 = [f](double u) {
            double fv = f.value(u);
            return -f.d1(u) / (fv * fv);
        };
        Profile base = Profile::quadrature(g, g1, cy->domain.u0, pr.u0, pr.u1);
        CylinderFamilySpec c{Profile::affine(base, cy->c1, 0.0),
                             Profile::affine(base, cy->c2, cy->c3), cy->f, cy->domain};
        FamilyPatch p = build_cylinder(c);
        p.family = "eta_parallel_cylinder";
        return p;
    }
    const auto& sp = std::get<EtaParallelSphericalSpec>(spec);
    if (!(sp.c * sp.c > 1.0)) {
        throw DomainError("parallel-eta spherical member requires c^2 > 1 "
                          "(space-likeness with R = c / f)");
    }
    SphericalFamilySpec s{sp.kappa,
                          sp.frame0,
                          sp.phi1,
                          Profile::warp_reciprocal(sp.c, sp.f),
                          Profile::constant(sp.tau_offset),
                          sp.psi1_0,
                          sp.psi2_0,
                          sp.f,
                          sp.domain,
                          sp.ode_step,
                          sp.quad_panels};
    FamilyPatch p = build_spherical(s).family_patch();
    p.family = "eta_parallel_spherical";
    return p;
}

}  // namespace rwlab
