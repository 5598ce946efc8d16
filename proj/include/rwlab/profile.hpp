#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "rwlab/numerics.hpp"
#include "rwlab/warping.hpp"

namespace rwlab {

/// One-variable analytic profile with exact first and second derivatives.
/// Family constructors take their coefficient functions (x1, x2, zeta_i,
/// kappa, R, tau0, phi1, ...) from this catalog so no derivative is ever
/// produced by finite differences.
class Profile {
public:
    double value(double u) const { return impl_->value(u); }
    double d1(double u) const { return impl_->d1(u); }
    double d2(double u) const { return impl_->d2(u); }
    const std::string& kind_name() const { return impl_->kind; }

    static Profile constant(double c);
    static Profile linear(double a, double b);                 // a*u + b
    static Profile poly(std::vector<double> coeffs);           // c0 + c1*u + ...
    static Profile trig(double a, double b, double c, double d);  // a*sin(b*u + c) + d
    static Profile exponential(double a, double b, double c);  // a*e^{b*u} + c
    static Profile sum(Profile p, Profile q);
    static Profile affine(Profile base, double scale, double offset);  // scale*base + offset

    /// u -> int_{x0}^{u} g, with g and g' supplied in closed form. The value is
    /// served from a cached composite-Simpson grid over [lo, hi].
    static Profile quadrature(std::function<double(double)> g, std::function<double(double)> g1,
                              double x0, double lo, double hi, int panels = 512);

    /// Dense ODE output (value, d1, d2 samples on a uniform grid).
    static Profile hermite(HermiteSeries series);

    /// u -> k / f(u).
    static Profile warp_reciprocal(double k, WarpingFunction f);

    /// Closed-over value/derivative callables (used for profiles derived from
    /// other profiles, e.g. V = sqrt(x1'^2 + x2'^2)).
    static Profile custom(std::string kind, std::function<double(double)> v,
                          std::function<double(double)> d1, std::function<double(double)> d2);

    struct Impl {
        std::string kind;
        virtual ~Impl() = default;
        virtual double value(double u) const = 0;
        virtual double d1(double u) const = 0;
        virtual double d2(double u) const = 0;
    };

private:
    explicit Profile(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    static Profile make(std::shared_ptr<const Impl> impl) { return Profile(std::move(impl)); }
    std::shared_ptr<const Impl> impl_;
};

}  // namespace rwlab
