#pragma once

#include <limits>
#include <string>

namespace rwlab {

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double t) const { return t > lo && t < hi; }
    bool contains(double a, double b) const { return a > lo && b < hi; }
};

/// Scale factor f of the warped product, drawn from a fixed analytic catalog
/// so that f' and f'' are exact. f must be non-vanishing on its interval;
/// this is checked at construction both by closed-form sign analysis per kind
/// and by sampling.
class WarpingFunction {
public:
    enum class Kind { Constant, Exponential, CoshPlus, Power, Linear };

    // constant:    f(t) = a
    // exponential: f(t) = e^{a t}
    // cosh_plus:   f(t) = cosh(a t) + b
    // power:       f(t) = (t + a)^p
    // linear:      f(t) = a t + b
    WarpingFunction(Kind kind, double a, double b, Interval interval);

    static WarpingFunction constant(double a, Interval iv = {});
    static WarpingFunction exponential(double a, Interval iv = {});
    static WarpingFunction cosh_plus(double a, double b, Interval iv = {});
    static WarpingFunction power(double a, double p, Interval iv);
    static WarpingFunction linear(double a, double b, Interval iv);

    double value(double t) const;
    double d1(double t) const;
    double d2(double t) const;

    /// d/dt ln f = f'/f.
    double log_d1(double t) const { return d1(t) / value(t); }

    Kind kind() const { return kind_; }
    double coeff_a() const { return a_; }
    double coeff_b() const { return b_; }
    const Interval& interval() const { return interval_; }
    std::string kind_name() const;

    void require_in_domain(double t) const;

private:
    void validate() const;

    Kind kind_;
    double a_;
    double b_;  // second coefficient; the exponent p for Kind::Power
    Interval interval_;
};

}  // namespace rwlab
