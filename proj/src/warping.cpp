#include "rwlab/warping.hpp"

#include <algorithm>
#include <cmath>

#include "rwlab/errors.hpp"

namespace rwlab {

WarpingFunction::WarpingFunction(Kind kind, double a, double b, Interval interval)
    : kind_(kind), a_(a), b_(b), interval_(interval) {
    validate();
}

WarpingFunction WarpingFunction::constant(double a, Interval iv) {
    return {Kind::Constant, a, 0.0, iv};
}
WarpingFunction WarpingFunction::exponential(double a, Interval iv) {
    return {Kind::Exponential, a, 0.0, iv};
}
WarpingFunction WarpingFunction::cosh_plus(double a, double b, Interval iv) {
    return {Kind::CoshPlus, a, b, iv};
}
WarpingFunction WarpingFunction::power(double a, double p, Interval iv) {
    return {Kind::Power, a, p, iv};
}
WarpingFunction WarpingFunction::linear(double a, double b, Interval iv) {
    return {Kind::Linear, a, b, iv};
}

double WarpingFunction::value(double t) const {
    switch (kind_) {
        case Kind::Constant: return a_;
        case Kind::Exponential: return std::exp(a_ * t);
        case Kind::CoshPlus: return std::cosh(a_ * t) + b_;
        case Kind::Power: return std::pow(t + a_, b_);
        case Kind::Linear: return a_ * t + b_;
    }
    return 0.0;
}

double WarpingFunction::d1(double t) const {
    switch (kind_) {
        case Kind::Constant: return 0.0;
        case Kind::Exponential: return a_ * std::exp(a_ * t);
        case Kind::CoshPlus: return a_ * std::sinh(a_ * t);
        case Kind::Power: return b_ * std::pow(t + a_, b_ - 1.0);
        case Kind::Linear: return a_;
    }
    return 0.0;
}

double WarpingFunction::d2(double t) const {
    switch (kind_) {
        case Kind::Constant: return 0.0;
        case Kind::Exponential: return a_ * a_ * std::exp(a_ * t);
        case Kind::CoshPlus: return a_ * a_ * std::cosh(a_ * t);
        case Kind::Power: return b_ * (b_ - 1.0) * std::pow(t + a_, b_ - 2.0);
        case Kind::Linear: return 0.0;
    }
    return 0.0;
}

std::string WarpingFunction::kind_name() const {
    switch (kind_) {
        case Kind::Constant: return "constant";
        case Kind::Exponential: return "exponential";
        case Kind::CoshPlus: return "cosh_plus";
        case Kind::Power: return "power";
        case Kind::Linear: return "linear";
    }
    return "?";
}

void WarpingFunction::require_in_domain(double t) const {
    if (!interval_.contains(t)) {
        throw DomainError("t = " + std::to_string(t) + " is outside the warping interval");
    }
}

void WarpingFunction::validate() const {
    if (interval_.lo >= interval_.hi) {
        throw InvalidInput("warping interval is empty");
    }
    // Closed-form sign analysis: find the zero set per kind and require it to
    // miss the interval.
    switch (kind_) {
        case Kind::Constant:
            if (a_ == 0.0) throw InvalidInput("constant warping must be nonzero");
            break;
        case Kind::Exponential:
            break;  // never zero
        case Kind::CoshPlus:
            if (b_ <= -1.0) {
                // cosh(a t) = -b has solutions; reject if one lies inside.
                if (a_ == 0.0) {
                    if (1.0 + b_ == 0.0) throw InvalidInput("cosh warping vanishes identically");
                } else {
                    double root = std::acosh(-b_) / std::abs(a_);
                    if (interval_.contains(root) || interval_.contains(-root)) {
                        throw InvalidInput("cosh warping vanishes inside the interval");
                    }
                }
            }
            break;
        case Kind::Power:
            if (interval_.contains(-a_)) {
                throw InvalidInput("power warping vanishes at t = " + std::to_string(-a_));
            }
            if (interval_.lo < -a_ && !std::isfinite(std::pow(interval_.lo + a_, b_))) {
                throw InvalidInput("power warping undefined below t = " + std::to_string(-a_));
            }
            break;
        case Kind::Linear:
            if (a_ == 0.0) {
                if (b_ == 0.0) throw InvalidInput("linear warping vanishes identically");
            } else if (interval_.contains(-b_ / a_)) {
                throw InvalidInput("linear warping vanishes inside the interval");
            }
            break;
    }
    // Sampling backstop over a bounded window of the interval.
    double lo = std::max(interval_.lo, -50.0);
    double hi = std::min(interval_.hi, 50.0);
    if (lo < hi) {
        for (int i = 1; i < 100; ++i) {
            double t = lo + (hi - lo) * i / 100.0;
            double v = value(t);
            if (!std::isfinite(v) || v == 0.0) {
                throw InvalidInput("warping function vanishes near t = " + std::to_string(t));
            }
        }
    }
}

}  // namespace rwlab
