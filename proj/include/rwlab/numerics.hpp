#pragma once

#include <functional>
#include <vector>

namespace rwlab {

/// Composite Simpson rule with n panels (n is rounded up to an even count).
double simpson(const std::function<double(double)>& f, double a, double b, int n);

/// Simpson with a step-halving error estimate: |S_n - S_{n/2}| / 15.
double simpson_with_error(const std::function<double(double)>& f, double a, double b, int n,
                          double* err);

/// Cumulative integral u -> int_{x0}^{u} g over a fixed grid, evaluable at
/// arbitrary points of [lo, hi]. Each grid cell is integrated with a single
/// Simpson step (midpoint sampled), so the composite error is O(h^4).
class CumulativeIntegral {
public:
    CumulativeIntegral(std::function<double(double)> g, double x0, double lo, double hi,
                       int panels);

    double operator()(double u) const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    double cell(double a, double b) const;

    std::function<double(double)> g_;
    double x0_, lo_, hi_, h_;
    std::vector<double> cum_;   // cumulative from lo_ at grid nodes
    double at_x0_;              // cumulative value at x0
};

/// One classical RK4 step for a first-order system y' = f(x, y).
void rk4_step(const std::function<std::vector<double>(double, const std::vector<double>&)>& f,
              double x, std::vector<double>& y, double h);

/// Uniform-grid dense output interpolated with quintic Hermite polynomials
/// from (value, first, second derivative) samples per node. Interpolation
/// error is O(h^6) in the value and O(h^5)/O(h^4) in the derivatives.
class HermiteSeries {
public:
    HermiteSeries() = default;
    HermiteSeries(double x0, double h, std::vector<double> y, std::vector<double> y1,
                  std::vector<double> y2);

    double value(double x) const;
    double d1(double x) const;
    double d2(double x) const;

    double lo() const { return x0_; }
    double hi() const { return x0_ + h_ * (static_cast<double>(y_.size()) - 1.0); }

private:
    struct Cell {
        int i;
        double s;  // local coordinate in [0,1]
    };
    Cell locate(double x) const;

    double x0_ = 0.0, h_ = 1.0;
    std::vector<double> y_, y1_, y2_;
};

}  // namespace rwlab
