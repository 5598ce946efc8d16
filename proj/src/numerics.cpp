#include "rwlab/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "rwlab/errors.hpp"

namespace rwlab {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n < 2) n = 2;
    if (n % 2 != 0) ++n;
    double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return s * h / 3.0;
}

double simpson_with_error(const std::function<double(double)>& f, double a, double b, int n,
                          double* err) {
    double fine = simpson(f, a, b, n);
    double coarse = simpson(f, a, b, std::max(2, n / 2));
    if (err) *err = std::abs(fine - coarse) / 15.0;
    return fine;
}

CumulativeIntegral::CumulativeIntegral(std::function<double(double)> g, double x0, double lo,
                                       double hi, int panels)
    : g_(std::move(g)), x0_(x0), lo_(lo), hi_(hi) {
    if (!(lo < hi)) throw InvalidInput("CumulativeIntegral: empty range");
    if (panels < 2) panels = 2;
    h_ = (hi - lo) / panels;
    cum_.resize(panels + 1);
    cum_[0] = 0.0;
    for (int i = 0; i < panels; ++i) {
        cum_[i + 1] = cum_[i] + cell(lo + i * h_, lo + (i + 1) * h_);
    }
    at_x0_ = 0.0;
    at_x0_ = (*this)(x0);
}

double CumulativeIntegral::cell(double a, double b) const {
    return (b - a) / 6.0 * (g_(a) + 4.0 * g_(0.5 * (a + b)) + g_(b));
}

double CumulativeIntegral::operator()(double u) const {
    if (u < lo_ - 1e-12 || u > hi_ + 1e-12) {
        throw DomainError("quadrature cache queried outside its range");
    }
    double pos = (u - lo_) / h_;
    int i = std::clamp(static_cast<int>(pos), 0, static_cast<int>(cum_.size()) - 2);
    double from_lo = cum_[i] + cell(lo_ + i * h_, u);
    return from_lo - at_x0_;
}

void rk4_step(const std::function<std::vector<double>(double, const std::vector<double>&)>& f,
              double x, std::vector<double>& y, double h) {
    const std::size_t n = y.size();
    std::vector<double> k1 = f(x, y), tmp(n);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    std::vector<double> k2 = f(x + 0.5 * h, tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    std::vector<double> k3 = f(x + 0.5 * h, tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    std::vector<double> k4 = f(x + h, tmp);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

HermiteSeries::HermiteSeries(double x0, double h, std::vector<double> y, std::vector<double> y1,
                             std::vector<double> y2)
    : x0_(x0), h_(h), y_(std::move(y)), y1_(std::move(y1)), y2_(std::move(y2)) {
    if (y_.size() < 2 || y_.size() != y1_.size() || y_.size() != y2_.size()) {
        throw InvalidInput("HermiteSeries: inconsistent sample arrays");
    }
}

HermiteSeries::Cell HermiteSeries::locate(double x) const {
    double span = h_ * (static_cast<double>(y_.size()) - 1.0);
    if (x < x0_ - 1e-12 || x > x0_ + span + 1e-12) {
        throw DomainError("dense-output series queried outside its range");
    }
    double pos = (x - x0_) / h_;
    int i = std::clamp(static_cast<int>(pos), 0, static_cast<int>(y_.size()) - 2);
    return {i, pos - i};
}

double HermiteSeries::value(double x) const {
    auto [i, s] = locate(x);
    double d = y_[i + 1] - y_[i];
    double m0 = h_ * y1_[i], m1 = h_ * y1_[i + 1];
    double s0 = h_ * h_ * y2_[i], s1 = h_ * h_ * y2_[i + 1];
    double a0 = y_[i], a1 = m0, a2 = 0.5 * s0;
    double a3 = 10.0 * d - 6.0 * m0 - 4.0 * m1 - 1.5 * s0 + 0.5 * s1;
    double a4 = -15.0 * d + 8.0 * m0 + 7.0 * m1 + 1.5 * s0 - s1;
    double a5 = 6.0 * d - 3.0 * (m0 + m1) + 0.5 * (s1 - s0);
    return a0 + s * (a1 + s * (a2 + s * (a3 + s * (a4 + s * a5))));
}

double HermiteSeries::d1(double x) const {
    auto [i, s] = locate(x);
    double d = y_[i + 1] - y_[i];
    double m0 = h_ * y1_[i], m1 = h_ * y1_[i + 1];
    double s0 = h_ * h_ * y2_[i], s1 = h_ * h_ * y2_[i + 1];
    double a1 = m0, a2 = 0.5 * s0;
    double a3 = 10.0 * d - 6.0 * m0 - 4.0 * m1 - 1.5 * s0 + 0.5 * s1;
    double a4 = -15.0 * d + 8.0 * m0 + 7.0 * m1 + 1.5 * s0 - s1;
    double a5 = 6.0 * d - 3.0 * (m0 + m1) + 0.5 * (s1 - s0);
    double p = a1 + s * (2.0 * a2 + s * (3.0 * a3 + s * (4.0 * a4 + s * 5.0 * a5)));
    return p / h_;
}

double HermiteSeries::d2(double x) const {
    auto [i, s] = locate(x);
    double d = y_[i + 1] - y_[i];
    double m0 = h_ * y1_[i], m1 = h_ * y1_[i + 1];
    double s0 = h_ * h_ * y2_[i], s1 = h_ * h_ * y2_[i + 1];
    double a2 = 0.5 * s0;
    double a3 = 10.0 * d - 6.0 * m0 - 4.0 * m1 - 1.5 * s0 + 0.5 * s1;
    double a4 = -15.0 * d + 8.0 * m0 + 7.0 * m1 + 1.5 * s0 - s1;
    double a5 = 6.0 * d - 3.0 * (m0 + m1) + 0.5 * (s1 - s0);
    double p = 2.0 * a2 + s * (6.0 * a3 + s * (12.0 * a4 + s * 20.0 * a5));
    return p / (h_ * h_);
}

}  // namespace rwlab
