#include "rwlab/profile.hpp"

#include <cmath>
#include <utility>

namespace rwlab {

namespace {

struct PolyImpl : Profile::Impl {
    std::vector<double> c;
    double value(double u) const override {
        double s = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) s = s * u + c[i];
        return s;
    }
    double d1(double u) const override {
        double s = 0.0;
        for (std::size_t i = c.size(); i-- > 1;) s = s * u + i * c[i];
        return s;
    }
    double d2(double u) const override {
        double s = 0.0;
        for (std::size_t i = c.size(); i-- > 2;) s = s * u + i * (i - 1.0) * c[i];
        return s;
    }
};

struct TrigImpl : Profile::Impl {
    double a, b, c, d;
    double value(double u) const override { return a * std::sin(b * u + c) + d; }
    double d1(double u) const override { return a * b * std::cos(b * u + c); }
    double d2(double u) const override { return -a * b * b * std::sin(b * u + c); }
};

struct ExpImpl : Profile::Impl {
    double a, b, c;
    double value(double u) const override { return a * std::exp(b * u) + c; }
    double d1(double u) const override { return a * b * std::exp(b * u); }
    double d2(double u) const override { return a * b * b * std::exp(b * u); }
};

struct SumImpl : Profile::Impl {
    Profile p, q;
    SumImpl(Profile p_, Profile q_) : p(std::move(p_)), q(std::move(q_)) {}
    double value(double u) const override { return p.value(u) + q.value(u); }
    double d1(double u) const override { return p.d1(u) + q.d1(u); }
    double d2(double u) const override { return p.d2(u) + q.d2(u); }
};

struct AffineImpl : Profile::Impl {
    Profile base;
    double scale, offset;
    AffineImpl(Profile b, double s, double o) : base(std::move(b)), scale(s), offset(o) {}
    double value(double u) const override { return scale * base.value(u) + offset; }
    double d1(double u) const override { return scale * base.d1(u); }
    double d2(double u) const override { return scale * base.d2(u); }
};

struct QuadImpl : Profile::Impl {
    std::function<double(double)> g, g1;
    CumulativeIntegral integral;
    QuadImpl(std::function<double(double)> g_, std::function<double(double)> g1_, double x0,
             double lo, double hi, int panels)
        : g(std::move(g_)), g1(std::move(g1_)), integral(g, x0, lo, hi, panels) {}
    double value(double u) const override { return integral(u); }
    double d1(double u) const override { return g(u); }
    double d2(double u) const override { return g1(u); }
};

struct HermiteImpl : Profile::Impl {
    HermiteSeries series;
    double value(double u) const override { return series.value(u); }
    double d1(double u) const override { return series.d1(u); }
    double d2(double u) const override { return series.d2(u); }
};

struct WarpRecipImpl : Profile::Impl {
    double k;
    WarpingFunction f;
    WarpRecipImpl(double k_, WarpingFunction f_) : k(k_), f(std::move(f_)) {}
    double value(double u) const override { return k / f.value(u); }
    double d1(double u) const override {
        double v = f.value(u);
        return -k * f.d1(u) / (v * v);
    }
    double d2(double u) const override {
        double v = f.value(u), vp = f.d1(u);
        return k * (2.0 * vp * vp - f.d2(u) * v) / (v * v * v);
    }
};

struct CustomImpl : Profile::Impl {
    std::function<double(double)> v, dv, ddv;
    double value(double u) const override { return v(u); }
    double d1(double u) const override { return dv(u); }
    double d2(double u) const override { return ddv(u); }
};

}  // namespace

Profile Profile::constant(double c) { return poly({c}); }

Profile Profile::linear(double a, double b) { return poly({b, a}); }

Profile Profile::poly(std::vector<double> coeffs) {
    auto impl = std::make_shared<PolyImpl>();
    impl->kind = "poly";
    impl->c = std::move(coeffs);
    return make(impl);
}

Profile Profile::trig(double a, double b, double c, double d) {
    auto impl = std::make_shared<TrigImpl>();
    impl->kind = "trig";
    impl->a = a;
    impl->b = b;
    impl->c = c;
    impl->d = d;
    return make(impl);
}

Profile Profile::exponential(double a, double b, double c) {
    auto impl = std::make_shared<ExpImpl>();
    impl->kind = "exp";
    impl->a = a;
    impl->b = b;
    impl->c = c;
    return make(impl);
}

Profile Profile::sum(Profile p, Profile q) {
    auto impl = std::make_shared<SumImpl>(std::move(p), std::move(q));
    impl->kind = "sum";
    return make(impl);
}

Profile Profile::affine(Profile base, double scale, double offset) {
    auto impl = std::make_shared<AffineImpl>(std::move(base), scale, offset);
    impl->kind = "affine";
    return make(impl);
}

Profile Profile::quadrature(std::function<double(double)> g, std::function<double(double)> g1,
                            double x0, double lo, double hi, int panels) {
    auto impl = std::make_shared<QuadImpl>(std::move(g), std::move(g1), x0, lo, hi, panels);
    impl->kind = "quadrature";
    return make(impl);
}

Profile Profile::hermite(HermiteSeries series) {
    auto impl = std::make_shared<HermiteImpl>();
    impl->kind = "hermite";
    impl->series = std::move(series);
    return make(impl);
}

Profile Profile::custom(std::string kind, std::function<double(double)> v,
                        std::function<double(double)> d1, std::function<double(double)> d2) {
    auto impl = std::make_shared<CustomImpl>();
    impl->kind = std::move(kind);
    impl->v = std::move(v);
    impl->dv = std::move(d1);
    impl->ddv = std::move(d2);
    return make(impl);
}

Profile Profile::warp_reciprocal(double k, WarpingFunction f) {
    auto impl = std::make_shared<WarpRecipImpl>(k, std::move(f));
    impl->kind = "warp_reciprocal";
    return make(impl);
}

}  // namespace rwlab
