#include "dosg/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dosg {

PiecewiseLinear::PiecewiseLinear(std::vector<double> x, std::vector<double> y)
    : xs(std::move(x)), ys(std::move(y)) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("piecewise-linear needs >= 2 breakpoints");
    if (!std::is_sorted(xs.begin(), xs.end()))
        throw std::invalid_argument("breakpoints must be sorted");
}

PiecewiseLinear PiecewiseLinear::constant(double c, double a, double b) {
    return PiecewiseLinear({a, b}, {c, c});
}

PiecewiseLinear PiecewiseLinear::identity(double a, double b) {
    return PiecewiseLinear({a, b}, {a, b});
}

PiecewiseLinear PiecewiseLinear::sample(const std::function<double(double)>& f,
                                        double a, double b, int n) {
    if (n < 1) throw std::invalid_argument("need n >= 1 segments");
    std::vector<double> xs(n + 1), ys(n + 1);
    for (int i = 0; i <= n; ++i) {
        xs[i] = a + (b - a) * i / n;
        ys[i] = f(xs[i]);
    }
    return PiecewiseLinear(std::move(xs), std::move(ys));
}

PiecewiseLinear PiecewiseLinear::hat(double center, double halfw, double height,
                                     double a, double b) {
    std::vector<double> xs{a, center - halfw, center, center + halfw, b};
    std::vector<double> ys{0, 0, height, 0, 0};
    // drop breakpoints that fall outside [a, b]
    std::vector<double> fx, fy;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0 && xs[i] <= fx.back()) continue;
        if (xs[i] < a || xs[i] > b) continue;
        fx.push_back(xs[i]);
        fy.push_back(ys[i]);
    }
    if (fx.size() < 2) return constant(0.0, a, b);
    return PiecewiseLinear(std::move(fx), std::move(fy));
}

double PiecewiseLinear::eval(double x) const {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

double PiecewiseLinear::sup_norm() const {
    double m = 0;
    for (double y : ys) m = std::max(m, std::abs(y));
    return m;
}

double PiecewiseLinear::lipschitz() const {
    double m = 0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double dx = xs[i] - xs[i - 1];
        if (dx > 0) m = std::max(m, std::abs(ys[i] - ys[i - 1]) / dx);
    }
    return m;
}

PiecewiseLinear PiecewiseLinear::scaled(double c) const {
    PiecewiseLinear out = *this;
    for (double& y : out.ys) y *= c;
    return out;
}

} // namespace dosg
