#pragma once

#include <functional>
#include <vector>

namespace dosg {

// Piecewise-linear test function given by breakpoints. Extended by constants
// outside the breakpoint span. Sup-norm and the optimal Lipschitz constant
// are exact: extrema and maximal slopes of a piecewise-linear function sit at
// breakpoints.
struct PiecewiseLinear {
    std::vector<double> xs;
    std::vector<double> ys;

    PiecewiseLinear() = default;
    PiecewiseLinear(std::vector<double> x, std::vector<double> y);

    static PiecewiseLinear constant(double c, double a, double b);
    static PiecewiseLinear identity(double a, double b);
    // Samples f on n+1 equispaced breakpoints over [a, b].
    static PiecewiseLinear sample(const std::function<double(double)>& f,
                                  double a, double b, int n);
    // Tent of the given height: 0 outside [center-halfw, center+halfw].
    static PiecewiseLinear hat(double center, double halfw, double height,
                               double a, double b);

    double eval(double x) const;
    double operator()(double x) const { return eval(x); }

    double sup_norm() const;
    double lipschitz() const;
    // The norm ||f||_inf + L_f used to normalize test functions.
    double lip_norm() const { return sup_norm() + lipschitz(); }

    double domain_min() const { return xs.front(); }
    double domain_max() const { return xs.back(); }

    PiecewiseLinear scaled(double c) const;
};

} // namespace dosg
