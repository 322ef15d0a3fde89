#include "dosg/approx.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dosg {

double bernstein_constant() {
    return (4306.0 + 837.0 * std::sqrt(6.0)) / 5832.0;
}

double zeta_iods() { return 1.0 / (2.0 + std::numbers::e); }

double zeta_bethe() {
    return 2.0 * std::numbers::e / (1.0 + 2.0 * std::numbers::e);
}

double gamma_k(int k, double C) {
    if (k < 3 || C <= 0) throw std::invalid_argument("gamma_k needs k >= 3, C > 0");
    const double rho = 2.0 * std::sqrt(double(k - 1));
    return 2.0 * std::sqrt(std::log(double(k - 1))) * std::pow(2.0, 1.5) *
           (rho + C) * bernstein_constant();
}

double iods_k0(double k_dc) {
    return 2.0 * (2.0 + std::numbers::e) * std::max(2.0, k_dc);
}

std::vector<double> bernstein_coefficients(const std::function<double(double)>& g,
                                           int n) {
    if (n < 1) throw std::invalid_argument("Bernstein degree must be >= 1");
    std::vector<double> c(n + 1);
    for (int k = 0; k <= n; ++k) c[k] = g(double(k) / n);
    return c;
}

double bernstein_eval(std::vector<double> coeffs, double x,
                      std::vector<double>& scratch) {
    if (x < 0.0 || x > 1.0)
        throw std::domain_error("Bernstein evaluation needs x in [0,1]");
    scratch = std::move(coeffs);
    for (std::size_t m = scratch.size() - 1; m >= 1; --m)
        for (std::size_t k = 0; k < m; ++k)
            scratch[k] += x * (scratch[k + 1] - scratch[k]);
    return scratch[0];
}

double bernstein_eval(const std::function<double(double)>& g, int n, double x) {
    std::vector<double> scratch;
    return bernstein_eval(bernstein_coefficients(g, n), x, scratch);
}

std::int64_t degree_for_accuracy(double lip, double rho, double C, double eta) {
    if (lip <= 0 || rho <= 0 || C <= 0 || eta <= 0)
        throw std::invalid_argument("degree_for_accuracy needs positive arguments");
    const long double base =
        4.0L * (static_cast<long double>(rho) + C) * bernstein_constant() * lip / eta;
    const long double val = base * base;
    if (val >= static_cast<long double>(INT64_MAX))
        throw std::overflow_error("required degree exceeds 64-bit range");
    return static_cast<std::int64_t>(std::ceil(val));
}

std::pair<PiecewiseLinear, PiecewiseLinear>
iods_cutoffs(double E, double eps, double zeta, double a, double b) {
    if (!(eps > 0.0 && eps < 1.0) || zeta <= 0.0)
        throw std::invalid_argument("iods_cutoffs needs 0 < eps < 1 and zeta > 0");
    const double h = 0.5 * std::pow(eps, zeta);
    // breakpoints may extend past [a,b] so the transition slope is exact
    const double lo = std::min(a, E - h) - 1.0;
    const double hi = std::max(b, E + h) + 1.0;
    PiecewiseLinear minus({lo, E - h, E, hi}, {1.0, 1.0, 0.0, 0.0});
    PiecewiseLinear plus({lo, E, E + h, hi}, {1.0, 1.0, 0.0, 0.0});
    return {std::move(minus), std::move(plus)};
}

double ChebyshevExpansion::eval(double x) const {
    const double t = (2.0 * x - (a + b)) / (b - a);
    // Clenshaw recurrence
    double u1 = 0.0, u2 = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 1;) {
        const double u = 2.0 * t * u1 - u2 + coeffs[j];
        u2 = u1;
        u1 = u;
    }
    return t * u1 - u2 + coeffs[0];
}

double ChebyshevExpansion::lipschitz_estimate() const {
    const int grid = 4000;
    double m = 0.0;
    double prev = eval(a);
    for (int i = 1; i <= grid; ++i) {
        const double x = a + (b - a) * i / grid;
        const double cur = eval(x);
        m = std::max(m, std::abs(cur - prev) / ((b - a) / grid));
        prev = cur;
    }
    return m;
}

ChebyshevExpansion chebyshev_coeffs(const std::function<double(double)>& f,
                                    int n_max, double a, double b,
                                    int error_grid) {
    if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
    if (!(a < b)) throw std::invalid_argument("need a < b");
    const int N = 4 * (n_max + 1);
    std::vector<double> fx(N), theta(N);
    for (int i = 0; i < N; ++i) {
        theta[i] = std::numbers::pi * (i + 0.5) / N;
        const double t = std::cos(theta[i]);
        fx[i] = f(0.5 * ((b - a) * t + (a + b)));
    }
    ChebyshevExpansion e;
    e.a = a;
    e.b = b;
    e.coeffs.assign(n_max + 1, 0.0);
    for (int j = 0; j <= n_max; ++j) {
        double s = 0.0;
        for (int i = 0; i < N; ++i) s += fx[i] * std::cos(j * theta[i]);
        e.coeffs[j] = (j == 0 ? 1.0 : 2.0) * s / N;
    }
    double err = 0.0;
    for (int i = 0; i <= error_grid; ++i) {
        const double x = a + (b - a) * i / error_grid;
        err = std::max(err, std::abs(e.eval(x) - f(x)));
    }
    e.fit_error = err;
    return e;
}

ChebyshevExpansion chebyshev_coeffs(const PiecewiseLinear& f, int n_max,
                                    double a, double b, int error_grid) {
    return chebyshev_coeffs([&f](double x) { return f.eval(x); }, n_max, a, b,
                            error_grid);
}

} // namespace dosg
