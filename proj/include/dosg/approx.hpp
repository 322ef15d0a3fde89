#pragma once

#include "dosg/piecewise_linear.hpp"

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace dosg {

// Sharp constant in the Bernstein approximation bound
// ||B_n[g] - g||_inf <= c_b W_g(n^{-1/2}), c_b = (4306 + 837 sqrt 6) / 5832.
double bernstein_constant();

// Optimal exponent for the integrated-density modulus on lattices, 1/(2+e).
double zeta_iods();

// Optimal exponent for the Bethe modulus, 2e/(1+2e).
double zeta_bethe();

// Constant gamma_k(C) = 2 sqrt(log(k-1)) 2^{3/2} (2 sqrt(k-1) + C) c_b in the
// 1/2-log-Holder modulus for the Bethe lattice.
double gamma_k(int k, double C);

// K_0 = 2 (2+e) max{2, K_dC} for the lattice integrated-density bound; the
// log-Holder constant K_dC is a configuration input, not derivable here.
double iods_k0(double k_dc);

// Coefficients g(k/n) of the n-th Bernstein polynomial of g on [0,1].
std::vector<double> bernstein_coefficients(const std::function<double(double)>& g,
                                           int n);

// Evaluates the Bernstein polynomial with the given coefficient table by
// de Casteljau's scheme (convex combinations only). x must lie in [0,1].
double bernstein_eval(std::vector<double> coeffs, double x,
                      std::vector<double>& scratch);
double bernstein_eval(const std::function<double(double)>& g, int n, double x);

// Degree ceil((4 (rho + C) c_b L_f / eta)^2) guaranteeing a sup-error below
// eta/2 on [-rho-C, rho+C] for an L_f-Lipschitz function.
std::int64_t degree_for_accuracy(double lip, double rho, double C, double eta);

// Lower/upper Lipschitz cutoffs squeezing the step x <= E with transition
// width eps^zeta / 2; both have Lipschitz constant exactly 2 / eps^zeta.
std::pair<PiecewiseLinear, PiecewiseLinear>
iods_cutoffs(double E, double eps, double zeta, double a, double b);

// Truncated Chebyshev series sum_j c_j T_j((2x - (a+b)) / (b-a)) obtained by
// Chebyshev-Gauss quadrature at 4*(n_max+1) nodes; fit_error is the sup
// mismatch on a reference grid. Exact for polynomials of degree <= n_max.
struct ChebyshevExpansion {
    std::vector<double> coeffs;
    double a = -1.0;
    double b = 1.0;
    double fit_error = 0.0;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double eval(double x) const;
    // Max |d/dx| on [a,b], estimated on a dense grid. Used for trace bounds.
    double lipschitz_estimate() const;
};

ChebyshevExpansion chebyshev_coeffs(const std::function<double(double)>& f,
                                    int n_max, double a, double b,
                                    int error_grid = 2000);
ChebyshevExpansion chebyshev_coeffs(const PiecewiseLinear& f, int n_max,
                                    double a, double b, int error_grid = 2000);

} // namespace dosg
