#pragma once

#include "dosg/hamiltonian.hpp"

#include <vector>

namespace dosg {

// Per-site polynomial moments. Chebyshev moments are
// mu_j(y) = <delta_y, T_j(Hhat) delta_y> with Hhat = (2H - (a+b)) / (b-a);
// power moments are <delta_y, H^j delta_y>. A closed walk of length j from y
// stays inside Lambda_{floor(j/2)}(y), so each site only ever sees the
// operator on that local ball.
struct MomentTable {
    std::vector<int> sites;
    int n_max = 0;
    double a = -1.0;
    double b = 1.0;
    std::vector<double> cheb;  // sites x (n_max+1)
    std::vector<double> power; // sites x (power_max+1), optional
    int power_max = -1;

    double mu(int site_idx, int j) const {
        return cheb[static_cast<std::size_t>(site_idx) * (n_max + 1) + j];
    }
    double pw(int site_idx, int j) const {
        return power[static_cast<std::size_t>(site_idx) * (power_max + 1) + j];
    }
};

// Computes Chebyshev moments for the listed sites. The scaling interval must
// contain the spectral enclosure [-rho - |V|, rho + |V|] so that |mu_j| <= 1.
// power_max >= 0 additionally records raw power moments (power_max <= 30).
MomentTable chebyshev_moments(const Hamiltonian& h, const std::vector<int>& sites,
                              int n_max, double a, double b, int power_max = -1);

// Default scaling interval with a small safety margin.
std::pair<double, double> default_moment_interval(const Hamiltonian& h);

// Verifies that sum_{y in Lambda_L} <delta_y, H_V^j delta_y> is unchanged
// when the potential outside Lambda_{L + floor(j/2)}(root) is replaced by W.
// True by locality; tolerance is 1e-10 relative.
bool finite_range_check(const RootedBall& ball, const std::vector<double>& V,
                        const std::vector<double>& W, int L, int j);

} // namespace dosg
