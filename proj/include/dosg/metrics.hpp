#pragma once

#include "dosg/measure.hpp"

#include <string>
#include <vector>

namespace dosg {

// Optimizer certificate for the bounded-Lipschitz metric: values of the
// optimal test function on the union support, plus the norm split s + ell.
struct MetricResult {
    double value = 0.0;
    std::string method;
    std::vector<double> support;
    std::vector<double> f;
    double s = 0.0;
    double ell = 0.0;

    // Worst constraint slack of the certificate (>= -1e-9 required)
    // and the objective recomputed from the stored test function.
    double certificate_slack() const;
    double certificate_objective(const DiscreteMeasure& m1,
                                 const DiscreteMeasure& m2) const;
};

// L^1 distance of quantile functions. Computed twice, from the quantile and
// the CDF representation; the two agree to ~1e-12 (checked internally).
MetricResult d_krw(const DiscreteMeasure& m1, const DiscreteMeasure& m2);

struct DwOptions {
    int simplex_threshold = 140; // union sizes up to this use the dense simplex
    bool force_simplex = false;
    bool force_chain = false;
};

// Bounded-Lipschitz (Fortet-Mourier) distance
//   sup { |int f dm1 - int f dm2| : ||f||_inf + L_f <= 1 },
// an LP over test-function values on the union support with consecutive
// Lipschitz constraints. Small instances go through the dense simplex;
// larger ones through an exact chain-structured solver (concave line search
// in ell = L_f with a piecewise-linear dynamic program inside).
MetricResult d_w(const DiscreteMeasure& m1, const DiscreteMeasure& m2,
                 const DwOptions& opts = {});

// Cheap lower bound: best of `family_size` explicit test functions (soft
// steps anchored at support atoms plus a linear profile). Never exceeds d_w.
double d_w_lower(const DiscreteMeasure& m1, const DiscreteMeasure& m2,
                 int family_size = 64);

// Wasserstein-infinity: sup_u |q1(u) - q2(u)| over the merged partition.
MetricResult d_inf(const DiscreteMeasure& m1, const DiscreteMeasure& m2);

// Hausdorff distance of nonempty finite sets.
double hausdorff(std::vector<double> a, std::vector<double> b);

// Measures with CDFs max(F1,F2) (meet, the stochastically smaller one) and
// min(F1,F2) (join). d_KRW(m1, m2) = d_KRW(meet, join), and the quantile
// gap q_join - q_meet equals |q1 - q2|.
std::pair<DiscreteMeasure, DiscreteMeasure> meet_join(const DiscreteMeasure& m1,
                                                      const DiscreteMeasure& m2);

struct SandwichReport {
    double dw = 0.0;
    double dkrw = 0.0;
    double C = 0.0;
    bool ok = false; // d_w <= d_KRW <= (1+C) d_w within 1e-8
};

SandwichReport sandwich_check(const DiscreteMeasure& m1,
                              const DiscreteMeasure& m2, double C);

} // namespace dosg
