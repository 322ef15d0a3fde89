#pragma once

#include <cstdint>
#include <vector>

namespace dosg {

enum class LpStatus { Optimal, Unbounded, IterationLimit };

struct LpResult {
    LpStatus status = LpStatus::Optimal;
    double objective = 0.0;
    std::vector<double> x;
    std::int64_t iterations = 0;
};

// Dense primal simplex with Bland's rule for
//   maximize c'x  subject to  A x <= b,  x >= 0,
// requiring b >= 0 (the slack basis is then feasible, no phase one).
// A is row-major m x n.
LpResult simplex_max(const std::vector<double>& A, const std::vector<double>& b,
                     const std::vector<double>& c, int m, int n,
                     std::int64_t max_iterations = 1'000'000);

} // namespace dosg
