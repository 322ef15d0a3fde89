#include "dosg/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dosg {

LpResult simplex_max(const std::vector<double>& A, const std::vector<double>& b,
                     const std::vector<double>& c, int m, int n,
                     std::int64_t max_iterations) {
    if (static_cast<int>(b.size()) != m || static_cast<int>(c.size()) != n ||
        A.size() != static_cast<std::size_t>(m) * n)
        throw std::invalid_argument("LP dimension mismatch");
    for (double bi : b)
        if (bi < 0.0) throw std::invalid_argument("simplex_max requires b >= 0");

    // tableau: m rows of [A | I | b], objective row below
    const int width = n + m + 1;
    std::vector<double> T(static_cast<std::size_t>(m + 1) * width, 0.0);
    auto at = [&](int r, int j) -> double& {
        return T[static_cast<std::size_t>(r) * width + j];
    };
    for (int r = 0; r < m; ++r) {
        for (int j = 0; j < n; ++j) at(r, j) = A[static_cast<std::size_t>(r) * n + j];
        at(r, n + r) = 1.0;
        at(r, n + m) = b[r];
    }
    for (int j = 0; j < n; ++j) at(m, j) = -c[j];

    std::vector<int> basis(m);
    for (int r = 0; r < m; ++r) basis[r] = n + r;

    const double eps = 1e-11;
    LpResult res;
    while (true) {
        // Bland: entering variable = smallest index with negative reduced cost
        int enter = -1;
        for (int j = 0; j < n + m; ++j) {
            if (at(m, j) < -eps) {
                enter = j;
                break;
            }
        }
        if (enter < 0) break;

        // ratio test, ties broken by smallest basis index (Bland)
        int leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < m; ++r) {
            const double a = at(r, enter);
            if (a > eps) {
                const double ratio = at(r, n + m) / a;
                if (ratio < best - 1e-15 ||
                    (std::abs(ratio - best) <= 1e-15 &&
                     (leave < 0 || basis[r] < basis[leave]))) {
                    best = ratio;
                    leave = r;
                }
            }
        }
        if (leave < 0) {
            res.status = LpStatus::Unbounded;
            return res;
        }
        if (++res.iterations > max_iterations) {
            res.status = LpStatus::IterationLimit;
            return res;
        }

        // pivot
        const double piv = at(leave, enter);
        for (int j = 0; j <= n + m; ++j) at(leave, j) /= piv;
        for (int r = 0; r <= m; ++r) {
            if (r == leave) continue;
            const double f = at(r, enter);
            if (f == 0.0) continue;
            for (int j = 0; j <= n + m; ++j) at(r, j) -= f * at(leave, j);
        }
        basis[leave] = enter;
    }

    res.x.assign(n, 0.0);
    for (int r = 0; r < m; ++r)
        if (basis[r] < n) res.x[basis[r]] = at(r, n + m);
    res.objective = at(m, n + m);
    return res;
}

} // namespace dosg
