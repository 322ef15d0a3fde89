#include "dosg/moments.hpp"

#include "dosg/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace dosg {

std::pair<double, double> default_moment_interval(const Hamiltonian& h) {
    const double r = h.spectral_bound() + 0.1;
    return {-r, r};
}

MomentTable chebyshev_moments(const Hamiltonian& h, const std::vector<int>& sites,
                              int n_max, double a, double b, int power_max) {
    if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
    if (power_max > 30)
        throw std::invalid_argument("power moments supported up to degree 30");
    const double bound = h.spectral_bound();
    if (a > -bound || b < bound)
        throw std::invalid_argument(
            "scaling interval must contain the spectral enclosure");

    const auto& ball = h.graph();
    MomentTable t;
    t.sites = sites;
    t.n_max = n_max;
    t.a = a;
    t.b = b;
    t.power_max = power_max;
    t.cheb.assign(sites.size() * (n_max + 1), 0.0);
    if (power_max >= 0) t.power.assign(sites.size() * (power_max + 1), 0.0);

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const int reach = std::max(n_max, std::max(power_max, 0)) / 2 + 1;

    std::vector<int> mark(ball.n, -1);
    std::vector<int> local_id(ball.n, -1);

    std::vector<double> w0, w1, w2, pv, pw;
    for (std::size_t s = 0; s < sites.size(); ++s) {
        const int y = sites[s];
        if (y < 0 || y >= ball.n) throw std::out_of_range("site out of range");

        // breadth-first patch of radius `reach` around y
        std::vector<int> verts{y};
        std::vector<int> dist{0};
        mark[y] = static_cast<int>(s);
        local_id[y] = 0;
        for (std::size_t head = 0; head < verts.size(); ++head) {
            if (dist[head] == reach) continue;
            for (auto g : ball.neighbors(verts[head])) {
                if (mark[g] != static_cast<int>(s)) {
                    mark[g] = static_cast<int>(s);
                    local_id[g] = static_cast<int>(verts.size());
                    verts.push_back(g);
                    dist.push_back(dist[head] + 1);
                }
            }
        }
        const int m = static_cast<int>(verts.size());
        std::vector<std::int32_t> offs(m + 1, 0), nbrs;
        for (int v = 0; v < m; ++v) {
            for (auto g : ball.neighbors(verts[v]))
                if (mark[g] == static_cast<int>(s)) nbrs.push_back(local_id[g]);
            offs[v + 1] = static_cast<std::int32_t>(nbrs.size());
        }
        std::vector<double> diag(m);
        for (int v = 0; v < m; ++v) diag[v] = h.diagonal[verts[v]];

        auto apply_scaled = [&](const std::vector<double>& x, std::vector<double>& out) {
            for (int v = 0; v < m; ++v) {
                double acc = diag[v] * x[v];
                for (auto p = offs[v]; p < offs[v + 1]; ++p) acc += x[nbrs[p]];
                out[v] = (acc - center * x[v]) / half;
            }
        };

        // three-term recurrence w_{j+1} = 2 Hhat w_j - w_{j-1}
        w0.assign(m, 0.0);
        w0[0] = 1.0;
        t.cheb[s * (n_max + 1)] = 1.0;
        if (n_max >= 1) {
            w1.assign(m, 0.0);
            apply_scaled(w0, w1);
            t.cheb[s * (n_max + 1) + 1] = w1[0];
            w2.assign(m, 0.0);
            for (int j = 2; j <= n_max; ++j) {
                apply_scaled(w1, w2);
                for (int v = 0; v < m; ++v) w2[v] = 2.0 * w2[v] - w0[v];
                t.cheb[s * (n_max + 1) + j] = w2[0];
                std::swap(w0, w1);
                std::swap(w1, w2);
            }
        }

        if (power_max >= 0) {
            pv.assign(m, 0.0);
            pv[0] = 1.0;
            t.power[s * (power_max + 1)] = 1.0;
            pw.assign(m, 0.0);
            for (int j = 1; j <= power_max; ++j) {
                for (int v = 0; v < m; ++v) {
                    double acc = diag[v] * pv[v];
                    for (auto p = offs[v]; p < offs[v + 1]; ++p) acc += pv[nbrs[p]];
                    pw[v] = acc;
                }
                t.power[s * (power_max + 1) + j] = pw[0];
                std::swap(pv, pw);
            }
        }
    }
    return t;
}

bool finite_range_check(const RootedBall& ball, const std::vector<double>& V,
                        const std::vector<double>& W, int L, int j) {
    const int M = L + j / 2;
    if (M > ball.radius)
        throw std::out_of_range("modification radius exceeds the ball");
    auto shared = std::make_shared<RootedBall>(ball);
    const auto hv = assemble(shared, V);
    const auto hm = assemble(shared, modify_potential(V, W, ball, M));

    std::vector<int> sites;
    const int count = ball.count_within(L);
    sites.reserve(count);
    for (int v = 0; v < count; ++v) sites.push_back(v);

    const auto iv = default_moment_interval(hv);
    const auto im = default_moment_interval(hm);
    const double a = std::min(iv.first, im.first);
    const double b = std::max(iv.second, im.second);
    const auto tv = chebyshev_moments(hv, sites, 0, a, b, j);
    const auto tm = chebyshev_moments(hm, sites, 0, a, b, j);

    double s1 = 0.0, s2 = 0.0;
    for (std::size_t s = 0; s < sites.size(); ++s) {
        s1 += tv.pw(static_cast<int>(s), j);
        s2 += tm.pw(static_cast<int>(s), j);
    }
    const double scale = std::max({1.0, std::abs(s1), std::abs(s2)});
    return std::abs(s1 - s2) <= 1e-10 * scale;
}

} // namespace dosg
