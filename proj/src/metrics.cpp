#include "dosg/metrics.hpp"

#include "dosg/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dosg {

namespace {

// union support with per-measure weights
struct Merged {
    std::vector<double> x;
    std::vector<double> w1;
    std::vector<double> w2;
    std::vector<double> d; // w1 - w2
};

Merged merge_supports(const DiscreteMeasure& m1, const DiscreteMeasure& m2) {
    Merged out;
    std::size_t i = 0, j = 0;
    while (i < m1.size() || j < m2.size()) {
        double x, a = 0.0, b = 0.0;
        const bool take1 = j == m2.size() ||
                           (i < m1.size() && m1.pos[i] <= m2.pos[j]);
        const bool take2 = i == m1.size() ||
                           (j < m2.size() && m2.pos[j] <= m1.pos[i]);
        x = take1 ? m1.pos[i] : m2.pos[j];
        if (take1) a = m1.w[i++];
        if (take2) b = m2.w[j++];
        out.x.push_back(x);
        out.w1.push_back(a);
        out.w2.push_back(b);
        out.d.push_back(a - b);
    }
    return out;
}

double kahan_sum(const std::vector<double>& xs) {
    double s = 0.0, c = 0.0;
    for (double x : xs) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

// d_KRW from the quantile side: both quantile functions are step functions
// on [0,1]; integrate |q1 - q2| over the merged cumulative-weight partition.
double krw_quantile(const DiscreteMeasure& m1, const DiscreteMeasure& m2) {
    std::vector<double> terms;
    std::size_t i = 0, j = 0;
    double u = 0.0, c1 = m1.w[0], c2 = m2.w[0];
    while (true) {
        const double next = std::min(c1, c2);
        terms.push_back((next - u) * std::abs(m1.pos[i] - m2.pos[j]));
        u = next;
        if (u >= 1.0 - 1e-15) break;
        if (c1 <= c2 && i + 1 < m1.size()) c1 += m1.w[++i];
        else if (j + 1 < m2.size()) c2 += m2.w[++j];
        else if (i + 1 < m1.size()) c1 += m1.w[++i];
        else break;
    }
    return kahan_sum(terms);
}

// d_KRW from the CDF side: integral of |F1 - F2| over the union partition.
double krw_cdf(const DiscreteMeasure& m1, const DiscreteMeasure& m2) {
    const Merged mg = merge_supports(m1, m2);
    std::vector<double> terms;
    double F1 = 0.0, F2 = 0.0;
    for (std::size_t k = 0; k + 1 < mg.x.size(); ++k) {
        F1 += mg.w1[k];
        F2 += mg.w2[k];
        terms.push_back(std::abs(F1 - F2) * (mg.x[k + 1] - mg.x[k]));
    }
    return kahan_sum(terms);
}

} // namespace

double MetricResult::certificate_slack() const {
    double slack = 1.0 - (s + ell);
    for (std::size_t i = 0; i < f.size(); ++i) {
        slack = std::min(slack, s - std::abs(f[i]));
        if (i + 1 < f.size())
            slack = std::min(slack, ell * (support[i + 1] - support[i]) -
                                        std::abs(f[i + 1] - f[i]));
    }
    return slack;
}

double MetricResult::certificate_objective(const DiscreteMeasure& m1,
                                           const DiscreteMeasure& m2) const {
    const Merged mg = merge_supports(m1, m2);
    if (mg.x.size() != f.size()) return std::numeric_limits<double>::quiet_NaN();
    double obj = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) obj += f[i] * mg.d[i];
    return std::abs(obj);
}

MetricResult d_krw(const DiscreteMeasure& m1, const DiscreteMeasure& m2) {
    const double vq = krw_quantile(m1, m2);
    const double vc = krw_cdf(m1, m2);
    if (std::abs(vq - vc) > 1e-11 * std::max(1.0, std::abs(vq)))
        throw std::logic_error("KRW quantile/CDF formulas disagree");
    MetricResult r;
    r.value = vq;
    r.method = "krw-quantile/cdf";
    return r;
}

namespace {

// ---- chain-structured exact solver for d_w ----
//
// For fixed ell (and s = 1 - ell) the inner problem
//   max sum_i d_i f_i   s.t. |f_i| <= s, |f_{i+1} - f_i| <= ell dx_i
// is solved by a forward dynamic program over concave piecewise-linear value
// functions; the outer function of ell is concave, so a golden-section scan
// locates the optimum. Backtracking uses only each stage's argmax interval.

struct Concave {
    // breakpoints with strictly increasing t; linear between; concave
    std::vector<double> t;
    std::vector<double> g;

    double max_value() const {
        double m = -std::numeric_limits<double>::infinity();
        for (double v : g) m = std::max(m, v);
        return m;
    }
    // argmax interval
    std::pair<double, double> plateau() const {
        const double m = max_value();
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (g[i] >= m - 1e-14 * (1.0 + std::abs(m))) {
                lo = std::min(lo, t[i]);
                hi = std::max(hi, t[i]);
            }
        }
        return {lo, hi};
    }
    double eval(double x) const {
        if (x <= t.front()) return g.front();
        if (x >= t.back()) return g.back();
        const auto it = std::upper_bound(t.begin(), t.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - t.begin());
        const double u = (x - t[i - 1]) / (t[i] - t[i - 1]);
        return g[i - 1] + u * (g[i] - g[i - 1]);
    }
};

// sliding max over the window [x-c, x+c], then restrict to [-s, s]
Concave slide_and_clip(const Concave& G, double c, double s) {
    const auto [plo, phi] = G.plateau();
    const double gmax = G.max_value();

    std::vector<double> t, g;
    // left branch: G(x + c) for x < plo - c
    for (std::size_t i = 0; i < G.t.size(); ++i) {
        if (G.t[i] < plo) {
            t.push_back(G.t[i] - c);
            g.push_back(G.g[i]);
        }
    }
    t.push_back(plo - c);
    g.push_back(gmax);
    t.push_back(phi + c);
    g.push_back(gmax);
    for (std::size_t i = 0; i < G.t.size(); ++i) {
        if (G.t[i] > phi) {
            t.push_back(G.t[i] + c);
            g.push_back(G.g[i]);
        }
    }

    // clip to [-s, s]
    Concave raw{std::move(t), std::move(g)};
    Concave out;
    if (raw.t.front() < -s) {
        out.t.push_back(-s);
        out.g.push_back(raw.eval(-s));
    }
    for (std::size_t i = 0; i < raw.t.size(); ++i) {
        if (raw.t[i] >= -s && raw.t[i] <= s) {
            if (!out.t.empty() && raw.t[i] - out.t.back() < 1e-300) continue;
            out.t.push_back(raw.t[i]);
            out.g.push_back(raw.g[i]);
        }
    }
    if (out.t.empty() || out.t.back() < s) {
        out.t.push_back(s);
        out.g.push_back(raw.eval(s));
    }
    if (out.t.size() == 1) {
        out.t.push_back(out.t.front());
        out.g.push_back(out.g.front());
        out.t.back() += 1e-300;
    }
    return out;
}

void add_linear(Concave& G, double slope) {
    for (std::size_t i = 0; i < G.t.size(); ++i) G.g[i] += slope * G.t[i];
}

// remove numerically collinear interior breakpoints
void prune(Concave& G) {
    if (G.t.size() <= 2) return;
    std::vector<double> t{G.t.front()}, g{G.g.front()};
    for (std::size_t i = 1; i + 1 < G.t.size(); ++i) {
        const double lx = t.back(), ly = g.back();
        const double rx = G.t[i + 1], ry = G.g[i + 1];
        const double mid = ly + (ry - ly) * (G.t[i] - lx) / (rx - lx);
        if (std::abs(G.g[i] - mid) > 1e-15 * (1.0 + std::abs(G.g[i]))) {
            t.push_back(G.t[i]);
            g.push_back(G.g[i]);
        }
    }
    t.push_back(G.t.back());
    g.push_back(G.g.back());
    G.t = std::move(t);
    G.g = std::move(g);
}

struct ChainEval {
    double value = 0.0;
    std::vector<std::pair<double, double>> plateaus; // per stage
};

ChainEval chain_inner(const Merged& mg, double ell, bool want_plateaus) {
    ell = std::clamp(ell, 1e-12, 1.0 - 1e-12);
    const double s = 1.0 - ell;
    const std::size_t m = mg.x.size();
    ChainEval out;
    if (want_plateaus) out.plateaus.resize(m);

    Concave G;
    G.t = {-s, s};
    G.g = {-mg.d[0] * s, mg.d[0] * s};
    if (want_plateaus) out.plateaus[0] = G.plateau();
    for (std::size_t i = 1; i < m; ++i) {
        const double c = ell * (mg.x[i] - mg.x[i - 1]);
        G = slide_and_clip(G, c, s);
        add_linear(G, mg.d[i]);
        prune(G);
        if (want_plateaus) out.plateaus[i] = G.plateau();
    }
    out.value = G.max_value();
    return out;
}

MetricResult chain_solve(const Merged& mg) {
    // golden-section on the concave outer function of ell
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = 1.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = chain_inner(mg, c, false).value;
    double fd = chain_inner(mg, d, false).value;
    for (int it = 0; it < 120; ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = chain_inner(mg, c, false).value;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = chain_inner(mg, d, false).value;
        }
    }
    const double ell = 0.5 * (a + b);
    ChainEval ev = chain_inner(mg, ell, true);
    const double s = 1.0 - ell;

    // backtrack an optimal test function from the per-stage argmax intervals
    const std::size_t m = mg.x.size();
    std::vector<double> f(m, 0.0);
    {
        const auto [plo, phi] = ev.plateaus[m - 1];
        f[m - 1] = 0.5 * (plo + phi);
    }
    for (std::size_t i = m - 1; i-- > 0;) {
        const double c_i = ell * (mg.x[i + 1] - mg.x[i]);
        const auto [plo, phi] = ev.plateaus[i];
        double u;
        if (f[i + 1] - c_i > phi)
            u = f[i + 1] - c_i;
        else if (f[i + 1] + c_i < plo)
            u = f[i + 1] + c_i;
        else
            u = std::clamp(f[i + 1], plo, phi);
        f[i] = std::clamp(u, -s, s);
    }

    MetricResult r;
    r.value = std::max(0.0, ev.value);
    r.method = "dw-chain";
    r.support = mg.x;
    r.f = std::move(f);
    r.s = s;
    r.ell = ell;
    // the objective may carry the sign of d; flip the certificate if needed
    double obj = 0.0;
    for (std::size_t i = 0; i < m; ++i) obj += r.f[i] * mg.d[i];
    if (obj < 0.0)
        for (double& v : r.f) v = -v;
    return r;
}

MetricResult simplex_solve(const Merged& mg) {
    // variables: f_i = fp_i - fn_i (2m), then s, ell
    const int m = static_cast<int>(mg.x.size());
    const int n = 2 * m + 2;
    const int s_col = 2 * m, l_col = 2 * m + 1;
    const int rows = 2 * m + 2 * (m - 1) + 1;
    std::vector<double> A(static_cast<std::size_t>(rows) * n, 0.0);
    std::vector<double> b(rows, 0.0);
    auto at = [&](int r, int j) -> double& {
        return A[static_cast<std::size_t>(r) * n + j];
    };
    int r = 0;
    for (int i = 0; i < m; ++i) { // |f_i| <= s
        at(r, i) = 1.0;
        at(r, m + i) = -1.0;
        at(r, s_col) = -1.0;
        ++r;
        at(r, i) = -1.0;
        at(r, m + i) = 1.0;
        at(r, s_col) = -1.0;
        ++r;
    }
    for (int i = 0; i + 1 < m; ++i) { // |f_i - f_{i+1}| <= ell dx_i
        const double dx = mg.x[i + 1] - mg.x[i];
        at(r, i) = 1.0;
        at(r, m + i) = -1.0;
        at(r, i + 1) = -1.0;
        at(r, m + i + 1) = 1.0;
        at(r, l_col) = -dx;
        ++r;
        at(r, i) = -1.0;
        at(r, m + i) = 1.0;
        at(r, i + 1) = 1.0;
        at(r, m + i + 1) = -1.0;
        at(r, l_col) = -dx;
        ++r;
    }
    at(r, s_col) = 1.0; // s + ell <= 1
    at(r, l_col) = 1.0;
    b[r] = 1.0;
    ++r;

    std::vector<double> c(n, 0.0);
    for (int i = 0; i < m; ++i) {
        c[i] = mg.d[i];
        c[m + i] = -mg.d[i];
    }

    LpResult lp = simplex_max(A, b, c, rows, n);
    if (lp.status != LpStatus::Optimal)
        throw std::runtime_error("d_w simplex did not reach optimality");

    MetricResult res;
    res.value = std::max(0.0, lp.objective);
    res.method = "dw-simplex";
    res.support = mg.x;
    res.f.resize(m);
    for (int i = 0; i < m; ++i) res.f[i] = lp.x[i] - lp.x[m + i];
    res.s = lp.x[s_col];
    res.ell = lp.x[l_col];
    return res;
}

} // namespace

MetricResult d_w(const DiscreteMeasure& m1, const DiscreteMeasure& m2,
                 const DwOptions& opts) {
    const Merged mg = merge_supports(m1, m2);
    bool use_simplex =
        static_cast<int>(mg.x.size()) <= opts.simplex_threshold;
    if (opts.force_simplex) use_simplex = true;
    if (opts.force_chain) use_simplex = false;
    if (mg.x.size() == 1) { // identical single-atom measures
        MetricResult r;
        r.method = "dw-trivial";
        r.support = mg.x;
        r.f = {0.0};
        return r;
    }
    return use_simplex ? simplex_solve(mg) : chain_solve(mg);
}

double d_w_lower(const DiscreteMeasure& m1, const DiscreteMeasure& m2,
                 int family_size) {
    const Merged mg = merge_supports(m1, m2);
    const double lo = mg.x.front(), hi = mg.x.back();
    const double span = std::max(hi - lo, 1e-12);

    // CDF difference is constant between union support points
    std::vector<double> D(mg.x.size(), 0.0);
    {
        double F1 = 0.0, F2 = 0.0;
        for (std::size_t k = 0; k < mg.x.size(); ++k) {
            F1 += mg.w1[k];
            F2 += mg.w2[k];
            D[k] = F1 - F2;
        }
    }
    auto cdf_diff_integral = [&](double a, double b) {
        // integral over [a,b] of (F1 - F2)
        double acc = 0.0;
        for (std::size_t k = 0; k < mg.x.size(); ++k) {
            const double segl = mg.x[k];
            const double segr = (k + 1 < mg.x.size())
                                    ? mg.x[k + 1]
                                    : std::max(b, segl);
            const double l = std::max(a, segl), r = std::min(b, segr);
            if (r > l) acc += D[k] * (r - l);
        }
        return acc;
    };

    double best = 0.0;
    // linear profile
    {
        const double mid = 0.5 * (lo + hi);
        const double l = 1.0 / (1.0 + 0.5 * span);
        double v = 0.0;
        for (std::size_t k = 0; k < mg.x.size(); ++k)
            v += l * (mg.x[k] - mid) * mg.d[k];
        best = std::max(best, std::abs(v));
    }
    // soft steps anchored at support atoms
    const int n_widths = 8;
    const int n_pos = std::max(1, (family_size - 1) / n_widths);
    for (int p = 0; p < n_pos; ++p) {
        const std::size_t idx =
            (mg.x.size() - 1) * static_cast<std::size_t>(p) /
            std::max(1, n_pos - 1);
        const double t = mg.x[idx];
        for (int k = 0; k < n_widths; ++k) {
            const double h = span / static_cast<double>(1 << k);
            const double amp = h / (h + 2.0);
            const double v = (2.0 * amp / h) * cdf_diff_integral(t, t + h);
            best = std::max(best, std::abs(v));
        }
    }
    return best;
}

MetricResult d_inf(const DiscreteMeasure& m1, const DiscreteMeasure& m2) {
    double m = 0.0;
    std::size_t i = 0, j = 0;
    double c1 = m1.w[0], c2 = m2.w[0];
    while (true) {
        m = std::max(m, std::abs(m1.pos[i] - m2.pos[j]));
        const bool e1 = i + 1 >= m1.size(), e2 = j + 1 >= m2.size();
        if (e1 && e2) break;
        // exact cumulative ties advance both sides: the (i+1, j) pairing
        // would otherwise be charged to an empty u-interval
        if (!e1 && !e2 && c1 == c2) {
            c1 += m1.w[++i];
            c2 += m2.w[++j];
        } else if (!e1 && (e2 || c1 < c2)) {
            c1 += m1.w[++i];
        } else {
            c2 += m2.w[++j];
        }
    }
    MetricResult r;
    r.value = m;
    r.method = "dinf-quantile";
    return r;
}

double hausdorff(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("hausdorff needs nonempty sets");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    auto one_sided = [](const std::vector<double>& from,
                        const std::vector<double>& to) {
        double worst = 0.0;
        for (double x : from) {
            auto it = std::lower_bound(to.begin(), to.end(), x);
            double d = std::numeric_limits<double>::infinity();
            if (it != to.end()) d = std::min(d, *it - x);
            if (it != to.begin()) d = std::min(d, x - *(it - 1));
            worst = std::max(worst, d);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

std::pair<DiscreteMeasure, DiscreteMeasure>
meet_join(const DiscreteMeasure& m1, const DiscreteMeasure& m2) {
    const Merged mg = merge_supports(m1, m2);
    std::vector<double> pmax, wmax, pmin, wmin;
    double F1 = 0.0, F2 = 0.0, prev_max = 0.0, prev_min = 0.0;
    for (std::size_t k = 0; k < mg.x.size(); ++k) {
        F1 += mg.w1[k];
        F2 += mg.w2[k];
        const double fmax = std::max(F1, F2);
        const double fmin = std::min(F1, F2);
        if (fmax > prev_max) {
            pmax.push_back(mg.x[k]);
            wmax.push_back(fmax - prev_max);
            prev_max = fmax;
        }
        if (fmin > prev_min) {
            pmin.push_back(mg.x[k]);
            wmin.push_back(fmin - prev_min);
            prev_min = fmin;
        }
    }
    // meet: CDF = max (stochastically smaller); join: CDF = min
    return {DiscreteMeasure::from_atoms(std::move(pmax), std::move(wmax)),
            DiscreteMeasure::from_atoms(std::move(pmin), std::move(wmin))};
}

SandwichReport sandwich_check(const DiscreteMeasure& m1,
                              const DiscreteMeasure& m2, double C) {
    SandwichReport rep;
    rep.dw = d_w(m1, m2).value;
    rep.dkrw = d_krw(m1, m2).value;
    rep.C = C;
    rep.ok = rep.dw <= rep.dkrw + 1e-8 &&
             rep.dkrw <= (1.0 + C) * rep.dw + 1e-8;
    return rep;
}

} // namespace dosg
