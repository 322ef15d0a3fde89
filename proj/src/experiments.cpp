#include "dosg/experiments.hpp"

#include "dosg/approx.hpp"
#include "dosg/dos.hpp"
#include "dosg/metrics.hpp"
#include "dosg/parallel.hpp"
#include "dosg/random.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dosg {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// ---------- config plumbing ----------

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    is >> j;
    return j;
}

} // namespace

ExperimentConfig ExperimentConfig::make(const std::string& id,
                                        const std::optional<std::string>& path,
                                        std::uint64_t seed, int threads,
                                        const std::string& out_dir) {
    ExperimentConfig cfg;
    cfg.id = id;
    cfg.seed = seed;
    cfg.threads = std::max(1, threads);
    cfg.out_dir = out_dir;
    cfg.params = nlohmann::json::object();
    if (path) {
        nlohmann::json j = load_json_file(*path);
        if (j.contains(id)) j = j[id];
        for (auto it = j.begin(); it != j.end(); ++it) cfg.params[it.key()] = it.value();
        if (cfg.params.contains("seed")) cfg.seed = cfg.params["seed"].get<std::uint64_t>();
    }
    return cfg;
}

double ExperimentConfig::get_num(const std::string& key, double fallback) const {
    return params.contains(key) ? params[key].get<double>() : fallback;
}

int ExperimentConfig::get_int(const std::string& key, int fallback) const {
    return params.contains(key) ? params[key].get<int>() : fallback;
}

std::vector<double> ExperimentConfig::get_vec(const std::string& key,
                                              std::vector<double> fallback) const {
    return params.contains(key) ? params[key].get<std::vector<double>>()
                                : std::move(fallback);
}

std::vector<int> ExperimentConfig::get_ivec(const std::string& key,
                                            std::vector<int> fallback) const {
    return params.contains(key) ? params[key].get<std::vector<int>>()
                                : std::move(fallback);
}

std::string ExperimentConfig::canonical_json() const {
    nlohmann::json j;
    j["id"] = id;
    j["seed"] = seed;
    j["params"] = params;
    return j.dump(); // nlohmann keeps object keys sorted
}

std::string ExperimentConfig::config_hash() const {
    const std::string s = canonical_json();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::optional<SingleSiteMeasure>
ExperimentConfig::measure_param(const std::string& key) const {
    if (!params.contains(key)) return std::nullopt;
    const auto& j = params[key];
    if (j.contains("atoms")) {
        std::vector<SingleSiteMeasure::Atom> atoms;
        for (const auto& a : j["atoms"])
            atoms.push_back({a[0].get<double>(), a[1].get<double>()});
        return SingleSiteMeasure::atoms(std::move(atoms));
    }
    if (j.contains("cdf")) {
        std::vector<double> xs, Fs;
        for (const auto& p : j["cdf"]) {
            xs.push_back(p[0].get<double>());
            Fs.push_back(p[1].get<double>());
        }
        return SingleSiteMeasure::piecewise_cdf(std::move(xs), std::move(Fs));
    }
    throw std::runtime_error("measure config needs 'atoms' or 'cdf'");
}

namespace {

// ---------- shared numerics ----------

std::uint64_t cell_seed(const ExperimentConfig& cfg, std::uint64_t cell) {
    return splitmix64(cfg.seed ^ (0x9E3779B97F4A7C15ULL * (cell + 1)));
}

std::vector<double> iid_uniform_potential(const RootedBall& ball, double amp,
                                          std::uint64_t seed) {
    if (amp == 0.0) return std::vector<double>(ball.n, 0.0);
    return eval_potential(
        ball, PotentialSpec::random_iid(SingleSiteMeasure::uniform(-amp, amp), seed));
}

// i.i.d. perturbation rescaled so that ||V - W||_inf is exactly eps
std::vector<double> perturb_exact(const std::vector<double>& V, double eps,
                                  std::uint64_t seed) {
    std::vector<double> W = V;
    double mx = 0.0;
    std::vector<double> p(V.size());
    for (std::size_t i = 0; i < V.size(); ++i) {
        p[i] = uniform_symmetric(seed, i, 2, 1.0);
        mx = std::max(mx, std::abs(p[i]));
    }
    const double scale = (mx > 0) ? eps / mx : 0.0;
    for (std::size_t i = 0; i < V.size(); ++i) W[i] += scale * p[i];
    return W;
}

DiscreteMeasure fv_measure(const GraphFamily& fam, int L,
                           const std::vector<double>& V) {
    auto ball = std::make_shared<RootedBall>(build_ball(fam, L));
    return local_dos_eig(assemble(ball, V), L, DosBackend::FiniteVolumeEig);
}

// sup_E |F_1(E) - F_2(E)| for two equal-mass eigenvalue lists (exact)
double cdf_sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
    const double wa = 1.0 / double(a.size()), wb = 1.0 / double(b.size());
    std::size_t i = 0, j = 0;
    double m = 0.0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] <= b[j])) ++i;
        else ++j;
        m = std::max(m, std::abs(i * wa - j * wb));
    }
    return m;
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(xs[i]), ly = std::log(std::max(ys[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ResultRow row(const std::string& exp, const std::string& item, double measured,
              double bound, bool asserted, const std::string& note = "") {
    ResultRow r;
    r.experiment = exp;
    r.item = item;
    r.measured = measured;
    r.bound = bound;
    r.slack = bound - measured;
    r.pass = !asserted || measured <= bound;
    r.asserted = asserted;
    r.note = note;
    return r;
}

// normalized test family for functional-level weak-metric estimates
std::vector<PiecewiseLinear> lipschitz_test_family(double a, double b, int count) {
    std::vector<PiecewiseLinear> out;
    const double span = b - a;
    for (int i = 0; i < count; ++i) {
        const double center = a + span * (i + 0.5) / count;
        const double halfw = span * 0.12;
        PiecewiseLinear f = PiecewiseLinear::hat(center, halfw, 1.0, a, b);
        const double n = f.lip_norm();
        if (n > 0) out.push_back(f.scaled(1.0 / n));
    }
    PiecewiseLinear id = PiecewiseLinear::identity(a, b);
    out.push_back(id.scaled(1.0 / id.lip_norm()));
    return out;
}

// ---------- E-LATTICE-LIP ----------

ExperimentResult run_lattice_lipschitz(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.id = cfg.id;
    const auto dims = cfg.get_ivec("dims", {1, 2});
    const auto eps_grid = cfg.get_vec("eps", {0.5, 0.1, 0.02});
    const int seeds = cfg.get_int("seeds", 20);

    struct Cell {
        int d, L, style; // style 0 = iid, 1 = constant shift
        double eps;
        std::uint64_t seed_idx;
    };
    std::vector<Cell> cells;
    for (int d : dims) {
        const int L = cfg.get_int(d == 1 ? "L_d1" : "L_d2", d == 1 ? 500 : 20);
        for (double e : eps_grid)
            for (int s = 0; s < seeds; ++s)
                for (int style = 0; style < 2; ++style)
                    cells.push_back({d, L, style, e, static_cast<std::uint64_t>(s)});
    }

    std::vector<std::vector<ResultRow>> bucket(cells.size());
    parallel_cells(static_cast<int>(cells.size()), cfg.threads, [&](int ci) {
        const Cell& c = cells[ci];
        const GraphFamily fam = GraphFamily::zd(c.d);
        const RootedBall ball = build_ball(fam, c.L);
        const std::uint64_t s0 = cell_seed(cfg, (static_cast<std::uint64_t>(ci) << 8) + c.seed_idx);
        const std::vector<double> V = iid_uniform_potential(ball, 0.5, s0);
        std::vector<double> W;
        if (c.style == 0) {
            W = perturb_exact(V, c.eps, splitmix64(s0));
        } else {
            W = V;
            for (double& x : W) x += c.eps;
        }
        auto shared = std::make_shared<RootedBall>(ball);
        const DiscreteMeasure mv =
            local_dos_eig(assemble(shared, V), c.L, DosBackend::FiniteVolumeEig);
        const DiscreteMeasure mw =
            local_dos_eig(assemble(shared, W), c.L, DosBackend::FiniteVolumeEig);
        const MetricResult dw = d_w(mv, mw);

        std::ostringstream item;
        item << "d=" << c.d << ",L=" << c.L << ",eps=" << c.eps << ",seed="
             << c.seed_idx << "," << (c.style == 0 ? "iid" : "shift");
        auto& rows = bucket[ci];
        rows.push_back(row(cfg.id, "dw:" + item.str(), dw.value, c.eps + 1e-9, true,
                           "d_w <= ||V-W||_inf; " + dw.method));
        if (c.style == 1) {
            // constant shift translates every eigenvalue by exactly eps
            double worst = 0.0;
            for (std::size_t i = 0; i < mv.size(); ++i)
                worst = std::max(worst, std::abs(mw.pos[i] - mv.pos[i] - c.eps));
            rows.push_back(row(cfg.id, "translate:" + item.str(), worst, 1e-9, true,
                               "spectral translation under V + eps"));
            rows.push_back(row(cfg.id, "dw-ratio:" + item.str(), dw.value / c.eps,
                               1.0, false, "reported near-equality ratio"));
        }
    });
    for (auto& b : bucket)
        for (auto& r : b) res.rows.push_back(std::move(r));

    // moment-backend functional differences against the finite-volume bound
    // L_f |Lambda_M| / |Lambda_L| eps, with M the ambient radius
    for (int d : dims) {
        const int L = cfg.get_int(d == 1 ? "Lm_d1" : "Lm_d2", d == 1 ? 40 : 10);
        const int n_max = 20;
        const int M = L + (n_max + 1) / 2 + 1;
        const GraphFamily fam = GraphFamily::zd(d);
        const RootedBall ball = build_ball(fam, M);
        for (double e : eps_grid) {
            const std::uint64_t s0 = cell_seed(cfg, 7777 + d * 131 + static_cast<std::uint64_t>(e * 1e6));
            const std::vector<double> V = iid_uniform_potential(ball, 0.5, s0);
            const std::vector<double> W = perturb_exact(V, e, splitmix64(s0));
            auto shared = std::make_shared<RootedBall>(ball);
            const Hamiltonian hv = assemble(shared, V);
            const double r = hv.spectral_bound() + 0.2;
            const PiecewiseLinear hat = PiecewiseLinear::hat(0.0, 1.0, 1.0, -r, r);
            const ChebyshevExpansion p = chebyshev_coeffs(hat, n_max, -r, r);
            const double nv = local_dos_moment_poly(ball, V, L, p).value;
            const double nw = local_dos_moment_poly(ball, W, L, p).value;
            const double ratio =
                double(ball_cardinality(fam, M)) / double(ball_cardinality(fam, L));
            const double bound = p.lipschitz_estimate() * 1.02 * ratio * e + 1e-9;
            std::ostringstream item;
            item << "moment-lemma:d=" << d << ",L=" << L << ",M=" << M
                 << ",eps=" << e;
            res.rows.push_back(row(cfg.id, item.str(), std::abs(nv - nw), bound,
                                   true, "|n_L(p;V)-n_L(p;W)| vs L_p (|B_M|/|B_L|) eps"));
        }
    }
    return res;
}

// ---------- E-BETHE ----------

ExperimentResult run_bethe(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.id = cfg.id;
    const int k = cfg.get_int("k", 3);
    const double C = cfg.get_num("C", 1.0);
    const auto eps_grid = cfg.get_vec("eps", {0.5, 0.1, 0.02});
    const int seeds = cfg.get_int("seeds", 3);
    const int L = cfg.get_int("L", 6);
    const int n_max = cfg.get_int("n_max", 16);

    const GraphFamily fam = GraphFamily::bethe(k);
    const int M = L + (n_max + 1) / 2 + 1;
    const RootedBall ball = build_ball(fam, M);
    const double rho = fam.spectral_radius();
    const double r = rho + C + 0.1;
    const auto family_f = lipschitz_test_family(-r, r, 14);
    std::vector<ChebyshevExpansion> polys;
    for (const auto& f : family_f) polys.push_back(chebyshev_coeffs(f, n_max, -r, r));

    struct Cell {
        double eps;
        int seed;
    };
    std::vector<Cell> cells;
    for (double e : eps_grid)
        for (int s = 0; s < seeds; ++s) cells.push_back({e, s});

    std::vector<std::vector<ResultRow>> bucket(cells.size());
    parallel_cells(static_cast<int>(cells.size()), cfg.threads, [&](int ci) {
        const auto [eps, sd] = cells[ci];
        const std::uint64_t s0 = cell_seed(cfg, 100 + ci);
        const std::vector<double> V = iid_uniform_potential(ball, C - eps, s0);
        const std::vector<double> W = perturb_exact(V, eps, splitmix64(s0));
        double measured = 0.0;
        for (const auto& p : polys) {
            const double nv = local_dos_moment_poly(ball, V, L, p).value;
            const double nw = local_dos_moment_poly(ball, W, L, p).value;
            measured = std::max(measured, std::abs(nv - nw));
        }
        const double bound = gamma_k(k, C) / std::sqrt(std::log(1.0 / eps));
        std::ostringstream item;
        item << "dw-lower:k=" << k << ",L=" << L << ",eps=" << eps << ",seed=" << sd;
        bucket[ci].push_back(row(cfg.id, item.str(), measured, bound, true,
                                 "functional-family estimate vs gamma_k/sqrt(log(1/eps))"));
        bucket[ci].push_back(row(cfg.id, "ratio:" + item.str(), measured / bound,
                                 1.0, false, "reported modulus ratio"));
    });
    for (auto& b : bucket)
        for (auto& r2 : b) res.rows.push_back(std::move(r2));

    // single-site perturbation through the moment backend obeys the rank-one
    // trace bound |Tr(P_L (p(H + lambda pi_z) - p(H)) P_L)| <= L_p |lambda|
    {
        const std::uint64_t s0 = cell_seed(cfg, 991);
        const std::vector<double> V = iid_uniform_potential(ball, C, s0);
        const ChebyshevExpansion& p = polys[polys.size() / 2];
        const int nL = ball.count_within(L);
        for (int trial = 0; trial < 10; ++trial) {
            const int z = static_cast<int>(uniform01(s0, 50 + trial) * nL);
            const double lam = uniform_symmetric(s0, 80 + trial, 3, 1.0);
            std::vector<double> W = V;
            W[z] += lam;
            // enclosure widened by the rank-one bump
            const double rr = rho + C + std::abs(lam) + 0.1;
            const ChebyshevExpansion pp =
                chebyshev_coeffs([&](double x) { return p.eval(x); }, n_max, -rr, rr);
            const double nv = local_dos_moment_poly(ball, V, L, pp).value;
            const double nw = local_dos_moment_poly(ball, W, L, pp).value;
            const double tr_diff = std::abs(nv - nw) * nL;
            const double bound = pp.lipschitz_estimate() * 1.02 * std::abs(lam) + 1e-9;
            res.rows.push_back(row(cfg.id, "rank-one:trial=" + std::to_string(trial),
                                   tr_diff, bound, true,
                                   "moment-backend single-site perturbation"));
        }
    }
    return res;
}

// ---------- E-IODS ----------

ExperimentResult run_iods(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.id = cfg.id;
    const int d = cfg.get_int("d", 1);
    const int L = cfg.get_int("L", d == 1 ? 300 : 14);
    const auto eps_grid = cfg.get_vec("eps", {0.4, 0.2, 0.1, 0.05});
    const int seeds = cfg.get_int("seeds", 3);
    const double zeta = cfg.get_num("zeta", zeta_iods());
    const double k_dc = cfg.get_num("K_dC", 10.0);
    const auto E_grid =
        cfg.get_vec("E_grid", {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0});

    const GraphFamily fam = GraphFamily::zd(d);
    const RootedBall ball = build_ball(fam, L);

    std::vector<double> modulus(eps_grid.size(), 0.0);
    struct Cell {
        std::size_t ei;
        int seed;
    };
    std::vector<Cell> cells;
    for (std::size_t ei = 0; ei < eps_grid.size(); ++ei)
        for (int s = 0; s < seeds; ++s) cells.push_back({ei, s});
    std::vector<double> cell_sup(cells.size(), 0.0);

    parallel_cells(static_cast<int>(cells.size()), cfg.threads, [&](int ci) {
        const auto [ei, sd] = cells[ci];
        const double eps = eps_grid[ei];
        const std::uint64_t s0 = cell_seed(cfg, 300 + 17 * ci);
        const std::vector<double> V = iid_uniform_potential(ball, 1.0 - eps, s0);
        const std::vector<double> W = perturb_exact(V, eps, splitmix64(s0));
        double sup = 0.0;
        for (double E : E_grid) {
            const IodsBracket bv =
                iods_bracket(ball, V, L, E, eps, zeta, DosBackend::FiniteVolumeEig);
            const IodsBracket bw =
                iods_bracket(ball, W, L, E, eps, zeta, DosBackend::FiniteVolumeEig);
            sup = std::max(sup, std::max(std::abs(bv.lower - bw.lower),
                                         std::abs(bv.upper - bw.upper)));
        }
        cell_sup[ci] = sup;
    });

    const double K0 = iods_k0(k_dc);
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const auto [ei, sd] = cells[ci];
        const double eps = eps_grid[ei];
        modulus[ei] = std::max(modulus[ei], cell_sup[ci]);
        std::ostringstream item;
        item << "bracket-sup:eps=" << eps << ",seed=" << sd;
        res.rows.push_back(row(cfg.id, item.str(), cell_sup[ci],
                               K0 / std::log(1.0 / eps), true,
                               "sup_E bracket distance vs K0/log(1/eps), K_dC config"));
    }

    // functional form: fitted on the largest eps, the smaller ones must obey
    // c / log(1/eps) within 25%
    const double c_fit = modulus[0] * std::log(1.0 / eps_grid[0]);
    for (std::size_t ei = 1; ei < eps_grid.size(); ++ei) {
        const double allowed =
            std::max(c_fit, 1e-12) / std::log(1.0 / eps_grid[ei]) * 1.25;
        std::ostringstream item;
        item << "log-decay:eps=" << eps_grid[ei];
        res.rows.push_back(row(cfg.id, item.str(), modulus[ei], allowed, true,
                               "modulus decays no slower than c/log(1/eps)"));
    }

    // free-operator control at E = 0: shift by eps, Holder exponent 1/2
    for (double eps : eps_grid) {
        const std::vector<double> V0(ball.n, 0.0);
        std::vector<double> W0(ball.n, eps);
        const IodsBracket b0 =
            iods_bracket(ball, V0, L, 0.0, eps, zeta, DosBackend::FiniteVolumeEig);
        const IodsBracket b1 =
            iods_bracket(ball, W0, L, 0.0, eps, zeta, DosBackend::FiniteVolumeEig);
        const double diff = std::max(std::abs(b0.lower - b1.lower),
                                     std::abs(b0.upper - b1.upper));
        std::ostringstream item;
        item << "free-E0:eps=" << eps;
        res.rows.push_back(row(cfg.id, item.str(), diff, std::sqrt(eps), true,
                               "free-IDS Holder control at E=0"));
    }

    // bracket nesting in eps (same V, fixed E)
    {
        const std::uint64_t s0 = cell_seed(cfg, 5555);
        const std::vector<double> V = iid_uniform_potential(ball, 0.6, s0);
        double prev_lo = -1.0, prev_hi = 2.0;
        bool nested = true;
        for (double eps : eps_grid) { // decreasing
            const IodsBracket b =
                iods_bracket(ball, V, L, 0.25, eps, zeta, DosBackend::FiniteVolumeEig);
            if (b.lower < prev_lo - 1e-12 || b.upper > prev_hi + 1e-12) nested = false;
            prev_lo = b.lower;
            prev_hi = b.upper;
        }
        res.rows.push_back(row(cfg.id, "bracket-nesting", nested ? 0.0 : 1.0, 0.5,
                               true, "brackets shrink as eps decreases"));
    }
    return res;
}

// ---------- E-WEAK ----------

ExperimentResult run_weak_coupling(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.id = cfg.id;
    const auto dims = cfg.get_ivec("dims", {1, 2});
    const auto lambdas = cfg.get_vec("lambda", {0.5, 0.25, 0.125});
    const int seeds = cfg.get_int("seeds", 3);

    for (int d : dims) {
        const int L = cfg.get_int(d == 1 ? "L_d1" : "L_d2", d == 1 ? 400 : 16);
        const GraphFamily fam = GraphFamily::zd(d);
        const RootedBall ball = build_ball(fam, L);
        const double delta = (d == 1) ? 0.5 : 1.0;
        const double decay_target = std::pow(2.0, -delta / (1.0 + delta)) * 1.25;

        struct Cell {
            int seed;
        };
        std::vector<std::vector<ResultRow>> bucket(seeds);
        parallel_cells(seeds, cfg.threads, [&](int s) {
            const std::uint64_t s0 = cell_seed(cfg, 900 + 31 * s + d);
            std::vector<double> V = iid_uniform_potential(ball, 1.0, s0);
            double mx = 0.0;
            for (double x : V) mx = std::max(mx, std::abs(x));
            for (double& x : V) x /= mx; // ||V||_inf = 1 exactly
            auto shared = std::make_shared<RootedBall>(ball);

            const DiscreteMeasure m0 = local_dos_eig(
                assemble(shared, std::vector<double>(ball.n, 0.0)), L,
                DosBackend::FiniteVolumeEig);
            const SpectralDecomposition sd0 =
                eig(assemble(shared, std::vector<double>(ball.n, 0.0)), false);

            std::vector<double> M_lambda;
            for (double lam : lambdas) {
                std::vector<double> Vl = V;
                for (double& x : Vl) x *= lam;
                const Hamiltonian h = assemble(shared, Vl);
                const DiscreteMeasure ml =
                    local_dos_eig(h, L, DosBackend::FiniteVolumeEig);
                const MetricResult dw = d_w(ml, m0);
                std::ostringstream item;
                item << "dw:d=" << d << ",lambda=" << lam << ",seed=" << s;
                bucket[s].push_back(row(cfg.id, item.str(), dw.value, lam + 1e-9,
                                        true, "d_w(dos(lam V), dos(0)) <= lam"));
                const SpectralDecomposition sdl = eig(h, false);
                M_lambda.push_back(cdf_sup_distance(sdl.eigenvalues, sd0.eigenvalues));
            }
            for (std::size_t i = 0; i + 1 < lambdas.size(); ++i) {
                std::ostringstream item;
                item << "ids-decay:d=" << d << ",lambda=" << lambdas[i + 1]
                     << ",seed=" << s;
                bucket[s].push_back(row(cfg.id, item.str(), M_lambda[i + 1],
                                        M_lambda[i] * decay_target, true,
                                        "M(lam/2) <= M(lam) 2^{-delta/(1+delta)} 1.25"));
            }
            // fitted exponent, reported against the theorem target
            const double slope = loglog_slope(lambdas, M_lambda);
            std::ostringstream item;
            item << "ids-exponent:d=" << d << ",seed=" << s;
            bucket[s].push_back(row(cfg.id, item.str(), -slope,
                                    -delta / (1.0 + delta), false,
                                    "fitted IoDS exponent (target 1/3 or 1/2)"));
        });
        for (auto& b : bucket)
            for (auto& r : b) res.rows.push_back(std::move(r));
    }
    return res;
}

// ---------- E-METRICS ----------

DiscreteMeasure random_measure(std::uint64_t seed, int max_atoms, double carrier) {
    const int n = 1 + static_cast<int>(uniform01(seed, 0, 11) * max_atoms);
    std::vector<double> pos(n), w(n);
    double tot = 0.0;
    for (int i = 0; i < n; ++i) {
        pos[i] = uniform_symmetric(seed, 100 + i, 12, carrier);
        w[i] = 0.05 + uniform01(seed, 200 + i, 13);
        tot += w[i];
    }
    for (double& x : w) x /= tot;
    // exact unit mass
    double s = 0.0;
    for (int i = 0; i + 1 < n; ++i) s += w[i];
    w[n - 1] = 1.0 - s;
    return DiscreteMeasure::from_atoms(std::move(pos), std::move(w));
}

// Exact brute-force optimum of the d_w program by exhausting basic
// solutions: every subset of n active constraints is solved as an equality
// system and screened for feasibility. Independent of the simplex and chain
// solvers. Feasible for union supports of up to ~5 points.
double dw_vertex_oracle(const DiscreteMeasure& m1, const DiscreteMeasure& m2) {
    // collect the union support and weight differences
    std::vector<double> xs, d;
    {
        std::size_t i = 0, j = 0;
        while (i < m1.size() || j < m2.size()) {
            double x, a = 0.0, b = 0.0;
            const bool t1 = j == m2.size() || (i < m1.size() && m1.pos[i] <= m2.pos[j]);
            const bool t2 = i == m1.size() || (j < m2.size() && m2.pos[j] <= m1.pos[i]);
            x = t1 ? m1.pos[i] : m2.pos[j];
            if (t1) a = m1.w[i++];
            if (t2) b = m2.w[j++];
            xs.push_back(x);
            d.push_back(a - b);
        }
    }
    const int m = static_cast<int>(xs.size());
    const int n = m + 2; // f_1..f_m, s, ell
    // constraint rows: a.x <= b
    std::vector<std::vector<double>> A;
    std::vector<double> rhs;
    auto add = [&](std::vector<double> a, double b) {
        A.push_back(std::move(a));
        rhs.push_back(b);
    };
    for (int i = 0; i < m; ++i) {
        std::vector<double> a(n, 0.0);
        a[i] = 1.0;
        a[m] = -1.0;
        add(a, 0.0);
        a[i] = -1.0;
        add(a, 0.0);
    }
    for (int i = 0; i + 1 < m; ++i) {
        const double dx = xs[i + 1] - xs[i];
        std::vector<double> a(n, 0.0);
        a[i] = 1.0;
        a[i + 1] = -1.0;
        a[m + 1] = -dx;
        add(a, 0.0);
        a[i] = -1.0;
        a[i + 1] = 1.0;
        add(a, 0.0);
    }
    {
        std::vector<double> a(n, 0.0);
        a[m] = 1.0;
        a[m + 1] = 1.0;
        add(a, 1.0);
        std::vector<double> b(n, 0.0);
        b[m] = -1.0;
        add(b, 0.0);
        std::vector<double> c(n, 0.0);
        c[m + 1] = -1.0;
        add(c, 0.0);
    }
    const int nc = static_cast<int>(A.size());

    double best = 0.0;
    std::vector<int> pick(n);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == n) {
            // solve the active system by Gaussian elimination
            std::vector<double> M(static_cast<std::size_t>(n) * (n + 1), 0.0);
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) M[r * (n + 1) + c] = A[pick[r]][c];
                M[r * (n + 1) + n] = rhs[pick[r]];
            }
            for (int col = 0; col < n; ++col) {
                int piv = -1;
                double mx = 1e-9;
                for (int r = col; r < n; ++r)
                    if (std::abs(M[r * (n + 1) + col]) > mx) {
                        mx = std::abs(M[r * (n + 1) + col]);
                        piv = r;
                    }
                if (piv < 0) return; // singular basis
                for (int c = 0; c <= n; ++c)
                    std::swap(M[col * (n + 1) + c], M[piv * (n + 1) + c]);
                const double p = M[col * (n + 1) + col];
                for (int r = 0; r < n; ++r) {
                    if (r == col) continue;
                    const double f = M[r * (n + 1) + col] / p;
                    if (f == 0.0) continue;
                    for (int c = col; c <= n; ++c)
                        M[r * (n + 1) + c] -= f * M[col * (n + 1) + c];
                }
            }
            std::vector<double> x(n);
            for (int r = 0; r < n; ++r)
                x[r] = M[r * (n + 1) + n] / M[r * (n + 1) + r];
            for (int r = 0; r < nc; ++r) {
                double lhs = 0.0;
                for (int c = 0; c < n; ++c) lhs += A[r][c] * x[c];
                if (lhs > rhs[r] + 1e-9) return; // infeasible vertex
            }
            double obj = 0.0;
            for (int i = 0; i < m; ++i) obj += d[i] * x[i];
            best = std::max(best, std::abs(obj));
            return;
        }
        for (int c = start; c <= nc - (n - depth); ++c) {
            pick[depth] = c;
            rec(c + 1, depth + 1);
        }
    };
    rec(0, 0);
    return best;
}

ExperimentResult run_metrics_suite(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.id = cfg.id;
    const int pairs = cfg.get_int("pairs", 100);
    const double C = cfg.get_num("C", 1.0);

    // pinned two-point value
    {
        const MetricResult r = d_w(DiscreteMeasure::point(0.0), DiscreteMeasure::point(1.0));
        res.rows.push_back(row(cfg.id, "dw-delta01", std::abs(r.value - 2.0 / 3.0),
                               1e-9, true, "d_w(delta_0, delta_1) = 2/3"));
    }

    double worst_oracle = 0.0, worst_sandwich = 0.0, worst_krw = 0.0;
    double worst_mj = 0.0, worst_cert = 0.0, worst_chain_vs_simplex = 0.0;
    double worst_order = 0.0, worst_triangle = 0.0, worst_lower = 0.0;
    for (int t = 0; t < pairs; ++t) {
        const std::uint64_t s0 = cell_seed(cfg, 40000 + t);
        // shared 3-point support pair for the exact oracle
        {
            std::vector<double> pos(3);
            for (int i = 0; i < 3; ++i) pos[i] = uniform_symmetric(s0, i, 21, 1.0);
            std::sort(pos.begin(), pos.end());
            if (pos[1] - pos[0] < 1e-6) pos[1] = pos[0] + 1e-3;
            if (pos[2] - pos[1] < 1e-6) pos[2] = pos[1] + 1e-3;
            auto mk = [&](int stream) {
                std::vector<double> w(3);
                double tot = 0;
                for (int i = 0; i < 3; ++i) {
                    w[i] = 0.05 + uniform01(s0, i, stream);
                    tot += w[i];
                }
                for (double& x : w) x /= tot;
                w[2] = 1.0 - w[0] - w[1];
                auto p = pos;
                return DiscreteMeasure::from_atoms(std::move(p), std::move(w));
            };
            const DiscreteMeasure a = mk(22), b = mk(23);
            const MetricResult lp = d_w(a, b, {.force_simplex = true});
            const double oracle = dw_vertex_oracle(a, b);
            worst_oracle = std::max(worst_oracle, std::abs(lp.value - oracle));
            worst_cert = std::max(worst_cert, -lp.certificate_slack());
            worst_cert = std::max(
                worst_cert, std::abs(lp.certificate_objective(a, b) - lp.value));
        }
        // general random pairs
        const DiscreteMeasure a = random_measure(splitmix64(s0 ^ 1), 6, C);
        const DiscreteMeasure b = random_measure(splitmix64(s0 ^ 2), 6, C);
        const SandwichReport sw = sandwich_check(a, b, C);
        if (!sw.ok)
            worst_sandwich = std::max(
                worst_sandwich,
                std::max(sw.dw - sw.dkrw, sw.dkrw - (1 + C) * sw.dw));
        const double dkrw = d_krw(a, b).value;
        const double dinf = d_inf(a, b).value;
        worst_order = std::max(worst_order, sw.dw - dkrw);
        worst_order = std::max(worst_order, dkrw - dinf);
        worst_lower = std::max(worst_lower, d_w_lower(a, b) - sw.dw);

        // quantile vs CDF agreement, recomputed here to expose the number
        const double v1 = d_krw(a, b).value, v2 = d_krw(b, a).value;
        worst_krw = std::max(worst_krw, std::abs(v1 - v2));

        const auto [meet, join] = meet_join(a, b);
        worst_mj = std::max(worst_mj, std::abs(d_krw(meet, join).value - dkrw));

        const MetricResult chain = d_w(a, b, {.force_chain = true});
        worst_chain_vs_simplex =
            std::max(worst_chain_vs_simplex, std::abs(chain.value - sw.dw));

        // triangle inequality on a random triple
        const DiscreteMeasure c = random_measure(splitmix64(s0 ^ 3), 6, C);
        worst_triangle = std::max(
            worst_triangle, d_krw(a, c).value - (d_krw(a, b).value + d_krw(b, c).value));
        worst_triangle =
            std::max(worst_triangle,
                     d_w(a, c).value - (d_w(a, b).value + d_w(b, c).value));
        worst_triangle = std::max(
            worst_triangle, d_inf(a, c).value - (d_inf(a, b).value + d_inf(b, c).value));
    }
    res.rows.push_back(row(cfg.id, "dw-lp-vs-oracle", worst_oracle, 1e-4, true,
                           "simplex vs basic-solution enumeration"));
    res.rows.push_back(row(cfg.id, "sandwich", worst_sandwich, 1e-8, true,
                           "d_w <= d_KRW <= (1+C) d_w"));
    res.rows.push_back(row(cfg.id, "krw-symmetry", worst_krw, 1e-12, true, ""));
    res.rows.push_back(row(cfg.id, "meet-join-krw", worst_mj, 1e-10, true,
                           "d_KRW(meet, join) = d_KRW(m1, m2)"));
    res.rows.push_back(row(cfg.id, "dw-certificate", worst_cert, 1e-9, true,
                           "certificate feasibility and objective"));
    res.rows.push_back(row(cfg.id, "dw-chain-vs-simplex", worst_chain_vs_simplex,
                           1e-7, true, "two solver routes agree"));
    res.rows.push_back(row(cfg.id, "metric-order", worst_order, 1e-9, true,
                           "d_w <= d_KRW <= d_inf"));
    res.rows.push_back(row(cfg.id, "triangle", worst_triangle, 1e-9, true, ""));
    res.rows.push_back(row(cfg.id, "dw-lower-bound", worst_lower, 1e-10, true,
                           "d_w_lower <= d_w"));
    {
        const double lower =
            d_w_lower(DiscreteMeasure::point(0.0), DiscreteMeasure::point(1.0), 64);
        res.rows.push_back(row(cfg.id, "dw-lower-delta01", 0.6, lower, true,
                               "family attains >= 0.6 on (delta_0, delta_1)"));
    }
    return res;
}

// ---------- E-HAUSDORFF ----------

ExperimentResult run_hausdorff(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.id = cfg.id;
    const int d = cfg.get_int("d", 1);
    const GraphFamily fam = GraphFamily::zd(d);

    // (a) random perturbations: dist_H(spec(H_V), spec(H_W)) <= ||V-W||
    {
        const int L = cfg.get_int("L_perturb", 150);
        const int trials = cfg.get_int("perturb_trials", 100);
        const double eps = cfg.get_num("perturb_eps", 0.3);
        const RootedBall ball = build_ball(fam, L);
        auto shared = std::make_shared<RootedBall>(ball);
        std::vector<double> worst(trials, 0.0);
        parallel_cells(trials, cfg.threads, [&](int t) {
            const std::uint64_t s0 = cell_seed(cfg, 600 + t);
            const std::vector<double> V = iid_uniform_potential(ball, 0.7, s0);
            const std::vector<double> W = perturb_exact(V, eps, splitmix64(s0));
            const auto ev = eig(assemble(shared, V), false).eigenvalues;
            const auto ew = eig(assemble(shared, W), false).eigenvalues;
            worst[t] = hausdorff(ev, ew);
        });
        const double w = *std::max_element(worst.begin(), worst.end());
        res.rows.push_back(row(cfg.id, "perturb-bound", w, eps + 1e-9, true,
                               "dist_H(spec V, spec W) <= ||V-W||_inf, 100 trials"));
    }

    // (b) Kunz-Souillard support: accumulated spectra against sigma(Delta)+supp(mu)
    {
        const int L = cfg.get_int("L_ks", 1500);
        const int seeds = cfg.get_int("ks_seeds", 10);
        SingleSiteMeasure mu = cfg.measure_param("ks_measure")
                                   .value_or(SingleSiteMeasure::two_point(0.5, 0.0, 7.0));
        const RootedBall ball = build_ball(fam, L);
        auto shared = std::make_shared<RootedBall>(ball);
        std::vector<std::vector<double>> acc(seeds);
        parallel_cells(seeds, cfg.threads, [&](int s) {
            const std::vector<double> V =
                sample_random_potential(ball, mu, cell_seed(cfg, 700 + s));
            acc[s] = eig(assemble(shared, V), false).eigenvalues;
        });
        std::vector<double> all;
        for (auto& a : acc) all.insert(all.end(), a.begin(), a.end());
        std::vector<double> predicted;
        for (const auto& atom : mu.atom_list())
            for (int i = 0; i <= 400; ++i)
                predicted.push_back(atom.pos - 2.0 * d + 4.0 * d * i / 400.0);
        const double dh = hausdorff(all, predicted);
        res.rows.push_back(row(cfg.id, "kunz-souillard", dh, 0.5, false,
                               "accumulated spectra vs sigma(Delta)+supp(mu)"));
    }

    // (c) Bernoulli example mu_4 = (3/4) delta_0 + (1/4) delta_{100d}
    {
        const int L = cfg.get_int("L_example", 5000);
        const int seeds = cfg.get_int("example_seeds", 20);
        const double hi = 100.0 * d;
        const SingleSiteMeasure mu4 = SingleSiteMeasure::two_point(0.75, 0.0, hi);
        const RootedBall ball = build_ball(fam, L);
        auto shared = std::make_shared<RootedBall>(ball);

        std::vector<std::vector<double>> acc(seeds + 1);
        parallel_cells(seeds + 1, cfg.threads, [&](int s) {
            std::vector<double> V;
            if (s == seeds) V.assign(ball.n, 0.0);
            else V = sample_random_potential(ball, mu4, cell_seed(cfg, 800 + s));
            acc[s] = eig(assemble(shared, V), false).eigenvalues;
        });
        std::vector<double> spec_mu, spec_free = acc[seeds];
        for (int s = 0; s < seeds; ++s)
            spec_mu.insert(spec_mu.end(), acc[s].begin(), acc[s].end());

        const double dh = hausdorff(spec_mu, spec_free);
        // the example's separation value: distance between the emergent band
        // and the unperturbed spectrum (the Hausdorff distance itself tends
        // to 100d and is reported alongside)
        const double split = hi / 2.0;
        double band_min = std::numeric_limits<double>::infinity();
        for (double x : spec_mu)
            if (x > split) band_min = std::min(band_min, x);
        const double base_max = *std::max_element(spec_free.begin(), spec_free.end());
        const double gap = band_min - base_max;
        res.rows.push_back(row(cfg.id, "example-band-gap-low", 95.0 * d, gap, true,
                               "band separation vs 96d (lower edge)"));
        res.rows.push_back(row(cfg.id, "example-band-gap-high", gap, 97.0 * d, true,
                               "band separation vs 96d (upper edge)"));
        res.rows.push_back(row(cfg.id, "example-hausdorff", dh, 100.0 * d, false,
                               "plain Hausdorff distance (tends to 100d)"));
    }
    {
        const double hi = 100.0 * d;
        const DiscreteMeasure m4 = DiscreteMeasure::from_atoms({0.0, hi}, {0.75, 0.25});
        const DiscreteMeasure m0 = DiscreteMeasure::point(0.0);
        res.rows.push_back(row(cfg.id, "example-krw",
                               std::abs(d_krw(m4, m0).value - 25.0 * d), 1e-12, true,
                               "d_KRW(mu_4, delta_0) = 100d/4"));
        res.rows.push_back(row(cfg.id, "example-dinf", d_inf(m4, m0).value,
                               100.0 * d + 1e-12, false, "d_inf = 100d"));
    }
    return res;
}

// ---------- E-APPA ----------

ExperimentResult run_appendix_a(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.id = cfg.id;
    const auto L_z1 = cfg.get_ivec("L_z1", {50, 100, 200, 400});
    const auto L_bethe = cfg.get_ivec("L_bethe", {4, 5, 6, 7, 8, 9, 10});
    const int n_max = cfg.get_int("n_max", 16);
    const int z1_seeds = cfg.get_int("z1_seeds", 2);

    // piecewise-linear surrogate of the resolvent real part t/(t^2+1)
    auto surrogate = [](double r) {
        return PiecewiseLinear::sample([](double t) { return t / (t * t + 1.0); },
                                       -r, r, 200);
    };

    // Z^1: gap between finite-volume and ambient functionals decays ~ 1/L
    {
        const GraphFamily fam = GraphFamily::zd(1);
        struct Cell {
            int L;
            int seed; // -1 = free
        };
        std::vector<Cell> cells;
        for (int L : L_z1)
            for (int s = -1; s < z1_seeds; ++s) cells.push_back({L, s});
        std::vector<double> gaps(cells.size(), 0.0);
        std::vector<double> xcheck(cells.size(), 0.0);
        parallel_cells(static_cast<int>(cells.size()), cfg.threads, [&](int ci) {
            const auto [L, sd] = cells[ci];
            const RootedBall amb = build_ball(fam, 2 * L);
            std::vector<double> V(amb.n, 0.0);
            if (sd >= 0) V = iid_uniform_potential(amb, 0.5, cell_seed(cfg, 210 + sd));
            auto shared = std::make_shared<RootedBall>(amb);
            const Hamiltonian h = assemble(shared, V);
            const double r = h.spectral_bound() + 0.1;
            const PiecewiseLinear f = surrogate(r);
            const ChebyshevExpansion p = chebyshev_coeffs(f, n_max, -r, r);

            const Hamiltonian hl = restrict_ball(h, L);
            const auto evl = eig(hl, false).eigenvalues;
            double fv = 0.0;
            for (double x : evl) fv += p.eval(x);
            fv /= static_cast<double>(evl.size());

            const DiscreteMeasure amb_m = local_dos_eig(h, L, DosBackend::AmbientEig);
            const double av = amb_m.expect([&](double x) { return p.eval(x); });
            gaps[ci] = std::abs(fv - av);
            // ambient eig agrees with the moment route (both are the
            // infinite-volume polynomial trace, by locality)
            const double mom = local_dos_moment_poly(amb, V, L, p).value;
            xcheck[ci] = std::abs(av - mom);
        });
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            std::ostringstream item;
            item << "z1-gap:L=" << cells[ci].L << ",seed=" << cells[ci].seed;
            res.rows.push_back(row(cfg.id, item.str(), gaps[ci],
                                   10.0 / cells[ci].L, false, "reported gap"));
            res.rows.push_back(row(cfg.id,
                                   "z1-ambient-vs-moment:L=" +
                                       std::to_string(cells[ci].L) +
                                       ",seed=" + std::to_string(cells[ci].seed),
                                   xcheck[ci], 1e-8, true,
                                   "two infinite-volume routes agree"));
        }
        // slope per seed series
        for (int s = -1; s < z1_seeds; ++s) {
            std::vector<double> xs, ys;
            for (std::size_t ci = 0; ci < cells.size(); ++ci) {
                if (cells[ci].seed == s) {
                    xs.push_back(cells[ci].L);
                    ys.push_back(std::max(gaps[ci], 1e-16));
                }
            }
            const double slope = loglog_slope(xs, ys);
            std::ostringstream item;
            item << "z1-slope:seed=" << s;
            res.rows.push_back(row(cfg.id, item.str(), slope, -0.8, true,
                                   "log-log decay slope of the gap"));
        }
    }

    // Bethe: the same gap stays bounded away from zero
    {
        const GraphFamily fam = GraphFamily::bethe(3);
        std::vector<double> gaps(L_bethe.size(), 0.0);
        parallel_cells(static_cast<int>(L_bethe.size()), cfg.threads, [&](int i) {
            const int L = L_bethe[i];
            const int M = L + (n_max + 1) / 2 + 1;
            const RootedBall amb = build_ball(fam, M);
            const std::vector<double> V =
                iid_uniform_potential(amb, 0.5, cell_seed(cfg, 260));
            auto shared = std::make_shared<RootedBall>(amb);
            const Hamiltonian h = assemble(shared, V);
            const double r = h.spectral_bound() + 0.1;
            const PiecewiseLinear f = surrogate(r);
            const ChebyshevExpansion p = chebyshev_coeffs(f, n_max, -r, r);

            const auto evl = eig(restrict_ball(h, L), false).eigenvalues;
            double fv = 0.0;
            for (double x : evl) fv += p.eval(x);
            fv /= static_cast<double>(evl.size());
            const double inf_val = local_dos_moment_poly(amb, V, L, p).value;
            gaps[i] = std::abs(fv - inf_val);
        });
        double gmin = 1e300, gmax = 0.0;
        for (std::size_t i = 0; i < L_bethe.size(); ++i) {
            std::ostringstream item;
            item << "bethe-gap:L=" << L_bethe[i];
            res.rows.push_back(row(cfg.id, item.str(), gaps[i], 1.0, false,
                                   "reported gap (no decay expected)"));
            gmin = std::min(gmin, gaps[i]);
            gmax = std::max(gmax, gaps[i]);
        }
        res.rows.push_back(row(cfg.id, "bethe-gap-ratio", gmax / std::max(gmin, 1e-300),
                               3.0, false, "max/min gap over the L schedule"));
        const double bethe_slope =
            loglog_slope(std::vector<double>(L_bethe.begin(), L_bethe.end()), gaps);
        res.rows.push_back(row(cfg.id, "bethe-slope", bethe_slope, 0.0, false,
                               "reported for contrast with the lattice decay"));
    }

    // constant f: both functionals normalize to 1, the gap vanishes
    {
        const GraphFamily fam = GraphFamily::zd(1);
        const RootedBall amb = build_ball(fam, 60);
        auto shared = std::make_shared<RootedBall>(amb);
        const Hamiltonian h = assemble(shared, std::vector<double>(amb.n, 0.0));
        const DiscreteMeasure amb_m = local_dos_eig(h, 30, DosBackend::AmbientEig);
        const double gap = std::abs(1.0 - amb_m.expect([](double) { return 1.0; }));
        res.rows.push_back(row(cfg.id, "constant-f", gap, 1e-10, true,
                               "normalization gap vanishes for constant f"));
    }
    return res;
}

// ---------- E-APB ----------

double ap_bound(double C0, double rho, double C, double eps) {
    return C0 * std::log(2.0 + 2.0 * (rho + C) / eps) * eps;
}

ExperimentResult run_appendix_b(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.id = cfg.id;
    const double C0 = cfg.get_num("C0", 1.0);
    const double C = cfg.get_num("C", 1.0);
    const auto eps_grid = cfg.get_vec("eps", {0.5, 0.1, 0.02});
    const int seeds = cfg.get_int("seeds", 3);

    // formula-level comparisons
    res.rows.push_back(row(cfg.id, "ap-vanishes", ap_bound(C0, 2.0, C, 1e-6), 1e-4,
                           true, "eps log(2 + a/eps) -> 0"));
    for (double e : eps_grid) {
        res.rows.push_back(row(cfg.id, "native-tighter-lattice:eps=" + fmt(e), e,
                               ap_bound(C0, 2.0, C, e), true,
                               "lattice native bound eps below AP form"));
        const double bethe_native = gamma_k(3, C) / std::sqrt(std::log(1.0 / e));
        res.rows.push_back(row(cfg.id, "ap-tighter-bethe:eps=" + fmt(e),
                               ap_bound(C0, 2.0 * std::sqrt(2.0), C, e), bethe_native,
                               true, "AP form below the 1/2-log-Holder bound"));
    }

    // measured lattice functional differences vs both bounds; fitted C0
    const int L = cfg.get_int("L", 300);
    const GraphFamily fam = GraphFamily::zd(1);
    const RootedBall ball = build_ball(fam, L);
    struct Cell {
        double eps;
        int seed;
    };
    std::vector<Cell> cells;
    for (double e : eps_grid)
        for (int s = 0; s < seeds; ++s) cells.push_back({e, s});
    std::vector<double> meas(cells.size(), 0.0);
    parallel_cells(static_cast<int>(cells.size()), cfg.threads, [&](int ci) {
        const auto [e, s] = cells[ci];
        const std::uint64_t s0 = cell_seed(cfg, 1200 + ci);
        const std::vector<double> V = iid_uniform_potential(ball, C - e, s0);
        const std::vector<double> W = perturb_exact(V, e, splitmix64(s0));
        const DiscreteMeasure mv = fv_measure(fam, L, V);
        const DiscreteMeasure mw = fv_measure(fam, L, W);
        meas[ci] = d_w(mv, mw).value;
    });
    double fitted_c0 = 0.0;
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const auto [e, s] = cells[ci];
        fitted_c0 = std::max(fitted_c0, meas[ci] / (std::log(2.0 + 2.0 * (2.0 + C) / e) * e));
        std::ostringstream item;
        item << "lattice-vs-ap:eps=" << e << ",seed=" << s;
        res.rows.push_back(row(cfg.id, item.str(), meas[ci],
                               ap_bound(C0, 2.0, C, e), true,
                               "measured d_w vs AP bound at configured C0"));
    }
    res.rows.push_back(row(cfg.id, "fitted-C0", fitted_c0, C0, false,
                           "smallest C0 making the AP bound hold (fit, not truth)"));
    return res;
}

// ---------- registry ----------

} // namespace

const std::vector<std::string>& experiment_ids() {
    static const std::vector<std::string> ids = {
        "E-LATTICE-LIP", "E-BETHE", "E-IODS", "E-WEAK",
        "E-METRICS",     "E-HAUSDORFF", "E-APPA", "E-APB"};
    return ids;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentResult res;
    if (cfg.id == "E-LATTICE-LIP") res = run_lattice_lipschitz(cfg);
    else if (cfg.id == "E-BETHE") res = run_bethe(cfg);
    else if (cfg.id == "E-IODS") res = run_iods(cfg);
    else if (cfg.id == "E-WEAK") res = run_weak_coupling(cfg);
    else if (cfg.id == "E-METRICS") res = run_metrics_suite(cfg);
    else if (cfg.id == "E-HAUSDORFF") res = run_hausdorff(cfg);
    else if (cfg.id == "E-APPA") res = run_appendix_a(cfg);
    else if (cfg.id == "E-APB") res = run_appendix_b(cfg);
    else throw std::invalid_argument("unknown experiment id: " + cfg.id);

    for (const auto& r : res.rows)
        if (r.asserted && !r.pass) res.pass_all = false;
    res.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

void write_outputs(const ExperimentConfig& cfg, const ExperimentResult& result) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    {
        std::ofstream csv(fs::path(cfg.out_dir) / (cfg.id + ".csv"));
        csv << "experiment,item,measured,bound,slack,pass,asserted,note\n";
        for (const auto& r : result.rows) {
            std::string note = r.note;
            std::replace(note.begin(), note.end(), ',', ';');
            csv << r.experiment << "," << r.item << "," << fmt(r.measured) << ","
                << fmt(r.bound) << "," << fmt(r.slack) << "," << (r.pass ? 1 : 0)
                << "," << (r.asserted ? 1 : 0) << "," << note << "\n";
        }
    }
    {
        nlohmann::json j;
        j["id"] = cfg.id;
        j["seed"] = cfg.seed;
        j["config"] = nlohmann::json::parse(cfg.canonical_json());
        j["config_hash"] = cfg.config_hash();
        j["pass_all"] = result.pass_all;
        j["rows"] = result.rows.size();
        j["version"] = "dosg 0.1.0";
        std::ofstream js(fs::path(cfg.out_dir) / (cfg.id + ".json"));
        js << j.dump(2) << "\n";
    }
    {
        // wall-clock diagnostics; the one output excluded from the
        // byte-reproducibility contract
        std::ofstream log(fs::path(cfg.out_dir) / "timing.log", std::ios::app);
        log << cfg.id << " " << result.runtime_seconds << " s\n";
    }
}

} // namespace dosg
