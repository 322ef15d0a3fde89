#include "dosg/dos.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dosg {

std::string backend_name(DosBackend b) {
    switch (b) {
    case DosBackend::MomentExact: return "moment";
    case DosBackend::FiniteVolumeEig: return "finite-volume-eig";
    case DosBackend::AmbientEig: return "ambient-eig";
    }
    return "?";
}

std::string DosEstimate::to_json() const {
    std::ostringstream os;
    os << "{\"family\":\"" << family.name() << "\",\"L\":" << L
       << ",\"ambient\":" << ambient << ",\"root\":" << root
       << ",\"backend\":\"" << backend_name(backend) << "\",\"f\":\""
       << f_descriptor << "\",\"value\":" << value << "}";
    return os.str();
}

std::string IodsBracket::to_json() const {
    std::ostringstream os;
    os << "{\"E\":" << E << ",\"lower\":" << lower << ",\"upper\":" << upper
       << ",\"eps\":" << eps << ",\"zeta\":" << zeta << "}";
    return os.str();
}

namespace {

std::vector<int> sites_within(const RootedBall& ball, int L) {
    const int m = ball.count_within(L);
    std::vector<int> sites(m);
    std::iota(sites.begin(), sites.end(), 0);
    return sites;
}

int required_ambient(int L, int n_max) { return L + (n_max + 1) / 2 + 1; }

DosEstimate moment_functional(const RootedBall& ball, const std::vector<double>& V,
                              int L, const ChebyshevExpansion& p,
                              const std::string& descriptor) {
    auto shared = std::make_shared<RootedBall>(ball);
    const Hamiltonian h = assemble(shared, V);
    const auto sites = sites_within(ball, L);
    const MomentTable t =
        chebyshev_moments(h, sites, p.degree(), p.a, p.b);
    double acc = 0.0;
    for (std::size_t s = 0; s < sites.size(); ++s) {
        double val = 0.0;
        for (int j = 0; j <= p.degree(); ++j) val += p.coeffs[j] * t.mu(static_cast<int>(s), j);
        acc += val;
    }
    DosEstimate e;
    e.value = acc / static_cast<double>(sites.size());
    e.family = ball.family;
    e.L = L;
    e.ambient = ball.radius;
    e.root = ball.root;
    e.backend = DosBackend::MomentExact;
    e.f_descriptor = descriptor;
    return e;
}

} // namespace

DosEstimate local_dos_moment(const RootedBall& ball, const std::vector<double>& V,
                             int L, const PiecewiseLinear& f, int n_max) {
    if (ball.radius < required_ambient(L, n_max))
        throw std::invalid_argument(
            "ambient radius too small for the requested moment degree");
    auto shared = std::make_shared<RootedBall>(ball);
    const Hamiltonian h = assemble(shared, V);
    const auto [a, b] = default_moment_interval(h);
    const ChebyshevExpansion p = chebyshev_coeffs(f, n_max, a, b);
    std::ostringstream d;
    d << "pwl-cheb" << n_max << "-fit" << p.fit_error;
    return moment_functional(ball, V, L, p, d.str());
}

DosEstimate local_dos_moment_poly(const RootedBall& ball,
                                  const std::vector<double>& V, int L,
                                  const ChebyshevExpansion& p) {
    if (ball.radius < required_ambient(L, p.degree()))
        throw std::invalid_argument(
            "ambient radius too small for the requested moment degree");
    // the expansion interval must dominate the spectral enclosure
    auto shared = std::make_shared<RootedBall>(ball);
    const Hamiltonian h = assemble(shared, V);
    const double bound = h.spectral_bound();
    if (p.a > -bound || p.b < bound)
        throw std::invalid_argument("polynomial interval misses the enclosure");
    return moment_functional(ball, V, L, p, "cheb-poly" + std::to_string(p.degree()));
}

DiscreteMeasure local_dos_eig(const Hamiltonian& h, int L, DosBackend mode,
                              const EigenOptions& opts) {
    const RootedBall& ball = h.graph();
    if (L > ball.radius) throw std::out_of_range("L exceeds the ball radius");
    if (mode == DosBackend::FiniteVolumeEig) {
        const Hamiltonian hl = restrict_ball(h, L);
        SpectralDecomposition sd = eig(hl, false, opts);
        return DiscreteMeasure::from_eigenvalues(std::move(sd.eigenvalues));
    }
    if (mode != DosBackend::AmbientEig)
        throw std::invalid_argument("eig backend expected");
    SpectralDecomposition sd = eig(h, true, opts);
    const int m = ball.count_within(L);
    const int n = h.n();
    std::vector<double> weights(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int y = 0; y < m; ++y) {
            const double c = sd.vec(y, j);
            s += c * c;
        }
        weights[j] = s / static_cast<double>(m);
    }
    return DiscreteMeasure::from_weighted_eigenvalues(std::move(sd.eigenvalues),
                                                      std::move(weights));
}

double measure_functional(const DiscreteMeasure& m, const PiecewiseLinear& f) {
    return m.expect([&](double x) { return f.eval(x); });
}

double projected_trace(const Hamiltonian& h, int L,
                       const std::function<double(double)>& f,
                       const EigenOptions& opts) {
    const SpectralDecomposition sd = eig(h, true, opts);
    const int m = h.graph().count_within(L);
    const int n = h.n();
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const double fx = f(sd.eigenvalues[j]);
        if (fx == 0.0) continue;
        double s = 0.0;
        for (int y = 0; y < m; ++y) {
            const double c = sd.vec(y, j);
            s += c * c;
        }
        acc += fx * s;
    }
    return acc;
}

DosomReport dosom_estimate(const GraphFamily& family, const PotentialSpec& spec,
                           const PiecewiseLinear& f, const std::vector<int>& L_list,
                           DosBackend backend, int n_max) {
    if (L_list.empty()) throw std::invalid_argument("empty L schedule");
    for (std::size_t i = 1; i < L_list.size(); ++i)
        if (L_list[i] <= L_list[i - 1])
            throw std::invalid_argument("L schedule must increase");

    DosomReport rep;
    rep.backend = backend;
    rep.sup_label = "root-only (lower estimate)";
    for (int L : L_list) {
        int ambient = L;
        if (backend == DosBackend::MomentExact) ambient = required_ambient(L, n_max);
        if (backend == DosBackend::AmbientEig) ambient = 2 * L;
        const RootedBall ball = build_ball(family, ambient);
        const std::vector<double> V = eval_potential(ball, spec);
        double value;
        if (backend == DosBackend::MomentExact) {
            value = local_dos_moment(ball, V, L, f, n_max).value;
        } else {
            auto shared = std::make_shared<RootedBall>(ball);
            const Hamiltonian h = assemble(shared, V);
            const DiscreteMeasure m = local_dos_eig(h, L, backend);
            value = measure_functional(m, f);
        }
        rep.L_values.push_back(L);
        rep.values.push_back(value);
    }
    const std::size_t tail = rep.values.size() - rep.values.size() / 2;
    double tm = -std::numeric_limits<double>::infinity();
    for (std::size_t i = tail - 1; i < rep.values.size(); ++i)
        tm = std::max(tm, rep.values[i]);
    rep.tail_max = tm;
    return rep;
}

IodsBracket iods_bracket(const RootedBall& ball, const std::vector<double>& V,
                         int L, double E, double eps, double zeta,
                         DosBackend backend, int n_max) {
    auto shared = std::make_shared<RootedBall>(ball);
    const Hamiltonian h = assemble(shared, V);
    const double r = h.spectral_bound() + 0.1;
    auto [fm, fp] = iods_cutoffs(E, eps, zeta, -r, r);

    double lo, hi;
    if (backend == DosBackend::MomentExact) {
        lo = local_dos_moment(ball, V, L, fm, n_max).value;
        hi = local_dos_moment(ball, V, L, fp, n_max).value;
    } else {
        const DiscreteMeasure m = local_dos_eig(h, L, backend);
        lo = measure_functional(m, fm);
        hi = measure_functional(m, fp);
    }

    IodsBracket b;
    b.E = E;
    b.eps = eps;
    b.zeta = zeta;
    b.lower = std::clamp(lo, 0.0, 1.0);
    b.upper = std::clamp(hi, 0.0, 1.0);
    if (b.lower > b.upper) std::swap(b.lower, b.upper); // fp dust only
    return b;
}

} // namespace dosg
