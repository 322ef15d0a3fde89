#include "dosg/potential.hpp"

#include "dosg/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dosg {

SingleSiteMeasure SingleSiteMeasure::atoms(std::vector<Atom> atoms) {
    if (atoms.empty()) throw std::invalid_argument("measure needs atoms");
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.pos < b.pos; });
    std::vector<Atom> merged;
    for (const auto& a : atoms) {
        if (a.weight <= 0.0) throw std::invalid_argument("weights must be positive");
        if (!merged.empty() && a.pos == merged.back().pos)
            merged.back().weight += a.weight;
        else
            merged.push_back(a);
    }
    double total = 0.0;
    for (const auto& a : merged) total += a.weight;
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("atom weights must sum to 1");

    AtomRep rep;
    rep.atoms = std::move(merged);
    rep.cum.resize(rep.atoms.size());
    double c = 0.0;
    for (std::size_t i = 0; i < rep.atoms.size(); ++i) {
        c += rep.atoms[i].weight;
        rep.cum[i] = c;
    }
    rep.cum.back() = 1.0;
    SingleSiteMeasure m;
    m.rep_ = std::move(rep);
    return m;
}

SingleSiteMeasure SingleSiteMeasure::delta(double c) {
    return atoms({{c, 1.0}});
}

SingleSiteMeasure SingleSiteMeasure::two_point(double p0, double x0, double x1) {
    return atoms({{x0, p0}, {x1, 1.0 - p0}});
}

SingleSiteMeasure SingleSiteMeasure::uniform(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("uniform needs a < b");
    return piecewise_cdf({a, b}, {0.0, 1.0});
}

SingleSiteMeasure SingleSiteMeasure::piecewise_cdf(std::vector<double> xs,
                                                   std::vector<double> Fs) {
    if (xs.size() != Fs.size() || xs.size() < 2)
        throw std::invalid_argument("CDF needs >= 2 breakpoints");
    if (!std::is_sorted(xs.begin(), xs.end()))
        throw std::invalid_argument("CDF breakpoints must be sorted");
    if (std::abs(Fs.front()) > 1e-12 || std::abs(Fs.back() - 1.0) > 1e-12)
        throw std::invalid_argument("CDF must run from 0 to 1");
    for (std::size_t i = 1; i < Fs.size(); ++i)
        if (Fs[i] < Fs[i - 1]) throw std::invalid_argument("CDF must be nondecreasing");
    Fs.front() = 0.0;
    Fs.back() = 1.0;
    SingleSiteMeasure m;
    m.rep_ = CdfRep{std::move(xs), std::move(Fs)};
    return m;
}

double SingleSiteMeasure::cdf(double s) const {
    if (const auto* a = std::get_if<AtomRep>(&rep_)) {
        double c = 0.0;
        for (std::size_t i = 0; i < a->atoms.size() && a->atoms[i].pos <= s; ++i)
            c = a->cum[i];
        return c;
    }
    const auto& r = std::get<CdfRep>(rep_);
    if (s <= r.xs.front()) return s < r.xs.front() ? 0.0 : r.Fs.front();
    if (s >= r.xs.back()) return 1.0;
    const auto it = std::upper_bound(r.xs.begin(), r.xs.end(), s);
    const std::size_t i = static_cast<std::size_t>(it - r.xs.begin());
    const double t = (s - r.xs[i - 1]) / (r.xs[i] - r.xs[i - 1]);
    return r.Fs[i - 1] + t * (r.Fs[i] - r.Fs[i - 1]);
}

double SingleSiteMeasure::quantile(double t) const {
    if (t < 0.0 || t > 1.0) throw std::domain_error("quantile needs t in [0,1]");
    if (const auto* a = std::get_if<AtomRep>(&rep_)) {
        if (t <= 0.0) return a->atoms.front().pos;
        const auto it = std::lower_bound(a->cum.begin(), a->cum.end(), t);
        const std::size_t i = std::min(static_cast<std::size_t>(it - a->cum.begin()),
                                       a->atoms.size() - 1);
        return a->atoms[i].pos;
    }
    const auto& r = std::get<CdfRep>(rep_);
    if (t <= r.Fs.front()) return r.xs.front();
    // first x with F(x) >= t; flat CDF stretches collapse to their left end
    for (std::size_t i = 1; i < r.xs.size(); ++i) {
        if (r.Fs[i] >= t) {
            if (r.Fs[i] == r.Fs[i - 1]) return r.xs[i - 1];
            const double u = (t - r.Fs[i - 1]) / (r.Fs[i] - r.Fs[i - 1]);
            return r.xs[i - 1] + u * (r.xs[i] - r.xs[i - 1]);
        }
    }
    return r.xs.back();
}

double SingleSiteMeasure::support_min() const {
    if (const auto* a = std::get_if<AtomRep>(&rep_)) return a->atoms.front().pos;
    return std::get<CdfRep>(rep_).xs.front();
}

double SingleSiteMeasure::support_max() const {
    if (const auto* a = std::get_if<AtomRep>(&rep_)) return a->atoms.back().pos;
    return std::get<CdfRep>(rep_).xs.back();
}

double SingleSiteMeasure::bound() const {
    return std::max(std::abs(support_min()), std::abs(support_max()));
}

const std::vector<SingleSiteMeasure::Atom>& SingleSiteMeasure::atom_list() const {
    return std::get<AtomRep>(rep_).atoms;
}

SamplingFunction SamplingFunction::cosine(double amplitude) {
    SamplingFunction f;
    f.kind = Kind::Cosine;
    f.amplitude = amplitude;
    return f;
}

SamplingFunction SamplingFunction::from_table(PiecewiseLinear t) {
    SamplingFunction f;
    f.kind = Kind::Table;
    f.table = std::move(t);
    return f;
}

double SamplingFunction::eval(double s) const {
    if (kind == Kind::Cosine)
        return amplitude * std::cos(2.0 * std::numbers::pi * s);
    return table.eval(s);
}

double SamplingFunction::bound() const {
    return kind == Kind::Cosine ? std::abs(amplitude) : table.sup_norm();
}

PotentialSpec PotentialSpec::explicit_values(std::vector<double> v) {
    PotentialSpec s;
    double b = 0.0;
    for (double x : v) b = std::max(b, std::abs(x));
    s.bound = b;
    s.kind = Explicit{std::move(v)};
    return s;
}

PotentialSpec PotentialSpec::zero() {
    return random_iid(SingleSiteMeasure::delta(0.0), 0);
}

PotentialSpec PotentialSpec::quasi_periodic(std::vector<double> alpha,
                                            std::vector<double> theta,
                                            SamplingFunction v) {
    if (alpha.size() != theta.size())
        throw std::invalid_argument("alpha/theta dimension mismatch");
    PotentialSpec s;
    s.bound = v.bound();
    s.kind = QuasiPeriodicZd{std::move(alpha), std::move(theta), std::move(v)};
    return s;
}

PotentialSpec PotentialSpec::bethe_ergodic(std::uint64_t seed, SamplingFunction v) {
    PotentialSpec s;
    s.bound = v.bound();
    s.kind = BetheErgodic{seed, std::move(v)};
    return s;
}

PotentialSpec PotentialSpec::random_iid(SingleSiteMeasure mu, std::uint64_t seed) {
    PotentialSpec s;
    s.bound = mu.bound();
    s.kind = RandomIID{std::move(mu), seed};
    return s;
}

PotentialSpec PotentialSpec::scaled(PotentialSpec inner, double lambda) {
    PotentialSpec s;
    s.bound = std::abs(lambda) * inner.bound;
    s.kind = Scaled{std::make_shared<PotentialSpec>(std::move(inner)), lambda};
    return s;
}

namespace {

double frac(double x) { return x - std::floor(x); }

std::uint64_t address_key(const RootedBall& ball, int v) {
    // stable across ambient radii: derived from the address digits only
    std::uint64_t h = 0x243F6A8885A308D3ULL;
    int cur = v;
    while (cur != ball.root) {
        h = splitmix64(h ^ (0x100000001B3ULL * static_cast<std::uint64_t>(ball.digit[cur]) +
                            static_cast<std::uint64_t>(ball.dist[cur])));
        cur = ball.parent[cur];
    }
    return h;
}

} // namespace

std::vector<double> eval_potential(const RootedBall& ball,
                                   const PotentialSpec& spec) {
    std::vector<double> out(ball.n, 0.0);

    if (const auto* e = std::get_if<PotentialSpec::Explicit>(&spec.kind)) {
        if (static_cast<int>(e->values.size()) != ball.n)
            throw std::invalid_argument("explicit potential length mismatch");
        out = e->values;
    } else if (const auto* q = std::get_if<PotentialSpec::QuasiPeriodicZd>(&spec.kind)) {
        if (!ball.family.is_lattice())
            throw std::invalid_argument("quasi-periodic potentials need a lattice");
        const int d = ball.family.coord_dim();
        if (static_cast<int>(q->alpha.size()) != d)
            throw std::invalid_argument("frequency dimension mismatch");
        for (int v = 0; v < ball.n; ++v) {
            const auto c = ball.coordinate(v);
            double s = 0.0;
            for (int i = 0; i < d; ++i) s += frac(q->theta[i] + c[i] * q->alpha[i]);
            out[v] = q->v.eval(frac(s));
        }
    } else if (const auto* be = std::get_if<PotentialSpec::BetheErgodic>(&spec.kind)) {
        if (ball.family.kind != FamilyKind::Bethe)
            throw std::invalid_argument("Bethe-ergodic potentials need a Bethe ball");
        for (int v = 0; v < ball.n; ++v)
            out[v] = be->v.eval(uniform01(be->seed, address_key(ball, v), 1));
    } else if (const auto* r = std::get_if<PotentialSpec::RandomIID>(&spec.kind)) {
        for (int v = 0; v < ball.n; ++v)
            out[v] = r->mu.quantile(uniform01(r->seed, static_cast<std::uint64_t>(v)));
    } else {
        const auto& sc = std::get<PotentialSpec::Scaled>(spec.kind);
        out = eval_potential(ball, *sc.inner);
        for (double& x : out) x *= sc.lambda;
    }

    for (double x : out)
        if (std::abs(x) > spec.bound + 1e-12)
            throw std::domain_error("potential value exceeds the declared bound");
    return out;
}

std::vector<double> sample_random_potential(const RootedBall& ball,
                                            const SingleSiteMeasure& mu,
                                            std::uint64_t seed) {
    return eval_potential(ball, PotentialSpec::random_iid(mu, seed));
}

std::vector<double> modify_potential(const std::vector<double>& V,
                                     const std::vector<double>& W,
                                     const RootedBall& ball, int R) {
    if (static_cast<int>(V.size()) != ball.n || static_cast<int>(W.size()) != ball.n)
        throw std::invalid_argument("potential length mismatch");
    if (R < 0 || R > ball.radius)
        throw std::out_of_range("modification radius out of range");
    std::vector<double> out = W;
    const int m = ball.count_within(R);
    std::copy(V.begin(), V.begin() + m, out.begin());
    return out;
}

} // namespace dosg
