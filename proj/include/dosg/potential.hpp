#pragma once

#include "dosg/graph.hpp"
#include "dosg/piecewise_linear.hpp"

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

namespace dosg {

// Single-site probability measure on [-C, C]: either finitely many atoms or
// a continuous piecewise-linear CDF.
class SingleSiteMeasure {
public:
    struct Atom {
        double pos;
        double weight;
    };

    static SingleSiteMeasure atoms(std::vector<Atom> atoms);
    static SingleSiteMeasure delta(double c);
    static SingleSiteMeasure two_point(double p0, double x0, double x1);
    static SingleSiteMeasure uniform(double a, double b);
    // Breakpoints (x_i, F_i) of a continuous CDF: F nondecreasing, first
    // value 0, last value 1.
    static SingleSiteMeasure piecewise_cdf(std::vector<double> xs,
                                           std::vector<double> Fs);

    double cdf(double s) const;
    // q(t) = inf { s : F(s) >= t }; left-continuous, nondecreasing.
    double quantile(double t) const;

    double support_min() const;
    double support_max() const;
    double bound() const; // C with supp within [-C, C]

    bool is_atomic() const { return std::holds_alternative<AtomRep>(rep_); }
    const std::vector<Atom>& atom_list() const;

private:
    struct AtomRep {
        std::vector<Atom> atoms; // ascending, weights sum to 1
        std::vector<double> cum;
    };
    struct CdfRep {
        std::vector<double> xs;
        std::vector<double> Fs;
    };
    std::variant<AtomRep, CdfRep> rep_;
};

// Sampling function v mapping the torus coordinate (reduced to a scalar
// s in [0,1)) into [-C, C].
struct SamplingFunction {
    enum class Kind { Cosine, Table };
    Kind kind = Kind::Cosine;
    double amplitude = 1.0;
    PiecewiseLinear table; // on [0,1] when kind == Table

    static SamplingFunction cosine(double amplitude = 1.0);
    static SamplingFunction from_table(PiecewiseLinear t);
    double eval(double s01) const;
    double bound() const;
};

// Potential generators on ball graphs. All are deterministic: random draws
// come from the counter generator keyed by (seed, vertex index) and the
// Bethe base sequence is keyed by (seed, address), so values do not depend
// on evaluation order, thread count, or the ambient radius.
struct PotentialSpec {
    struct Explicit {
        std::vector<double> values;
    };
    struct QuasiPeriodicZd {
        std::vector<double> alpha; // frequencies in [0,1)
        std::vector<double> theta; // phases in [0,1)
        SamplingFunction v;
    };
    struct BetheErgodic {
        std::uint64_t seed = 0;
        SamplingFunction v;
    };
    struct RandomIID {
        SingleSiteMeasure mu;
        std::uint64_t seed = 0;
    };
    struct Scaled {
        std::shared_ptr<const PotentialSpec> inner;
        double lambda = 1.0;
    };

    std::variant<Explicit, QuasiPeriodicZd, BetheErgodic, RandomIID, Scaled> kind;
    double bound = 1.0; // C

    static PotentialSpec explicit_values(std::vector<double> v);
    static PotentialSpec zero();
    static PotentialSpec quasi_periodic(std::vector<double> alpha,
                                        std::vector<double> theta,
                                        SamplingFunction v);
    static PotentialSpec bethe_ergodic(std::uint64_t seed, SamplingFunction v);
    static PotentialSpec random_iid(SingleSiteMeasure mu, std::uint64_t seed);
    static PotentialSpec scaled(PotentialSpec inner, double lambda);
};

std::vector<double> eval_potential(const RootedBall& ball,
                                   const PotentialSpec& spec);

std::vector<double> sample_random_potential(const RootedBall& ball,
                                            const SingleSiteMeasure& mu,
                                            std::uint64_t seed);

// (R;W)-modification: V inside Lambda_R(root), W outside.
std::vector<double> modify_potential(const std::vector<double>& V,
                                     const std::vector<double>& W,
                                     const RootedBall& ball, int R);

} // namespace dosg
