#pragma once

#include "dosg/approx.hpp"
#include "dosg/hamiltonian.hpp"
#include "dosg/measure.hpp"
#include "dosg/moments.hpp"
#include "dosg/potential.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dosg {

enum class DosBackend { MomentExact, FiniteVolumeEig, AmbientEig };

std::string backend_name(DosBackend b);

// One finite-volume density-of-states functional value
//   n_L(f) = |Lambda_L|^{-1} Tr(P_L f(H) P_L)
// or the corresponding spectral measure, tagged with its provenance.
struct DosEstimate {
    double value = 0.0;
    std::optional<DiscreteMeasure> measure;
    GraphFamily family;
    int L = 0;
    int ambient = 0;
    int root = 0;
    DosBackend backend = DosBackend::FiniteVolumeEig;
    std::string f_descriptor;

    std::string to_json() const;
};

// Moment-backend functional: averages the Chebyshev series of f against the
// per-site moments of the sites in Lambda_L. Requires ambient radius
// >= L + ceil(n_max/2) + 1, which by locality makes the value equal to the
// infinite-volume trace functional whenever f is a polynomial of degree
// <= n_max (enlarging the ambient ball further cannot change it).
DosEstimate local_dos_moment(const RootedBall& ball, const std::vector<double>& V,
                             int L, const PiecewiseLinear& f, int n_max);

// Same backend for an explicit polynomial (evaluated exactly, no fit error).
DosEstimate local_dos_moment_poly(const RootedBall& ball,
                                  const std::vector<double>& V, int L,
                                  const ChebyshevExpansion& p);

// Eigensolve backends. FiniteVolume: spectrum of the restriction H_L with
// equal weights 1/|Lambda_L|. Ambient: spectrum of the full-ball operator
// with weights |P_L psi_i|^2 / |Lambda_L|.
DiscreteMeasure local_dos_eig(const Hamiltonian& h, int L, DosBackend mode,
                              const EigenOptions& opts = {});

// f-functional of a spectral measure.
double measure_functional(const DiscreteMeasure& m, const PiecewiseLinear& f);

// Tr(P_L f(H) P_L), unnormalized, from a full eigendecomposition.
double projected_trace(const Hamiltonian& h, int L,
                       const std::function<double(double)>& f,
                       const EigenOptions& opts = {});

struct DosomReport {
    std::vector<int> L_values;
    std::vector<double> values;
    double tail_max = 0.0; // max over the tail half of the L schedule
    DosBackend backend = DosBackend::MomentExact;
    std::string sup_label; // "root-only (lower estimate)" for one root
};

// Finite-volume approximation of the limsup/sup functional: evaluates the
// local functional along an increasing L schedule and reports the tail max
// together with the full trace of values.
DosomReport dosom_estimate(const GraphFamily& family, const PotentialSpec& spec,
                           const PiecewiseLinear& f, const std::vector<int>& L_list,
                           DosBackend backend, int n_max = 64);

struct IodsBracket {
    double E = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double eps = 0.0;
    double zeta = 0.0;

    std::string to_json() const;
};

// Lower/upper bounds on the integrated density at energy E from the cutoff
// sandwich f- <= indicator(x <= E) <= f+; with the FiniteVolumeEig backend
// the eigenvalue-counting CDF lies inside the bracket by construction.
IodsBracket iods_bracket(const RootedBall& ball, const std::vector<double>& V,
                         int L, double E, double eps, double zeta,
                         DosBackend backend, int n_max = 64);

} // namespace dosg
