#pragma once

#include "dosg/graph.hpp"
#include "dosg/sym_eigen.hpp"

#include <memory>
#include <vector>

namespace dosg {

// H = adjacency + diag(V) on a ball graph. The adjacency operator of any
// ball is a compression of the infinite-graph adjacency, so
// spectrum(H) lies in [-rho - max|V|, rho + max|V|].
struct Hamiltonian {
    std::shared_ptr<const RootedBall> ball;
    std::vector<double> diagonal;

    int n() const { return ball->n; }
    const RootedBall& graph() const { return *ball; }
    double potential_sup() const;
    // Half-width rho + max|V| of the guaranteed spectral enclosure.
    double spectral_bound() const;
    // max_v (deg(v) + |V(v)|), reported for diagnostics.
    double gershgorin_bound() const;
};

Hamiltonian assemble(std::shared_ptr<const RootedBall> ball,
                     std::vector<double> potential);

void matvec(const Hamiltonian& h, const std::vector<double>& x,
            std::vector<double>& y);
std::vector<double> matvec(const Hamiltonian& h, const std::vector<double>& x);

// Principal submatrix on Lambda_L(root) as a Hamiltonian on the induced
// sub-ball (a prefix of the vertex range, by the breadth-first ordering).
Hamiltonian restrict_ball(const Hamiltonian& h, int L);

std::vector<double> to_dense(const Hamiltonian& h);

// Eigendecomposition of the (dense) Hamiltonian; path graphs skip the
// Householder stage since they are tridiagonal after reordering.
SpectralDecomposition eig(const Hamiltonian& h, bool want_vectors,
                          const EigenOptions& opts = {});

} // namespace dosg
