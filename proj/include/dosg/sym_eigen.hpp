#pragma once

#include <vector>

namespace dosg {

// Eigenvalues in ascending order; when vectors are requested, `vectors` is a
// row-major n x n matrix whose column j is the (orthonormal) eigenvector of
// eigenvalues[j].
struct SpectralDecomposition {
    int n = 0;
    std::vector<double> eigenvalues;
    std::vector<double> vectors; // empty unless requested

    bool has_vectors() const { return !vectors.empty(); }
    double vec(int row, int col) const {
        return vectors[static_cast<std::size_t>(row) * n + col];
    }
};

struct EigenOptions {
    bool want_vectors = false;
    int max_sweeps = 30;     // QL iteration budget per eigenvalue
    int dense_cap = 6000;    // largest matrix accepted
};

// Dense symmetric eigensolver: Householder reduction to tridiagonal form
// followed by QL with implicit shifts. Throws on cap or budget violations.
SpectralDecomposition sym_eigen(std::vector<double> matrix, int n,
                                const EigenOptions& opts = {});

// Tridiagonal QL on (diag, offdiag); offdiag has length n-1. When `vectors`
// is non-null it must hold a row-major n x n matrix (usually the identity)
// that the rotations are accumulated into.
void tridiag_ql(std::vector<double>& diag, std::vector<double>& offdiag,
                std::vector<double>* vectors, int max_sweeps);

} // namespace dosg
