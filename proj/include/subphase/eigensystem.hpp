#pragma once

#include <utility>
#include <vector>

#include "subphase/types.hpp"

namespace subphase {

struct EigenSystem {
    std::vector<double> values;       // ascending
    std::vector<StateVector> vectors; // orthonormal, deterministically gauged
    // inclusive index ranges of eigenvalues closer than 1e-9 * maxnorm
    std::vector<std::pair<int, int>> degenerate_clusters;

    bool has_degeneracy() const { return !degenerate_clusters.empty(); }
};

// Cyclic complex Jacobi. Residual ||M v - lambda v|| stays below
// 1e-10 * maxnorm(M) by a wide margin at the supported sizes. Eigenvector
// gauge: the largest-magnitude entry (first on ties) is rotated to be real
// and positive, so repeated runs give identical vectors.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);

} // namespace subphase
