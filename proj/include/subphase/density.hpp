#pragma once

#include <vector>

#include "subphase/phases.hpp"

namespace subphase {

struct DensityMatrixSnapshot {
    double t = 0.0;
    ComplexMatrix rho;
    double purity = 0.0; // tr(rho^2), stored at construction
};

// Density matrix at an on-grid time, assembled from the phase-factored
// channel form
//   rho = sum_kl exp(i (gamma_k - gamma_l)) exp(-i (d_k - d_l))
//         ctilde_k conj(ctilde_l) |psi_k^0><psi_l^0|
// and cross-checked against the plain outer product |psi><psi| (the
// factorization is exact regrouping; disagreement raises NumericError).
// A masked channel carrying weight above the ledger threshold raises
// FactorizationError.
DensityMatrixSnapshot assemble_density(const CoefficientTrajectory& traj,
                                       const PhaseLedger& ledger, double t);

// Statistical blend of pure-state components. Weights must be nonnegative
// and sum to 1 within 1e-12; labels are optional component descriptors.
struct MixedStateSpec {
    std::vector<double> weights;
    std::vector<std::string> labels;

    void validate() const;
};

// rho = sum_k p_k rho_k. Components must share time and dimension. No
// cross-component phase is introduced: relative channel phases live inside
// each pure component only.
DensityMatrixSnapshot mix(const std::vector<double>& weights,
                          const std::vector<DensityMatrixSnapshot>& parts);
DensityMatrixSnapshot mix(const MixedStateSpec& spec,
                          const std::vector<DensityMatrixSnapshot>& parts);

// Re tr(rho A) for Hermitian A; an imaginary residue above 1e-9 raises
// NumericError.
double observable_average(const DensityMatrixSnapshot& snapshot, const ComplexMatrix& a);

} // namespace subphase
