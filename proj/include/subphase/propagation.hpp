#pragma once

#include <optional>
#include <vector>

#include "subphase/model.hpp"

namespace subphase {

struct PhaseLedger;

// Channel coefficients c_k(t) of the expansion
//   |psi(t)> = sum_k c_k(t) exp(-i E_k (t - t0)) |psi_k^0>
// in the initial eigenbasis, on a time grid. `derivatives` holds dc/dt at
// every sample (the interaction-picture right-hand side for integrated
// trajectories, analytic or finite-difference otherwise); `dh_diag` holds
// <psi_k^0|dH(t_j)|psi_k^0>, the diagonal perturbation matrix elements the
// phase ledger integrates.
class CoefficientTrajectory {
public:
    TimeGrid grid{0.0, 1.0, 2};
    EigenBasis basis;
    int initial_channel = -1; // -1 when started from explicit amplitudes
    std::vector<cplx> coefficients; // [sample * dim + channel]
    std::vector<cplx> derivatives;  // same layout
    std::vector<double> dh_diag;    // same layout, real diagonal elements
    std::vector<double> norm_history;
    // true when the coefficients expand an instantaneous eigenvector path
    // rather than a dynamical solution; free phase factors do not apply
    bool instantaneous = false;

    int dim() const { return basis.dim(); }
    int n_samples() const { return grid.n_samples(); }
    cplx c(int sample, int channel) const {
        return coefficients[static_cast<std::size_t>(sample) * dim() + channel];
    }
    cplx cdot(int sample, int channel) const {
        return derivatives[static_cast<std::size_t>(sample) * dim() + channel];
    }
    double dh(int sample, int channel) const {
        return dh_diag[static_cast<std::size_t>(sample) * dim() + channel];
    }
};

struct StateTrajectory {
    TimeGrid grid{0.0, 1.0, 2};
    std::vector<StateVector> states;
};

// Exact channel dynamics: i c_k' = sum_l exp(+i (E_k - E_l)(t - t0))
//                                   <psi_k^0|dH(t)|psi_l^0> c_l,
// integrated with fixed-step RK4 on the model grid. `initial` is expressed
// in the channel basis. Norm drift beyond 1e-6 raises ResolutionError.
CoefficientTrajectory integrate_coefficients(const HamiltonianModel& model,
                                             const std::vector<cplx>& initial,
                                             const TimeGrid& grid);

CoefficientTrajectory integrate_from_channel(const HamiltonianModel& model, int channel,
                                             const TimeGrid& grid);

// Start from a state vector given in the original (matrix) basis.
CoefficientTrajectory integrate_from_state(const HamiltonianModel& model, const StateVector& psi0,
                                           const TimeGrid& grid);

// First-order perturbative coefficients for a run from channel n:
//   c_k(t) = -i * integral_0^t exp(+i (E_k - E_n)(t' - t0))
//                 <psi_k^0|dH(t')|psi_n^0> dt'      (k != n)
// with c_n(t) = 1 plus the same-formula diagonal term when
// include_diagonal is set. No renormalization is applied; norm_history
// records the quadratic excess.
CoefficientTrajectory first_order_coefficients(const HamiltonianModel& model, int n,
                                               const TimeGrid& grid,
                                               bool include_diagonal = true);

// Independent oracle: RK4 on i d|psi>/dt = H(t)|psi> in the full picture.
StateTrajectory direct_schrodinger_solve(const HamiltonianModel& model, const StateVector& psi0,
                                         const TimeGrid& grid);

// Reassembles |psi(t)> on the grid. Without a ledger this evaluates the
// plain expansion; with a ledger the phase-factored form is used for
// resolved channels (and the plain form where the factorization is
// undefined), which regroups to the same state exactly.
StateTrajectory assemble_state(const CoefficientTrajectory& traj,
                               const PhaseLedger* ledger = nullptr);

// Expansion coefficients of the band-n instantaneous eigenvector along the
// path, in the channel basis, with no free-phase factors. Eigenvectors keep
// the solver's deterministic gauge; a per-step overlap phase above pi/2
// means the gauge cannot be tracked on this grid and raises
// ResolutionError. Derivatives are second-order finite differences.
CoefficientTrajectory instantaneous_expansion(const HamiltonianModel& model, int band,
                                              const TimeGrid& grid);

// <psi_k^0|dH(t)|psi_l^0> for all k, l
ComplexMatrix perturbation_matrix(const HamiltonianModel& model, const EigenBasis& basis,
                                  double t);

} // namespace subphase
