#pragma once

#include <functional>

#include "subphase/density.hpp"
#include "subphase/model.hpp"

// Closed-form reference for the driven two-level system with gap parameter
// Delta and coupling w(t) = |w(t)| exp(i delta(t)): mixing angle
// tan(theta) = |w|/Delta, tracked state
//   |psi_-(t)> = (cos(theta/2), exp(-i delta) sin(theta/2)),
// plus the analytic Berry, dynamical and total phases and the density matrix
// carrying the accumulated relative channel phase.
namespace subphase::twolevel {

struct TwoLevelAngles {
    std::function<double(double)> theta;
    std::function<double(double)> theta_dot;
    std::function<double(double)> delta;
    std::function<double(double)> delta_dot;

    static TwoLevelAngles from_waveforms(const Waveform& theta_wf, const Waveform& delta_wf);
    static TwoLevelAngles from_spec(const TwoLevelSpec& spec);
    // tabulated angles; derivatives by second-order differences
    static TwoLevelAngles from_samples(const TimeGrid& grid, std::vector<double> theta_samples,
                                       std::vector<double> delta_samples);
};

StateVector instantaneous_ground_state(const TwoLevelAngles& angles, double t);

// Two-level Hamiltonian whose lower eigenstate (energy
// -sqrt(Delta^2 + |w|^2)) is instantaneous_ground_state at every t:
// [[-Delta, -w], [-conj(w), Delta]] with w = Delta tan(theta) exp(i delta).
ComplexMatrix companion_hamiltonian(const TwoLevelAngles& angles, double delta_energy, double t);

// integral of sin^2(theta/2) * d(delta)/dt over the grid
double analytic_berry(const TwoLevelAngles& angles, const TimeGrid& grid);

// -integral of sqrt(Delta^2 + |w(t)|^2) over the grid
double analytic_dynamical(const TwoLevelSpec& spec, const TimeGrid& grid);

// arg[ cos(theta(t_start)/2) cos(theta(tau)/2)
//      + exp(i (delta(t_start) - delta(tau))) sin(theta(t_start)/2) sin(theta(tau)/2) ]
double analytic_total_phase(const TwoLevelAngles& angles, double tau, double t_start = 0.0);

// Accumulated channel phase exponents along the grid, in two bookkeepings:
// `printed` integrates the channel integrands
//     [-(1/2) sin(theta/2) cos(theta/2) theta'] / cos^2(theta/2)
//     [ (1/2) sin(theta/2) cos(theta/2) theta' - sin^2(theta/2) delta' ] / sin^2(theta/2)
// as real phases; `derived` takes the channel phases as the unwrapped
// -arg c_k of the ground-state components. Both are reported; they differ
// where the log-amplitude terms enter (see README).
struct SubphaseExponents {
    std::vector<double> printed_1, printed_2; // per sample
    std::vector<double> derived_1, derived_2;

    double printed_relative(int sample) const { return printed_1[sample] - printed_2[sample]; }
    double derived_relative(int sample) const { return derived_1[sample] - derived_2[sample]; }
};

// Throws SingularChannelError when theta comes within 1e-6 of 0 or pi on the
// grid (a channel weight vanishes there).
SubphaseExponents subphase_exponents(const TwoLevelAngles& angles, const TimeGrid& grid);

// Density matrix of the tracked state at an on-grid time: diagonal
// (cos^2(theta/2), sin^2(theta/2)), off-diagonal
// cos(theta/2) sin(theta/2) exp(i delta(t0)) exp(i relative-phase(t))
// with the `printed` relative phase.
DensityMatrixSnapshot closed_form_density(const TwoLevelAngles& angles, const TimeGrid& grid,
                                          double t);

} // namespace subphase::twolevel
