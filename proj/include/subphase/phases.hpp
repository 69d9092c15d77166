#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "subphase/propagation.hpp"

namespace subphase {

// principal value in (-pi, pi]
double wrap_angle(double x);

// Per-channel phase bookkeeping extracted from a coefficient trajectory.
// gamma_k is the channel phase accumulated by the coefficient, amp_log the
// companion log-amplitude (the imaginary part of the same connection), and
// dyn_k the channel dynamical phase E_k (t - t0) + integral of the diagonal
// perturbation matrix element.
//
// A channel is masked from the first sample where |c_k| drops below the
// threshold; its gamma and amp_log freeze there. Phase content before the
// dip is kept.
struct PhaseLedger {
    TimeGrid grid{0.0, 1.0, 2};
    double threshold = 1e-8;
    std::vector<double> gamma;   // [sample * channels + k], radians
    std::vector<double> amp_log; // same layout
    std::vector<double> dyn;     // same layout, radians
    std::vector<uint8_t> mask;   // per channel: ever below threshold
    std::vector<int> first_masked_sample; // n_samples when never masked

    struct MaskEvent {
        int channel;
        int sample;
        double time;
    };
    std::vector<MaskEvent> events;

    int channels() const { return static_cast<int>(mask.size()); }
    double gamma_at(int sample, int k) const {
        return gamma[static_cast<std::size_t>(sample) * channels() + k];
    }
    double amp_log_at(int sample, int k) const {
        return amp_log[static_cast<std::size_t>(sample) * channels() + k];
    }
    double dyn_at(int sample, int k) const {
        return dyn[static_cast<std::size_t>(sample) * channels() + k];
    }
    bool masked_at(int sample, int k) const { return sample >= first_masked_sample[k]; }
};

// gamma_k(t) as the continuously unwrapped -[arg c_k(t) - arg c_k(t0)]
// (identical to the quadrature of Re[i conj(c) c' / |c|^2]), amp_log as
// ln(|c_k(t)| / |c_k(t0)|), dyn_k from the stored diagonal elements.
PhaseLedger sub_geometric_phases(const CoefficientTrajectory& traj, double threshold = 1e-8);

// Geometric phase of band n along the path, computed as the accumulated
// per-step overlap phase -sum_j arg<v_j|v_{j+1}> of the instantaneous
// eigenvectors in the solver's deterministic gauge. Interior gauge changes
// telescope away; a per-step phase above pi/2 raises ResolutionError, an
// eigenvalue gap below 1e-9 * maxnorm raises DegeneracyError.
double berry_phase_connection(const HamiltonianModel& model, int band, const TimeGrid& grid);

// Probability-weighted sum of channel phase rates,
//   integral of sum_k Re[i conj(c_k) c_k'] dt,
// evaluated with the trajectory's stored derivatives. On an
// instantaneous-expansion trajectory this is the decomposed form of the
// band's geometric phase.
double berry_phase_decomposed(const CoefficientTrajectory& traj, const PhaseLedger& ledger);

// arg <psi(t0)|psi(tau)> from the channel sums; principal branch.
double total_phase(const CoefficientTrajectory& traj, double tau);

// Per-sample integrands behind the scalar phases; exposed so reports can be
// recomputed from emitted time series.
//   dynamical: sum_n |c_n|^2 E_n + sum_nm conj(c_n) c_m e^{-i(E_m - E_n)(t - t0)} <n|dH|m>
//   geometric: sum_k Re[i conj(c_k) c_k']
std::vector<double> dynamical_integrand(const CoefficientTrajectory& traj,
                                        const HamiltonianModel& model);
std::vector<double> geometric_rate(const CoefficientTrajectory& traj);

// alpha(tau) = -integral of [ sum_n |c_n|^2 E_n
//              + sum_nm conj(c_n) c_m exp(-i (E_m - E_n)(t - t0)) <n|dH|m> ].
// The double sum is real by Hermiticity; an imaginary residue above 1e-9
// raises NumericError.
double aa_dynamical_phase(const CoefficientTrajectory& traj, const HamiltonianModel& model,
                          double tau);

struct RelativeSubphases {
    std::vector<double> value;  // [k * channels + l], gamma_k - gamma_l
    std::vector<uint8_t> valid; // same layout; 0 when either channel is masked
    int channels = 0;

    double at(int k, int l) const { return value[static_cast<std::size_t>(k) * channels + l]; }
    bool ok(int k, int l) const { return valid[static_cast<std::size_t>(k) * channels + l] != 0; }
};

RelativeSubphases relative_subphase_matrix(const PhaseLedger& ledger, double t);

struct PhaseReport {
    double tau = 0.0;
    double total_phi = 0.0;       // (-pi, pi]
    double dynamical_alpha = 0.0; // unwrapped
    double aa_beta = 0.0;         // wrap(total_phi - dynamical_alpha)
    std::optional<double> berry_connection;
    std::optional<double> berry_decomposed;
    int band = -1;
    std::vector<double> channel_gammas;
    std::vector<double> channel_dyn;
    std::vector<double> channel_amp_log;
    std::vector<uint8_t> channel_masked;
    RelativeSubphases relative;
    double norm_drift = 0.0;
};

// Assembles the full report; Berry values are attached for adiabatic-regime
// models, for the band carrying the largest initial weight.
PhaseReport aa_phase(const CoefficientTrajectory& traj, const HamiltonianModel& model, double tau,
                     double threshold = 1e-8);

} // namespace subphase
