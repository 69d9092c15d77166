#include "subphase/phases.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "subphase/integrate.hpp"
#include "subphase/kernels.hpp"

namespace subphase {

namespace {
constexpr double kPi = std::numbers::pi;
}

double wrap_angle(double x) {
    double y = std::fmod(x + kPi, 2.0 * kPi);
    if (y <= 0.0) y += 2.0 * kPi;
    return y - kPi;
}

PhaseLedger sub_geometric_phases(const CoefficientTrajectory& traj, double threshold) {
    if (!(threshold > 0.0)) throw ValidationError("sub-phase threshold must be positive");
    const int d = traj.dim();
    const int ns = traj.n_samples();

    PhaseLedger ledger;
    ledger.grid = traj.grid;
    ledger.threshold = threshold;
    ledger.gamma.assign(static_cast<std::size_t>(ns) * d, 0.0);
    ledger.amp_log.assign(static_cast<std::size_t>(ns) * d, 0.0);
    ledger.dyn.assign(static_cast<std::size_t>(ns) * d, 0.0);
    ledger.mask.assign(d, 0);
    ledger.first_masked_sample.assign(d, ns);

    for (int k = 0; k < d; ++k) {
        int first_masked = ns;
        for (int j = 0; j < ns; ++j) {
            if (std::abs(traj.c(j, k)) < threshold) {
                first_masked = j;
                break;
            }
        }
        ledger.first_masked_sample[k] = first_masked;
        if (first_masked < ns) {
            ledger.mask[k] = 1;
            ledger.events.push_back({k, first_masked, traj.grid.time(first_masked)});
        }

        double g = 0.0;
        const double log0 = first_masked > 0 ? std::log(std::abs(traj.c(0, k))) : 0.0;
        double amp = 0.0;
        for (int j = 1; j < ns; ++j) {
            const std::size_t idx = static_cast<std::size_t>(j) * d + k;
            if (j < first_masked) {
                g -= std::arg(traj.c(j, k) * std::conj(traj.c(j - 1, k)));
                amp = std::log(std::abs(traj.c(j, k))) - log0;
            }
            ledger.gamma[idx] = g;
            ledger.amp_log[idx] = amp;
        }

        // channel dynamical phase: E_k (t - t0) + cumulative diagonal element
        std::vector<double> diag(ns);
        for (int j = 0; j < ns; ++j) diag[j] = traj.dh(j, k);
        const std::vector<double> acc = cumulative_trapezoid(traj.grid, diag);
        for (int j = 0; j < ns; ++j) {
            ledger.dyn[static_cast<std::size_t>(j) * d + k] =
                traj.basis.energies[k] * (traj.grid.time(j) - traj.grid.t0()) + acc[j];
        }
    }

    bool any_resolved = false;
    for (int k = 0; k < d; ++k) {
        if (ledger.first_masked_sample[k] > 0) any_resolved = true;
    }
    if (!any_resolved) {
        throw EmptySupportError("every channel is below the amplitude threshold from the start");
    }
    return ledger;
}

double berry_phase_connection(const HamiltonianModel& model, int band, const TimeGrid& grid) {
    if (band < 0 || band >= model.dim()) throw ValidationError("band index out of range");
    double beta = 0.0;
    StateVector prev;
    for (int j = 0; j < grid.n_samples(); ++j) {
        const double tj = grid.time(j);
        const ComplexMatrix h = evaluate_hamiltonian(model, tj);
        const EigenSystem sys = hermitian_eigensystem(h);
        const double gap_tol = 1e-9 * std::max(h.maxnorm(), 1e-300);
        if ((band > 0 && sys.values[band] - sys.values[band - 1] < gap_tol) ||
            (band + 1 < model.dim() && sys.values[band + 1] - sys.values[band] < gap_tol)) {
            throw DegeneracyError("eigenvalue crossing detected at t = " + std::to_string(tj));
        }
        if (j > 0) {
            const double step = std::arg(inner(prev, sys.vectors[band]));
            if (std::abs(step) > 0.5 * kPi) {
                throw ResolutionError(
                    "per-step eigenvector overlap phase above pi/2; refine the grid");
            }
            beta -= step;
        }
        prev = sys.vectors[band];
    }
    return beta;
}

std::vector<double> geometric_rate(const CoefficientTrajectory& traj) {
    const int ns = traj.n_samples();
    std::vector<double> rate(ns, 0.0);
    for (int j = 0; j < ns; ++j) {
        double g = 0.0;
        for (int k = 0; k < traj.dim(); ++k) {
            // Re[i conj(c) c'] = -Im[conj(c) c']
            g -= std::imag(std::conj(traj.c(j, k)) * traj.cdot(j, k));
        }
        rate[j] = g;
    }
    return rate;
}

double berry_phase_decomposed(const CoefficientTrajectory& traj, const PhaseLedger& ledger) {
    if (!(ledger.grid == traj.grid) || ledger.channels() != traj.dim()) {
        throw ShapeError("phase ledger does not match the trajectory");
    }
    return trapezoid(traj.grid, geometric_rate(traj));
}

double total_phase(const CoefficientTrajectory& traj, double tau) {
    const int j = traj.grid.index_of(tau);
    const double dt = traj.grid.time(j) - traj.grid.t0();
    cplx overlap = 0.0;
    for (int k = 0; k < traj.dim(); ++k) {
        const double ene = traj.instantaneous ? 0.0 : traj.basis.energies[k];
        overlap += std::conj(traj.c(0, k)) * traj.c(j, k) * std::polar(1.0, -ene * dt);
    }
    if (std::abs(overlap) <= 1e-10) {
        throw OrthogonalStatesError("total phase undefined: |<psi(0)|psi(tau)>| <= 1e-10");
    }
    return std::arg(overlap);
}

std::vector<double> dynamical_integrand(const CoefficientTrajectory& traj,
                                        const HamiltonianModel& model) {
    const int d = traj.dim();
    const double t0 = traj.grid.t0();
    const auto& kt = kernels::active();

    std::vector<double> integrand(traj.n_samples(), 0.0);
    std::vector<cplx> phi(d), mphi(d);
    for (int j = 0; j < traj.n_samples(); ++j) {
        const double dt = traj.grid.time(j) - t0;
        double diag = 0.0;
        for (int k = 0; k < d; ++k) {
            const cplx ck = traj.c(j, k);
            const double ene = traj.instantaneous ? 0.0 : traj.basis.energies[k];
            diag += std::norm(ck) * traj.basis.energies[k];
            phi[k] = ck * std::polar(1.0, -ene * dt);
        }
        const ComplexMatrix m = perturbation_matrix(model, traj.basis, traj.grid.time(j));
        kt.cmatvec(d, m.data(), phi.data(), mphi.data());
        const cplx cross = kt.cdotc(static_cast<std::size_t>(d), phi.data(), mphi.data());
        if (std::abs(cross.imag()) > 1e-9) {
            throw NumericError("dynamical-phase cross term has imaginary residue " +
                               std::to_string(cross.imag()));
        }
        integrand[j] = diag + cross.real();
    }
    return integrand;
}

double aa_dynamical_phase(const CoefficientTrajectory& traj, const HamiltonianModel& model,
                          double tau) {
    const int j_tau = traj.grid.index_of(tau);
    const std::vector<double> acc =
        cumulative_trapezoid(traj.grid, dynamical_integrand(traj, model));
    return -acc[j_tau];
}

RelativeSubphases relative_subphase_matrix(const PhaseLedger& ledger, double t) {
    const int j = ledger.grid.index_of(t);
    const int d = ledger.channels();
    RelativeSubphases out;
    out.channels = d;
    out.value.assign(static_cast<std::size_t>(d) * d, 0.0);
    out.valid.assign(static_cast<std::size_t>(d) * d, 0);
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            out.value[static_cast<std::size_t>(k) * d + l] =
                ledger.gamma_at(j, k) - ledger.gamma_at(j, l);
            out.valid[static_cast<std::size_t>(k) * d + l] =
                (!ledger.masked_at(j, k) && !ledger.masked_at(j, l)) ? 1 : 0;
        }
    }
    return out;
}

PhaseReport aa_phase(const CoefficientTrajectory& traj, const HamiltonianModel& model, double tau,
                     double threshold) {
    const PhaseLedger ledger = sub_geometric_phases(traj, threshold);
    const int j_tau = traj.grid.index_of(tau);
    const int d = traj.dim();

    PhaseReport rep;
    rep.tau = tau;
    rep.total_phi = total_phase(traj, tau);
    rep.dynamical_alpha = aa_dynamical_phase(traj, model, tau);
    rep.aa_beta = wrap_angle(rep.total_phi - rep.dynamical_alpha);

    rep.channel_gammas.resize(d);
    rep.channel_dyn.resize(d);
    rep.channel_amp_log.resize(d);
    rep.channel_masked.resize(d);
    for (int k = 0; k < d; ++k) {
        rep.channel_gammas[k] = ledger.gamma_at(j_tau, k);
        rep.channel_dyn[k] = ledger.dyn_at(j_tau, k);
        rep.channel_amp_log[k] = ledger.amp_log_at(j_tau, k);
        rep.channel_masked[k] = ledger.mask[k];
    }
    rep.relative = relative_subphase_matrix(ledger, tau);

    double drift = 0.0;
    for (double nh : traj.norm_history) drift = std::max(drift, std::abs(nh - traj.norm_history[0]));
    rep.norm_drift = drift;

    int band = 0;
    double wmax = -1.0;
    for (int k = 0; k < d; ++k) {
        const double w = std::norm(traj.c(0, k));
        if (w > wmax) {
            wmax = w;
            band = k;
        }
    }
    rep.band = band;

    if (model.regime() == Regime::adiabatic) {
        rep.berry_connection = berry_phase_connection(model, band, traj.grid);
        const CoefficientTrajectory inst = instantaneous_expansion(model, band, traj.grid);
        const PhaseLedger inst_ledger = sub_geometric_phases(inst, threshold);
        rep.berry_decomposed = berry_phase_decomposed(inst, inst_ledger);
    }
    return rep;
}

} // namespace subphase
