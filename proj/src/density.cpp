#include "subphase/density.hpp"

#include <cmath>
#include <string>

namespace subphase {

namespace {

double purity_of(const ComplexMatrix& rho) { return trace(matmul(rho, rho)).real(); }

} // namespace

DensityMatrixSnapshot assemble_density(const CoefficientTrajectory& traj,
                                       const PhaseLedger& ledger, double t) {
    if (!(ledger.grid == traj.grid) || ledger.channels() != traj.dim()) {
        throw ShapeError("phase ledger does not match the trajectory");
    }
    const int j = traj.grid.index_of(t);
    const int d = traj.dim();
    const double tau = traj.grid.time(j) - traj.grid.t0();

    for (int k = 0; k < d; ++k) {
        if (ledger.masked_at(j, k) && std::abs(traj.c(j, k)) > ledger.threshold) {
            throw FactorizationError("channel " + std::to_string(k) +
                                     " re-acquired weight after masking; the phase-factored "
                                     "density matrix is invalid here");
        }
    }

    // channel amplitudes via the factored form (raw form where masked)
    std::vector<cplx> factored(d), plain(d);
    for (int k = 0; k < d; ++k) {
        const double ene = traj.instantaneous ? 0.0 : traj.basis.energies[k];
        const double diag_integral = ledger.dyn_at(j, k) - traj.basis.energies[k] * tau;
        plain[k] = traj.c(j, k) * std::polar(1.0, -ene * tau);
        if (ledger.masked_at(j, k)) {
            factored[k] = plain[k];
        } else {
            const double gamma = ledger.gamma_at(j, k);
            const cplx reduced = std::polar(1.0, -gamma + diag_integral) * traj.c(j, k);
            factored[k] = std::polar(1.0, gamma - (ene * tau + diag_integral)) * reduced;
        }
    }

    ComplexMatrix rho_chan(d);
    double mismatch = 0.0;
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            const cplx val = factored[k] * std::conj(factored[l]);
            rho_chan(k, l) = val;
            mismatch = std::max(mismatch, std::abs(val - plain[k] * std::conj(plain[l])));
        }
    }
    if (mismatch > 1e-10) {
        throw NumericError("phase-factored density matrix drifted from the outer product by " +
                           std::to_string(mismatch));
    }

    // back to the original basis: rho = V rho_chan V^H
    ComplexMatrix rho(d);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            cplx s = 0.0;
            for (int k = 0; k < d; ++k) {
                const cplx vak = traj.basis.vectors[k][a];
                for (int l = 0; l < d; ++l) {
                    s += vak * rho_chan(k, l) * std::conj(traj.basis.vectors[l][b]);
                }
            }
            rho(a, b) = s;
        }
    }

    DensityMatrixSnapshot snap;
    snap.t = traj.grid.time(j);
    snap.purity = purity_of(rho);
    snap.rho = std::move(rho);
    return snap;
}

void MixedStateSpec::validate() const {
    if (weights.empty()) throw ValidationError("mixture needs at least one component");
    if (!labels.empty() && labels.size() != weights.size()) {
        throw ShapeError("mixture labels must match the weight count");
    }
    double sum = 0.0;
    for (double p : weights) {
        if (p < 0.0) throw ValidationError("mixture weights must be nonnegative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw ValidationError("mixture weights must sum to 1");
}

DensityMatrixSnapshot mix(const std::vector<double>& weights,
                          const std::vector<DensityMatrixSnapshot>& parts) {
    MixedStateSpec spec;
    spec.weights = weights;
    return mix(spec, parts);
}

DensityMatrixSnapshot mix(const MixedStateSpec& spec,
                          const std::vector<DensityMatrixSnapshot>& parts) {
    spec.validate();
    const std::vector<double>& weights = spec.weights;
    if (weights.size() != parts.size()) {
        throw ShapeError("mix needs one weight per component");
    }

    const int d = parts[0].rho.dim();
    const double t = parts[0].t;
    for (const DensityMatrixSnapshot& p : parts) {
        if (p.rho.dim() != d) throw ShapeError("mixture components must share dimension");
        if (std::abs(p.t - t) > 1e-9) throw ShapeError("mixture components must share time");
    }

    ComplexMatrix rho(d);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        ComplexMatrix term = parts[i].rho;
        term *= weights[i];
        rho += term;
    }
    DensityMatrixSnapshot snap;
    snap.t = t;
    snap.purity = purity_of(rho);
    snap.rho = std::move(rho);
    return snap;
}

double observable_average(const DensityMatrixSnapshot& snapshot, const ComplexMatrix& a) {
    if (a.dim() != snapshot.rho.dim()) throw ShapeError("observable dimension mismatch");
    a.require_hermitian("observable_average");
    const cplx tr = trace(matmul(snapshot.rho, a));
    if (std::abs(tr.imag()) > 1e-9) {
        throw NumericError("observable average has imaginary residue " +
                           std::to_string(tr.imag()));
    }
    return tr.real();
}

} // namespace subphase
