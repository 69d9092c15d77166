#include "subphase/propagation.hpp"

#include <cmath>
#include <string>

#include "subphase/integrate.hpp"
#include "subphase/kernels.hpp"
#include "subphase/phases.hpp"

namespace subphase {

namespace {

constexpr cplx kImag{0.0, 1.0};

void check_grid_matches_model(const HamiltonianModel& model, const TimeGrid& grid) {
    if (!model.grid().contains(grid.t0()) || !model.grid().contains(grid.t_end())) {
        throw RangeError("integration grid exceeds the model span");
    }
}

// -i * exp(i (E_k - E_l)(t - t0)) * M_kl assembled as a dense generator
ComplexMatrix interaction_generator(const ComplexMatrix& m, const std::vector<double>& energies,
                                    double tau) {
    const int d = m.dim();
    ComplexMatrix g(d);
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            g(k, l) = -kImag * std::polar(1.0, (energies[k] - energies[l]) * tau) * m(k, l);
        }
    }
    return g;
}

std::vector<cplx> matvec(const ComplexMatrix& m, const std::vector<cplx>& x) {
    std::vector<cplx> y(x.size());
    kernels::active().cmatvec(m.dim(), m.data(), x.data(), y.data());
    return y;
}

void rk4_advance(std::vector<cplx>& y, const std::vector<cplx>& k1, const std::vector<cplx>& k2,
                 const std::vector<cplx>& k3, const std::vector<cplx>& k4, double t, double h) {
    const auto& kt = kernels::active();
    kt.caxpy(y.size(), h / 6.0, k1.data(), y.data());
    kt.caxpy(y.size(), h / 3.0, k2.data(), y.data());
    kt.caxpy(y.size(), h / 3.0, k3.data(), y.data());
    kt.caxpy(y.size(), h / 6.0, k4.data(), y.data());
    detail::require_finite(y, t);
}

std::vector<cplx> stage(const std::vector<cplx>& y, const std::vector<cplx>& k, double hk) {
    std::vector<cplx> s = y;
    kernels::active().caxpy(s.size(), hk, k.data(), s.data());
    return s;
}

void check_norm_drift(double norm0, double norm, double t, const char* who) {
    if (std::abs(norm - norm0) > 1e-6) {
        throw ResolutionError(std::string(who) + ": norm drift " +
                              std::to_string(std::abs(norm - norm0)) + " at t = " +
                              std::to_string(t) + "; refine the time step");
    }
}

} // namespace

ComplexMatrix perturbation_matrix(const HamiltonianModel& model, const EigenBasis& basis,
                                  double t) {
    const ComplexMatrix dh = model.delta_h(t);
    const int d = dh.dim();
    ComplexMatrix m(d);
    for (int l = 0; l < d; ++l) {
        const StateVector col = apply(dh, basis.vectors[l]);
        for (int k = 0; k < d; ++k) m(k, l) = inner(basis.vectors[k], col);
    }
    return m;
}

CoefficientTrajectory integrate_coefficients(const HamiltonianModel& model,
                                             const std::vector<cplx>& initial,
                                             const TimeGrid& grid) {
    check_grid_matches_model(model, grid);
    if (static_cast<int>(initial.size()) != model.dim()) {
        throw ShapeError("initial coefficient vector does not match the model dimension");
    }
    EigenBasis basis = initial_eigenbasis(model);
    const int d = model.dim();
    const int n = grid.n_steps();
    const double h = grid.step();
    const double t0 = grid.t0();
    const auto& kt = kernels::active();

    const double norm0 = kt.cnorm2(initial.size(), initial.data());
    if (std::abs(norm0 - 1.0) > 1e-8) {
        throw ValidationError("initial coefficients must be normalized");
    }

    CoefficientTrajectory traj;
    traj.grid = grid;
    traj.basis = basis;
    traj.coefficients.resize(static_cast<std::size_t>(n + 1) * d);
    traj.derivatives.resize(traj.coefficients.size());
    traj.dh_diag.resize(traj.coefficients.size());
    traj.norm_history.resize(n + 1);

    std::vector<cplx> c = initial;
    ComplexMatrix m_begin = perturbation_matrix(model, basis, grid.time(0));
    for (int j = 0; j <= n; ++j) {
        const double tj = grid.time(j);
        std::copy(c.begin(), c.end(), traj.coefficients.begin() + static_cast<std::size_t>(j) * d);
        const ComplexMatrix gen = interaction_generator(m_begin, basis.energies, tj - t0);
        const std::vector<cplx> cdot = matvec(gen, c);
        std::copy(cdot.begin(), cdot.end(),
                  traj.derivatives.begin() + static_cast<std::size_t>(j) * d);
        for (int k = 0; k < d; ++k) {
            traj.dh_diag[static_cast<std::size_t>(j) * d + k] = m_begin(k, k).real();
        }
        traj.norm_history[j] = kt.cnorm2(c.size(), c.data());
        check_norm_drift(norm0, traj.norm_history[j], tj, "integrate_coefficients");
        if (j == n) break;

        const double tmid = tj + 0.5 * h;
        const ComplexMatrix m_mid = perturbation_matrix(model, basis, tmid);
        const ComplexMatrix m_end = perturbation_matrix(model, basis, grid.time(j + 1));
        const ComplexMatrix gen_mid = interaction_generator(m_mid, basis.energies, tmid - t0);
        const ComplexMatrix gen_end =
            interaction_generator(m_end, basis.energies, grid.time(j + 1) - t0);

        const std::vector<cplx>& k1 = cdot;
        const std::vector<cplx> k2 = matvec(gen_mid, stage(c, k1, 0.5 * h));
        const std::vector<cplx> k3 = matvec(gen_mid, stage(c, k2, 0.5 * h));
        const std::vector<cplx> k4 = matvec(gen_end, stage(c, k3, h));
        rk4_advance(c, k1, k2, k3, k4, tj, h);
        m_begin = m_end;
    }
    return traj;
}

CoefficientTrajectory integrate_from_channel(const HamiltonianModel& model, int channel,
                                             const TimeGrid& grid) {
    if (channel < 0 || channel >= model.dim()) {
        throw ValidationError("initial channel index out of range");
    }
    std::vector<cplx> initial(model.dim(), 0.0);
    initial[channel] = 1.0;
    CoefficientTrajectory traj = integrate_coefficients(model, initial, grid);
    traj.initial_channel = channel;
    return traj;
}

CoefficientTrajectory integrate_from_state(const HamiltonianModel& model, const StateVector& psi0,
                                           const TimeGrid& grid) {
    if (psi0.dim() != model.dim()) throw ShapeError("psi0 dimension does not match the model");
    EigenBasis basis = initial_eigenbasis(model);
    std::vector<cplx> initial(model.dim());
    for (int k = 0; k < model.dim(); ++k) initial[k] = inner(basis.vectors[k], psi0);
    return integrate_coefficients(model, initial, grid);
}

CoefficientTrajectory first_order_coefficients(const HamiltonianModel& model, int n,
                                               const TimeGrid& grid, bool include_diagonal) {
    check_grid_matches_model(model, grid);
    if (model.regime() != Regime::adiabatic) {
        throw ValidationError("first_order_coefficients requires an adiabatic-regime model");
    }
    if (n < 0 || n >= model.dim()) throw ValidationError("channel index out of range");

    EigenBasis basis = initial_eigenbasis(model);
    const int d = model.dim();
    const int ns = grid.n_samples();
    const double t0 = grid.t0();

    CoefficientTrajectory traj;
    traj.grid = grid;
    traj.basis = basis;
    traj.initial_channel = n;
    traj.coefficients.assign(static_cast<std::size_t>(ns) * d, 0.0);
    traj.derivatives.resize(traj.coefficients.size());
    traj.dh_diag.resize(traj.coefficients.size());
    traj.norm_history.resize(ns);

    // integrand per channel: -i exp(+i (E_k - E_n)(t - t0)) <k|dH(t)|n>
    std::vector<std::vector<cplx>> integrand(d, std::vector<cplx>(ns));
    for (int j = 0; j < ns; ++j) {
        const double tj = grid.time(j);
        const ComplexMatrix m = perturbation_matrix(model, basis, tj);
        for (int k = 0; k < d; ++k) {
            traj.dh_diag[static_cast<std::size_t>(j) * d + k] = m(k, k).real();
            integrand[k][j] =
                -kImag * std::polar(1.0, (basis.energies[k] - basis.energies[n]) * (tj - t0)) *
                m(k, n);
        }
    }
    for (int k = 0; k < d; ++k) {
        if (k == n && !include_diagonal) {
            for (int j = 0; j < ns; ++j) {
                traj.coefficients[static_cast<std::size_t>(j) * d + k] = 1.0;
                traj.derivatives[static_cast<std::size_t>(j) * d + k] = 0.0;
            }
            continue;
        }
        const std::vector<cplx> acc = cumulative_trapezoid(grid, integrand[k]);
        for (int j = 0; j < ns; ++j) {
            cplx val = acc[j];
            if (k == n) val += 1.0;
            traj.coefficients[static_cast<std::size_t>(j) * d + k] = val;
            traj.derivatives[static_cast<std::size_t>(j) * d + k] = integrand[k][j];
        }
    }
    const auto& kt = kernels::active();
    for (int j = 0; j < ns; ++j) {
        traj.norm_history[j] =
            kt.cnorm2(d, traj.coefficients.data() + static_cast<std::size_t>(j) * d);
    }
    return traj;
}

StateTrajectory direct_schrodinger_solve(const HamiltonianModel& model, const StateVector& psi0,
                                         const TimeGrid& grid) {
    check_grid_matches_model(model, grid);
    if (psi0.dim() != model.dim()) throw ShapeError("psi0 dimension does not match the model");
    if (!psi0.is_normalized(1e-8)) throw ValidationError("psi0 must be normalized");

    const int n = grid.n_steps();
    const double h = grid.step();
    const auto& kt = kernels::active();

    StateTrajectory out;
    out.grid = grid;
    out.states.reserve(n + 1);

    auto generator = [&](double t) {
        ComplexMatrix g = evaluate_hamiltonian(model, t);
        g *= -kImag; // psi' = -i H psi
        return g;
    };

    std::vector<cplx> psi = psi0.amplitudes();
    const double norm0 = kt.cnorm2(psi.size(), psi.data());
    ComplexMatrix g_begin = generator(grid.time(0));
    for (int j = 0; j <= n; ++j) {
        out.states.emplace_back(psi);
        check_norm_drift(norm0, kt.cnorm2(psi.size(), psi.data()), grid.time(j),
                         "direct_schrodinger_solve");
        if (j == n) break;
        const ComplexMatrix g_mid = generator(grid.time(j) + 0.5 * h);
        const ComplexMatrix g_end = generator(grid.time(j + 1));
        const std::vector<cplx> k1 = matvec(g_begin, psi);
        const std::vector<cplx> k2 = matvec(g_mid, stage(psi, k1, 0.5 * h));
        const std::vector<cplx> k3 = matvec(g_mid, stage(psi, k2, 0.5 * h));
        const std::vector<cplx> k4 = matvec(g_end, stage(psi, k3, h));
        rk4_advance(psi, k1, k2, k3, k4, grid.time(j), h);
        g_begin = g_end;
    }
    return out;
}

StateTrajectory assemble_state(const CoefficientTrajectory& traj, const PhaseLedger* ledger) {
    const int d = traj.dim();
    const double t0 = traj.grid.t0();
    if (ledger) {
        if (!(ledger->grid == traj.grid)) {
            throw ShapeError("phase ledger grid does not match the trajectory grid");
        }
        if (ledger->channels() != d) {
            throw ShapeError("phase ledger channel count does not match the trajectory");
        }
    }

    StateTrajectory out;
    out.grid = traj.grid;
    out.states.reserve(traj.n_samples());
    for (int j = 0; j < traj.n_samples(); ++j) {
        const double tau = traj.grid.time(j) - t0;
        StateVector psi(d);
        for (int k = 0; k < d; ++k) {
            // instantaneous-expansion trajectories carry no free phase
            const double ene = traj.instantaneous ? 0.0 : traj.basis.energies[k];
            cplx amp;
            if (ledger && !ledger->masked_at(j, k)) {
                // factored channel: exp(i gamma) exp(-i d_k) on the reduced
                // coefficient; regroups exactly to c_k exp(-i E_k tau)
                const double gamma = ledger->gamma_at(j, k);
                const double diag_integral =
                    ledger->dyn_at(j, k) - traj.basis.energies[k] * tau;
                const cplx reduced = std::polar(1.0, -gamma + diag_integral) * traj.c(j, k);
                amp = std::polar(1.0, gamma - (ene * tau + diag_integral)) * reduced;
            } else {
                amp = traj.c(j, k) * std::polar(1.0, -ene * tau);
            }
            kernels::active().caxpy(static_cast<std::size_t>(d), amp, traj.basis.vectors[k].data(),
                                    psi.data());
        }
        out.states.push_back(std::move(psi));
    }
    return out;
}

CoefficientTrajectory instantaneous_expansion(const HamiltonianModel& model, int band,
                                              const TimeGrid& grid) {
    check_grid_matches_model(model, grid);
    if (band < 0 || band >= model.dim()) throw ValidationError("band index out of range");
    EigenBasis basis = initial_eigenbasis(model);
    const int d = model.dim();
    const int ns = grid.n_samples();
    const double h = grid.step();

    CoefficientTrajectory traj;
    traj.grid = grid;
    traj.basis = basis;
    traj.initial_channel = band;
    traj.instantaneous = true;
    traj.coefficients.resize(static_cast<std::size_t>(ns) * d);
    traj.derivatives.resize(traj.coefficients.size());
    traj.dh_diag.resize(traj.coefficients.size());
    traj.norm_history.assign(ns, 0.0);

    StateVector prev;
    for (int j = 0; j < ns; ++j) {
        const double tj = grid.time(j);
        const ComplexMatrix hmat = evaluate_hamiltonian(model, tj);
        const EigenSystem sys = hermitian_eigensystem(hmat);
        const double gap_tol = 1e-9 * std::max(hmat.maxnorm(), 1e-300);
        if ((band > 0 && sys.values[band] - sys.values[band - 1] < gap_tol) ||
            (band + 1 < d && sys.values[band + 1] - sys.values[band] < gap_tol)) {
            throw DegeneracyError("eigenvalue crossing along the path at t = " +
                                  std::to_string(tj));
        }
        const StateVector& v = sys.vectors[band];
        if (j > 0) {
            const double jump = std::arg(inner(prev, v));
            if (std::abs(jump) > 1.5707963267948966) {
                throw ResolutionError(
                    "eigenvector gauge cannot be tracked on this grid (overlap phase above "
                    "pi/2 at t = " +
                    std::to_string(tj) + ")");
            }
        }
        const ComplexMatrix m = perturbation_matrix(model, basis, tj);
        for (int k = 0; k < d; ++k) {
            traj.coefficients[static_cast<std::size_t>(j) * d + k] = inner(basis.vectors[k], v);
            traj.dh_diag[static_cast<std::size_t>(j) * d + k] = m(k, k).real();
        }
        traj.norm_history[j] = 1.0;
        prev = v;
    }

    // second-order finite differences for the stored derivatives
    auto cat = [&](int j, int k) { return traj.c(j, k); };
    for (int k = 0; k < d; ++k) {
        for (int j = 0; j < ns; ++j) {
            cplx der;
            if (j == 0) {
                der = (-3.0 * cat(0, k) + 4.0 * cat(1, k) - cat(2, k)) / (2.0 * h);
            } else if (j == ns - 1) {
                der = (3.0 * cat(j, k) - 4.0 * cat(j - 1, k) + cat(j - 2, k)) / (2.0 * h);
            } else {
                der = (cat(j + 1, k) - cat(j - 1, k)) / (2.0 * h);
            }
            traj.derivatives[static_cast<std::size_t>(j) * d + k] = der;
        }
    }
    return traj;
}

} // namespace subphase
