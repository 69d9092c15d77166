#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "subphase/integrate.hpp"
#include "subphase/phases.hpp"
#include "subphase/verification.hpp"

using namespace subphase;

namespace {
constexpr double kPi = std::numbers::pi;

// trajectory with prescribed coefficient functions in a fixed diagonal basis
CoefficientTrajectory synthetic(const TimeGrid& grid,
                                const std::vector<std::function<cplx(double)>>& coeff,
                                const std::vector<std::function<cplx(double)>>& deriv) {
    const int d = static_cast<int>(coeff.size());
    CoefficientTrajectory traj;
    traj.grid = grid;
    traj.basis.energies.resize(d);
    for (int k = 0; k < d; ++k) {
        traj.basis.energies[k] = 2.0 * k - 1.0;
        traj.basis.vectors.push_back(StateVector::basis(d, k));
    }
    traj.coefficients.resize(static_cast<std::size_t>(grid.n_samples()) * d);
    traj.derivatives.resize(traj.coefficients.size());
    traj.dh_diag.assign(traj.coefficients.size(), 0.0);
    traj.norm_history.assign(grid.n_samples(), 1.0);
    for (int j = 0; j < grid.n_samples(); ++j) {
        for (int k = 0; k < d; ++k) {
            traj.coefficients[static_cast<std::size_t>(j) * d + k] = coeff[k](grid.time(j));
            traj.derivatives[static_cast<std::size_t>(j) * d + k] = deriv[k](grid.time(j));
        }
    }
    return traj;
}

} // namespace

TEST_CASE("wrap_angle lands in (-pi, pi]") {
    CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK(wrap_angle(2.0 * kPi + 0.25) == doctest::Approx(0.25));
    CHECK(wrap_angle(-7.5) == doctest::Approx(-7.5 + 2.0 * kPi).epsilon(1e-12));
}

TEST_CASE("pure winding coefficients give a linear channel phase") {
    const TimeGrid grid(0.0, 4.0, 400);
    const double w0 = 0.9, w1 = -0.3;
    const CoefficientTrajectory traj = synthetic(
        grid,
        {[&](double t) { return std::polar(0.8, w0 * t); },
         [&](double t) { return std::polar(0.6, w1 * t); }},
        {[&](double t) { return cplx(0.0, w0) * std::polar(0.8, w0 * t); },
         [&](double t) { return cplx(0.0, w1) * std::polar(0.6, w1 * t); }});
    const PhaseLedger ledger = sub_geometric_phases(traj);
    for (int j = 0; j < grid.n_samples(); j += 37) {
        CHECK(std::abs(ledger.gamma_at(j, 0) + w0 * grid.time(j)) < 1e-10);
        CHECK(std::abs(ledger.gamma_at(j, 1) + w1 * grid.time(j)) < 1e-10);
        CHECK(std::abs(ledger.amp_log_at(j, 0)) < 1e-12);
    }
    CHECK(ledger.gamma_at(0, 0) == 0.0);
    CHECK(ledger.dyn_at(0, 0) == 0.0);
}

TEST_CASE("free evolution leaves every phase at zero") {
    const TimeGrid grid(0.0, 5.0, 500);
    TwoLevelSpec spec;
    spec.delta = 1.0;
    spec.w_mag = Waveform::constant(0.0);
    spec.w_phase = Waveform::constant(0.0);
    const HamiltonianModel model = build_two_level(spec, grid, SplitMode::initial);
    const CoefficientTrajectory traj = integrate_from_channel(model, 0, grid);
    const PhaseLedger ledger = sub_geometric_phases(traj);
    CHECK(std::abs(ledger.gamma_at(grid.n_steps(), 0)) < 1e-12);
    CHECK(std::abs(ledger.amp_log_at(grid.n_steps(), 0)) < 1e-12);
    CHECK(!ledger.mask[0]);
    CHECK(ledger.mask[1]); // empty channel is masked from the start
    CHECK(ledger.first_masked_sample[1] == 0);

    const PhaseReport rep = aa_phase(traj, model, grid.t_end());
    CHECK(std::abs(wrap_angle(rep.aa_beta)) < 1e-9);
    CHECK(std::abs(rep.total_phi - wrap_angle(1.0 * grid.t_end())) < 1e-9);
    CHECK(std::abs(rep.dynamical_alpha - 1.0 * grid.t_end()) < 1e-9);
}

TEST_CASE("unwrap and quadrature agree on a driven run") {
    const TimeGrid grid(0.0, 10.0, 20000);
    const HamiltonianModel model = verification::ramp_model(grid, Regime::nonadiabatic);
    std::vector<cplx> c0{cplx(0.8), cplx(0.6)};
    const CoefficientTrajectory traj = integrate_coefficients(model, c0, grid);
    const PhaseLedger ledger = sub_geometric_phases(traj);
    for (int k = 0; k < 2; ++k) {
        std::vector<double> rate(grid.n_samples());
        for (int j = 0; j < grid.n_samples(); ++j) {
            rate[j] =
                -std::imag(std::conj(traj.c(j, k)) * traj.cdot(j, k)) / std::norm(traj.c(j, k));
        }
        CHECK(std::abs(trapezoid(grid, rate) - ledger.gamma_at(grid.n_steps(), k)) < 1e-7);
    }
    // continuity where unmasked
    for (int j = 1; j < grid.n_samples(); ++j) {
        CHECK(std::abs(ledger.gamma_at(j, 0) - ledger.gamma_at(j - 1, 0)) < kPi);
    }
}

TEST_CASE("masking: freeze, events, empty support") {
    const TimeGrid grid(0.0, 1.0, 4);
    // channel 0 collapses to zero halfway; channel 1 stays resolved
    const CoefficientTrajectory traj = synthetic(
        grid,
        {[](double t) { return t < 0.5 ? cplx(0.8) : cplx(0.0); },
         [](double) { return cplx(0.6); }},
        {[](double) { return cplx(0.0); }, [](double) { return cplx(0.0); }});
    const PhaseLedger ledger = sub_geometric_phases(traj);
    CHECK(ledger.mask[0]);
    CHECK(!ledger.mask[1]);
    REQUIRE(ledger.events.size() == 1);
    CHECK(ledger.events[0].channel == 0);
    CHECK(ledger.events[0].sample == 2);
    CHECK(ledger.gamma_at(4, 0) == ledger.gamma_at(1, 0)); // frozen

    // every channel below threshold from the start
    const CoefficientTrajectory dead =
        synthetic(grid, {[](double) { return cplx(0.0); }, [](double) { return cplx(0.0); }},
                  {[](double) { return cplx(0.0); }, [](double) { return cplx(0.0); }});
    CHECK_THROWS_AS(sub_geometric_phases(dead), EmptySupportError);
    CHECK_THROWS_AS(sub_geometric_phases(traj, -1.0), ValidationError);
}

TEST_CASE("berry connection: constant Hamiltonian gives zero") {
    const TimeGrid grid(0.0, 5.0, 200);
    TwoLevelSpec spec;
    spec.delta = 1.0;
    spec.w_mag = Waveform::constant(0.7);
    spec.w_phase = Waveform::constant(0.3);
    const HamiltonianModel model = build_two_level(spec, grid, SplitMode::bare);
    CHECK(std::abs(berry_phase_connection(model, 0, grid)) < 1e-12);
}

TEST_CASE("berry connection on the equatorial loop is pi") {
    const HamiltonianModel model = verification::circle_model(30.0, 4000);
    CHECK(std::abs(berry_phase_connection(model, 0, model.grid()) - kPi) < 1e-6);
}

TEST_CASE("berry connection at a fixed mixing angle matches the closed form") {
    // theta = pi/3: loop value 2 pi sin^2(pi/6) = pi/2
    const double period = 20.0;
    const TimeGrid grid(0.0, period, 4000);
    TwoLevelSpec spec;
    spec.delta = 1.0;
    spec.w_mag = Waveform::constant(std::tan(kPi / 3.0));
    spec.w_phase = Waveform::ramp(0.0, 2.0 * kPi / period);
    const HamiltonianModel model = build_two_level(spec, grid, SplitMode::bare);
    CHECK(std::abs(berry_phase_connection(model, 0, grid) - 0.5 * kPi) < 1e-5);
}

TEST_CASE("berry connection: reversing the path flips the sign") {
    const double period = 20.0;
    const TimeGrid grid(0.0, period, 1000);
    auto build = [&](double phase0, double slope) {
        TwoLevelSpec spec;
        spec.delta = 1.0;
        spec.w_mag = Waveform::constant(1.3);
        spec.w_phase = Waveform::ramp(phase0, slope);
        return build_two_level(spec, grid, SplitMode::bare);
    };
    const double rate = 2.0 * kPi / period;
    const double forward = berry_phase_connection(build(0.0, rate), 0, grid);
    const double backward = berry_phase_connection(build(2.0 * kPi, -rate), 0, grid);
    CHECK(std::abs(forward + backward) < 1e-9);
}

TEST_CASE("berry connection refuses crossings") {
    const TimeGrid grid(0.0, 1.0, 100);
    ComplexMatrix h0(2);
    h0(0, 0) = -1.0;
    h0(1, 1) = 1.0;
    auto dh = [](double t) {
        ComplexMatrix m(2);
        m(0, 0) = 2.0 * t;
        m(1, 1) = -2.0 * t;
        return m;
    };
    const HamiltonianModel model(h0, dh, grid, Regime::nonadiabatic);
    CHECK_THROWS_AS(berry_phase_connection(model, 0, grid), DegeneracyError);
}

TEST_CASE("decomposed phase: single occupied channel equals its gamma") {
    const TimeGrid grid(0.0, 4.0, 400);
    const double w0 = 0.9;
    const CoefficientTrajectory traj = synthetic(
        grid,
        {[&](double t) { return std::polar(1.0, w0 * t); }, [](double) { return cplx(0.0); }},
        {[&](double t) { return cplx(0.0, w0) * std::polar(1.0, w0 * t); },
         [](double) { return cplx(0.0); }});
    const PhaseLedger ledger = sub_geometric_phases(traj);
    CHECK(std::abs(berry_phase_decomposed(traj, ledger) - ledger.gamma_at(400, 0)) < 1e-10);
}

TEST_CASE("decomposed phase equals the direct connection quadrature") {
    const TimeGrid grid(0.0, 10.0, 2000);
    const double a1 = 0.5, a2 = -0.2, rate = 0.11;
    auto phi = [&](double t) { return rate * t; };
    const CoefficientTrajectory traj = synthetic(
        grid,
        {[&](double t) { return std::cos(phi(t)) * std::polar(1.0, a1 * t); },
         [&](double t) { return std::sin(phi(t)) * std::polar(1.0, a2 * t); }},
        {[&](double t) {
             return (-rate * std::sin(phi(t)) + cplx(0.0, a1) * std::cos(phi(t))) *
                    std::polar(1.0, a1 * t);
         },
         [&](double t) {
             return (rate * std::cos(phi(t)) + cplx(0.0, a2) * std::sin(phi(t))) *
                    std::polar(1.0, a2 * t);
         }});
    const PhaseLedger ledger = sub_geometric_phases(traj);

    // same quadrature through <psi|d psi> assembled from the raw components
    std::vector<double> rate_direct(grid.n_samples());
    for (int j = 0; j < grid.n_samples(); ++j) {
        cplx acc = 0.0;
        for (int k = 0; k < 2; ++k) acc += std::conj(traj.c(j, k)) * traj.cdot(j, k);
        rate_direct[j] = -std::imag(acc);
    }
    CHECK(std::abs(berry_phase_decomposed(traj, ledger) - trapezoid(grid, rate_direct)) < 1e-9);

    // grid mismatch is a shape error
    const TimeGrid other(0.0, 10.0, 1000);
    CoefficientTrajectory small = synthetic(
        other, {[](double) { return cplx(1.0); }, [](double) { return cplx(0.0); }},
        {[](double) { return cplx(0.0); }, [](double) { return cplx(0.0); }});
    CHECK_THROWS_AS(berry_phase_decomposed(small, ledger), ShapeError);
}

TEST_CASE("decomposed phase on an adiabatic run approaches the connection") {
    const HamiltonianModel model = verification::circle_model(100.0, 20000);
    const TimeGrid grid = model.grid();
    const CoefficientTrajectory inst = instantaneous_expansion(model, 0, grid);
    const PhaseLedger ledger = sub_geometric_phases(inst);
    const double decomposed = berry_phase_decomposed(inst, ledger);
    const double connection = berry_phase_connection(model, 0, grid);
    CHECK(std::abs(decomposed - connection) < 1e-4);
}

TEST_CASE("total phase: self-overlap, stationary channel, orthogonal error") {
    const TimeGrid grid(0.0, 2.0, 200);
    TwoLevelSpec spec;
    spec.delta = 0.6;
    spec.w_mag = Waveform::constant(0.0);
    spec.w_phase = Waveform::constant(0.0);
    const HamiltonianModel model = build_two_level(spec, grid, SplitMode::initial);
    const CoefficientTrajectory traj = integrate_from_channel(model, 1, grid);
    CHECK(total_phase(traj, 0.0) == 0.0);
    CHECK(std::abs(total_phase(traj, 2.0) - wrap_angle(-0.6 * 2.0)) < 1e-10);

    const CoefficientTrajectory swap = synthetic(
        grid, {[](double t) { return t < 1.0 ? cplx(1.0) : cplx(0.0); },
               [](double t) { return t < 1.0 ? cplx(0.0) : cplx(1.0); }},
        {[](double) { return cplx(0.0); }, [](double) { return cplx(0.0); }});
    CHECK_THROWS_AS(total_phase(swap, 2.0), OrthogonalStatesError);
}

TEST_CASE("dynamical phase: stationary channel and upper-state run") {
    const TimeGrid grid(0.0, 3.0, 1500);
    TwoLevelSpec spec;
    spec.delta = 1.0;
    spec.w_mag = Waveform::constant(0.0);
    spec.w_phase = Waveform::constant(0.0);
    const HamiltonianModel free = build_two_level(spec, grid, SplitMode::initial);
    const CoefficientTrajectory traj = integrate_from_channel(free, 0, grid);
    CHECK(std::abs(aa_dynamical_phase(traj, free, 3.0) - (1.0 * 3.0)) < 1e-10);

    // constant coupling, started in the upper instantaneous state:
    // alpha(tau) = -sqrt(Delta^2 + |w|^2) tau
    spec.w_mag = Waveform::constant(1.0);
    const HamiltonianModel driven = build_two_level(spec, grid, SplitMode::bare);
    const EigenSystem sys = hermitian_eigensystem(evaluate_hamiltonian(driven, 0.0));
    const CoefficientTrajectory upper = integrate_from_state(driven, sys.vectors[1], grid);
    CHECK(std::abs(aa_dynamical_phase(upper, driven, 3.0) + std::sqrt(2.0) * 3.0) < 1e-8);
}

TEST_CASE("aa_phase: report structure and exact beta identity") {
    const TimeGrid grid(0.0, 10.0, 2000);
    const HamiltonianModel model = verification::ramp_model(grid, Regime::adiabatic);
    const EigenSystem sys = hermitian_eigensystem(evaluate_hamiltonian(model, 0.0));
    const CoefficientTrajectory traj = integrate_from_state(model, sys.vectors[0], grid);
    const PhaseReport rep = aa_phase(traj, model, grid.t_end());

    CHECK(rep.aa_beta == wrap_angle(rep.total_phi - rep.dynamical_alpha));
    CHECK(rep.band == 0);
    CHECK(rep.berry_connection.has_value());
    CHECK(rep.berry_decomposed.has_value());
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            CHECK(rep.relative.at(k, l) == -rep.relative.at(l, k));
        }
        CHECK(rep.relative.at(k, k) == 0.0);
    }
}

TEST_CASE("gamma is orientation-odd under path reversal") {
    const TimeGrid grid(0.0, 4.0, 400);
    const double w0 = 0.9;
    auto fwd = [&](double t) { return std::polar(0.8, w0 * t + 0.2 * t * t); };
    const CoefficientTrajectory traj = synthetic(
        grid, {fwd, [](double) { return cplx(0.6); }},
        {[](double) { return cplx(0.0); }, [](double) { return cplx(0.0); }});
    CoefficientTrajectory rev = traj;
    for (int j = 0; j < grid.n_samples(); ++j) {
        for (int k = 0; k < 2; ++k) {
            rev.coefficients[static_cast<std::size_t>(j) * 2 + k] =
                traj.c(grid.n_steps() - j, k);
        }
    }
    const PhaseLedger lf = sub_geometric_phases(traj);
    const PhaseLedger lr = sub_geometric_phases(rev);
    CHECK(std::abs(lf.gamma_at(400, 0) + lr.gamma_at(400, 0)) < 1e-9);
}
