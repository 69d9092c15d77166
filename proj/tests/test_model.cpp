#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "subphase/model.hpp"
#include "subphase/verification.hpp"

using namespace subphase;

namespace {
constexpr double kPi = std::numbers::pi;

TwoLevelSpec make_spec(double delta, Waveform mag, Waveform phase) {
    TwoLevelSpec s;
    s.delta = delta;
    s.w_mag = std::move(mag);
    s.w_phase = std::move(phase);
    return s;
}
} // namespace

TEST_CASE("unperturbed two-level model") {
    const TimeGrid grid(0.0, 1.0, 10);
    const auto spec = make_spec(1.0, Waveform::constant(0.0), Waveform::constant(0.0));
    for (SplitMode split : {SplitMode::initial, SplitMode::bare, SplitMode::deviation}) {
        const HamiltonianModel m = build_two_level(spec, grid, split);
        CHECK(m.dim() == 2);
        CHECK(m.h0()(0, 0).real() == doctest::Approx(-1.0));
        CHECK(m.h0()(1, 1).real() == doctest::Approx(1.0));
        CHECK(std::abs(m.h0()(0, 1)) == doctest::Approx(0.0));
        CHECK(m.delta_h(0.5).maxnorm() == doctest::Approx(0.0));
    }
}

TEST_CASE("ramp coupling starts at zero") {
    const TimeGrid grid(0.0, 1.0, 10);
    const auto spec = make_spec(1.0, Waveform::ramp(0.0, 0.1), Waveform::constant(0.0));
    const HamiltonianModel m = build_two_level(spec, grid, SplitMode::deviation);
    CHECK(std::abs(m.delta_h(0.0)(0, 1)) == doctest::Approx(0.0));
    CHECK(m.delta_h(0.5)(0, 1).real() == doctest::Approx(0.05));
    CHECK(m.delta_h(1.0)(0, 1).real() == doctest::Approx(0.1));
}

TEST_CASE("subtract-initial convention on a winding phase") {
    const double period = 4.0;
    const TimeGrid grid(0.0, period, 64);
    const auto spec =
        make_spec(1.0, Waveform::constant(1.0), Waveform::ramp(0.0, 2.0 * kPi / period));
    const HamiltonianModel m = build_two_level(spec, grid, SplitMode::deviation);
    for (double t : {0.0, 0.5, 1.25, 3.0}) {
        const cplx expected = std::polar(1.0, 2.0 * kPi * t / period) - 1.0;
        CHECK(std::abs(m.delta_h(t)(0, 1) - expected) < 1e-12);
    }
}

TEST_CASE("constant coupling cancels entirely in the deviation split") {
    const TimeGrid grid(0.0, 2.0, 16);
    const auto spec = make_spec(1.0, Waveform::constant(1.0), Waveform::constant(0.0));
    const HamiltonianModel m = build_two_level(spec, grid, SplitMode::deviation);
    for (double t : {0.0, 0.7, 1.5, 2.0}) {
        const ComplexMatrix h = evaluate_hamiltonian(m, t);
        CHECK(h(0, 0).real() == doctest::Approx(-1.0));
        CHECK(h(1, 1).real() == doctest::Approx(1.0));
        CHECK(std::abs(h(0, 1)) == doctest::Approx(0.0));
        CHECK(std::abs(h(1, 0)) == doctest::Approx(0.0));
    }
}

TEST_CASE("initial split keeps the full physical Hamiltonian") {
    const TimeGrid grid(0.0, 2.0, 16);
    const auto spec = make_spec(1.0, Waveform::constant(1.0), Waveform::constant(0.0));
    const HamiltonianModel m = build_two_level(spec, grid, SplitMode::initial);
    const ComplexMatrix h = evaluate_hamiltonian(m, 1.0);
    CHECK(h(0, 1).real() == doctest::Approx(1.0));
    CHECK(m.delta_h(0.0).maxnorm() == doctest::Approx(0.0));
}

TEST_CASE("bare split leaves the raw coupling in delta_h") {
    const TimeGrid grid(0.0, 2.0, 16);
    const auto spec = make_spec(1.0, Waveform::constant(0.5), Waveform::constant(0.3));
    const HamiltonianModel m = build_two_level(spec, grid, SplitMode::bare);
    CHECK(std::abs(m.delta_h(0.0)(0, 1) - std::polar(0.5, 0.3)) < 1e-14);
    CHECK(std::abs(m.h0()(0, 1)) == doctest::Approx(0.0));
}

TEST_CASE("validation errors") {
    const TimeGrid grid(0.0, 1.0, 8);
    CHECK_THROWS_AS(
        build_two_level(make_spec(0.0, Waveform::constant(0.0), Waveform::constant(0.0)), grid,
                        SplitMode::initial),
        ValidationError);
    CHECK_THROWS_AS(
        build_two_level(make_spec(-1.0, Waveform::constant(0.0), Waveform::constant(0.0)), grid,
                        SplitMode::initial),
        ValidationError);
    CHECK_THROWS_AS(
        build_two_level(make_spec(1.0, Waveform::constant(-0.1), Waveform::constant(0.0)), grid,
                        SplitMode::initial),
        ValidationError);
}

TEST_CASE("evaluate_hamiltonian: range check and t0 identity") {
    const TimeGrid grid(0.0, 1.0, 8);
    const auto spec = make_spec(1.0, Waveform::ramp(0.0, 0.2), Waveform::constant(0.0));
    const HamiltonianModel m = build_two_level(spec, grid, SplitMode::initial);
    CHECK_THROWS_AS(evaluate_hamiltonian(m, 2.0), RangeError);
    CHECK_THROWS_AS(evaluate_hamiltonian(m, -0.5), RangeError);
    const ComplexMatrix h0 = evaluate_hamiltonian(m, 0.0);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) CHECK(std::abs(h0(i, j) - m.h0()(i, j)) < 1e-12);
    }
}

TEST_CASE("hermiticity holds at every grid point for a random tabulated model") {
    const TimeGrid grid(0.0, 3.0, 60);
    const HamiltonianModel m = verification::random_model(4, 99u, grid);
    for (int j = 0; j < grid.n_samples(); ++j) {
        CHECK(evaluate_hamiltonian(m, grid.time(j)).hermiticity_residual() <= 1e-12);
    }
}

TEST_CASE("initial eigenbasis of the two-level model") {
    const TimeGrid grid(0.0, 1.0, 8);
    for (double delta : {1.0, 0.5}) {
        const auto spec = make_spec(delta, Waveform::ramp(0.0, 0.1), Waveform::constant(0.0));
        const HamiltonianModel m = build_two_level(spec, grid, SplitMode::deviation);
        const EigenBasis basis = initial_eigenbasis(m);
        CHECK(basis.energies[0] == doctest::Approx(-delta));
        CHECK(basis.energies[1] == doctest::Approx(delta));
        CHECK(basis.vectors[0][0].real() == doctest::Approx(1.0));
        CHECK(basis.vectors[1][1].real() == doctest::Approx(1.0));
    }
}

TEST_CASE("orthonormality of a seeded 4x4 initial basis") {
    const TimeGrid grid(0.0, 1.0, 8);
    const HamiltonianModel m = verification::random_model(4, 7u, grid);
    const EigenBasis basis = initial_eigenbasis(m);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            CHECK(std::abs(inner(basis.vectors[a], basis.vectors[b]) - (a == b ? 1.0 : 0.0)) <
                  1e-10);
        }
    }
}

TEST_CASE("degenerate h0 refuses adiabatic runs only") {
    const TimeGrid grid(0.0, 1.0, 8);
    ComplexMatrix h0 = ComplexMatrix::identity(2);
    auto zero = [](double) { return ComplexMatrix(2); };
    const HamiltonianModel adiabatic(h0, zero, grid, Regime::adiabatic);
    CHECK_THROWS_AS(initial_eigenbasis(adiabatic), DegeneracyError);
    const HamiltonianModel general(h0, zero, grid, Regime::nonadiabatic);
    CHECK_NOTHROW(initial_eigenbasis(general));
}

TEST_CASE("tabulated model interpolates linearly") {
    const TimeGrid grid(0.0, 1.0, 2);
    ComplexMatrix h0(2);
    h0(0, 0) = -1.0;
    h0(1, 1) = 1.0;
    std::vector<ComplexMatrix> samples(3, ComplexMatrix(2));
    samples[1](0, 1) = 0.5;
    samples[1](1, 0) = 0.5;
    samples[2](0, 1) = 1.0;
    samples[2](1, 0) = 1.0;
    const HamiltonianModel m =
        HamiltonianModel::tabulated(h0, samples, grid, Regime::nonadiabatic);
    CHECK(m.delta_h(0.25)(0, 1).real() == doctest::Approx(0.25));
    CHECK(m.delta_h(0.75)(0, 1).real() == doctest::Approx(0.75));
}

TEST_CASE("non-bare splits require delta_h(t0) = 0") {
    const TimeGrid grid(0.0, 1.0, 8);
    ComplexMatrix h0(2);
    h0(0, 0) = -1.0;
    h0(1, 1) = 1.0;
    auto nonzero = [](double) {
        ComplexMatrix dh(2);
        dh(0, 1) = 0.5;
        dh(1, 0) = 0.5;
        return dh;
    };
    CHECK_THROWS_AS(HamiltonianModel(h0, nonzero, grid, Regime::nonadiabatic, SplitMode::initial),
                    ValidationError);
    CHECK_NOTHROW(HamiltonianModel(h0, nonzero, grid, Regime::nonadiabatic, SplitMode::bare));
}
