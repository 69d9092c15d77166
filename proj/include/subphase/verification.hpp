#pragma once

#include <string>
#include <vector>

#include "subphase/model.hpp"

namespace subphase::verification {

struct Check {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double bound = 0.0;
};

struct Criterion {
    std::string name;
    bool pass = true;
    std::vector<Check> checks;
};

struct Config {
    int n_steps = 4000;
    double t_end = 10.0;
};

// The full acceptance suite; every tolerance is pinned here. Coarse grids
// (small n_steps) make the resolution-sensitive checks fail with their
// measured residuals, by design.
std::vector<Criterion> run_acceptance(const Config& cfg = {});

bool all_passed(const std::vector<Criterion>& criteria);

// one line per criterion plus indented per-check lines
std::string format_text(const std::vector<Criterion>& criteria);
std::string format_json(const std::vector<Criterion>& criteria);

// Shared deterministic test fixtures.
HamiltonianModel ramp_model(const TimeGrid& grid, Regime regime = Regime::adiabatic);
HamiltonianModel bare_model(const TimeGrid& grid, Regime regime = Regime::nonadiabatic);
HamiltonianModel random_model(int dim, unsigned seed, const TimeGrid& grid,
                              Regime regime = Regime::nonadiabatic);
// equatorial drive: H(t) = [[0, exp(i 2 pi t / T)], [exp(-i 2 pi t / T), 0]]
HamiltonianModel circle_model(double period, int n_steps, Regime regime = Regime::adiabatic);

ComplexMatrix random_hermitian(int dim, unsigned seed, double scale);

} // namespace subphase::verification
