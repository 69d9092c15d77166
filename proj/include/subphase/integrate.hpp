#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "subphase/kernels.hpp"
#include "subphase/types.hpp"

namespace subphase {

// Cumulative composite-trapezoid integral on the grid. Output has one value
// per sample; the value at t0 is exactly zero.
std::vector<double> cumulative_trapezoid(const TimeGrid& grid, std::span<const double> samples);
std::vector<cplx> cumulative_trapezoid(const TimeGrid& grid, std::span<const cplx> samples);

double trapezoid(const TimeGrid& grid, std::span<const double> samples);

namespace detail {
void require_finite(const std::vector<cplx>& y, double t);
}

// Classical fixed-step RK4 update for y' = f(t, y) on complex state vectors.
template <typename F>
std::vector<cplx> rk4_step(F&& f, double t, const std::vector<cplx>& y, double h) {
    if (!(h > 0.0)) throw ValidationError("rk4_step requires h > 0");
    const auto& k = kernels::active();
    const std::size_t n = y.size();

    std::vector<cplx> k1 = f(t, y);
    std::vector<cplx> stage = y;
    k.caxpy(n, 0.5 * h, k1.data(), stage.data());
    std::vector<cplx> k2 = f(t + 0.5 * h, stage);
    stage = y;
    k.caxpy(n, 0.5 * h, k2.data(), stage.data());
    std::vector<cplx> k3 = f(t + 0.5 * h, stage);
    stage = y;
    k.caxpy(n, h, k3.data(), stage.data());
    std::vector<cplx> k4 = f(t + h, stage);

    std::vector<cplx> out = y;
    k.caxpy(n, h / 6.0, k1.data(), out.data());
    k.caxpy(n, h / 3.0, k2.data(), out.data());
    k.caxpy(n, h / 3.0, k3.data(), out.data());
    k.caxpy(n, h / 6.0, k4.data(), out.data());
    detail::require_finite(out, t);
    return out;
}

} // namespace subphase
