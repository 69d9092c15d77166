#include "subphase/integrate.hpp"

#include <string>

namespace subphase {

namespace detail {

void require_finite(const std::vector<cplx>& y, double t) {
    for (const cplx& z : y) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw NumericError("non-finite derivative output at t = " + std::to_string(t));
        }
    }
}

} // namespace detail

namespace {

template <typename T>
std::vector<T> cumtrapz(const TimeGrid& grid, std::span<const T> samples) {
    if (samples.size() != static_cast<std::size_t>(grid.n_samples())) {
        throw ShapeError("quadrature sample count must be n_steps + 1");
    }
    std::vector<T> out(samples.size());
    out[0] = T{};
    const double h2 = 0.5 * grid.step();
    for (std::size_t j = 1; j < samples.size(); ++j) {
        out[j] = out[j - 1] + h2 * (samples[j - 1] + samples[j]);
    }
    return out;
}

} // namespace

std::vector<double> cumulative_trapezoid(const TimeGrid& grid, std::span<const double> samples) {
    return cumtrapz(grid, samples);
}

std::vector<cplx> cumulative_trapezoid(const TimeGrid& grid, std::span<const cplx> samples) {
    return cumtrapz(grid, samples);
}

double trapezoid(const TimeGrid& grid, std::span<const double> samples) {
    return cumtrapz(grid, samples).back();
}

} // namespace subphase
