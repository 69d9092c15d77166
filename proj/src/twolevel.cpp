#include "subphase/twolevel.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "subphase/integrate.hpp"

namespace subphase::twolevel {

namespace {
constexpr double kPi = std::numbers::pi;
}

TwoLevelAngles TwoLevelAngles::from_waveforms(const Waveform& theta_wf, const Waveform& delta_wf) {
    TwoLevelAngles a;
    a.theta = [theta_wf](double t) { return theta_wf.eval(t); };
    a.theta_dot = [theta_wf](double t) { return theta_wf.deriv(t); };
    a.delta = [delta_wf](double t) { return delta_wf.eval(t); };
    a.delta_dot = [delta_wf](double t) { return delta_wf.deriv(t); };
    return a;
}

TwoLevelAngles TwoLevelAngles::from_spec(const TwoLevelSpec& spec) {
    spec.validate();
    const double gap = spec.delta;
    const Waveform mag = spec.w_mag;
    TwoLevelAngles a;
    a.theta = [mag, gap](double t) { return std::atan2(std::max(mag.eval(t), 0.0), gap); };
    a.theta_dot = [mag, gap](double t) {
        const double m = std::max(mag.eval(t), 0.0);
        return mag.deriv(t) * gap / (gap * gap + m * m);
    };
    const Waveform ph = spec.w_phase;
    a.delta = [ph](double t) { return ph.eval(t); };
    a.delta_dot = [ph](double t) { return ph.deriv(t); };
    return a;
}

TwoLevelAngles TwoLevelAngles::from_samples(const TimeGrid& grid,
                                            std::vector<double> theta_samples,
                                            std::vector<double> delta_samples) {
    if (theta_samples.size() != static_cast<std::size_t>(grid.n_samples()) ||
        delta_samples.size() != theta_samples.size()) {
        throw ShapeError("angle sample count must be n_steps + 1");
    }
    auto th = std::make_shared<std::vector<double>>(std::move(theta_samples));
    auto de = std::make_shared<std::vector<double>>(std::move(delta_samples));
    const TimeGrid g = grid;

    auto interp = [g](const std::vector<double>& v, double t) {
        const double x = (t - g.t0()) / g.step();
        int j = static_cast<int>(std::floor(x));
        j = std::max(0, std::min(j, g.n_steps() - 1));
        const double w = x - j;
        return (1.0 - w) * v[j] + w * v[j + 1];
    };
    auto diff = [g](const std::vector<double>& v, double t) {
        const int n = g.n_steps();
        int j = static_cast<int>(std::lround((t - g.t0()) / g.step()));
        j = std::max(0, std::min(j, n));
        const double h = g.step();
        if (j == 0) return (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
        if (j == n) return (3.0 * v[n] - 4.0 * v[n - 1] + v[n - 2]) / (2.0 * h);
        return (v[j + 1] - v[j - 1]) / (2.0 * h);
    };

    TwoLevelAngles a;
    a.theta = [th, interp](double t) { return interp(*th, t); };
    a.delta = [de, interp](double t) { return interp(*de, t); };
    a.theta_dot = [th, diff](double t) { return diff(*th, t); };
    a.delta_dot = [de, diff](double t) { return diff(*de, t); };
    return a;
}

StateVector instantaneous_ground_state(const TwoLevelAngles& angles, double t) {
    const double th = angles.theta(t);
    const double de = angles.delta(t);
    StateVector v(2);
    v[0] = std::cos(0.5 * th);
    v[1] = std::polar(std::sin(0.5 * th), -de);
    return v;
}

ComplexMatrix companion_hamiltonian(const TwoLevelAngles& angles, double delta_energy, double t) {
    const double th = angles.theta(t);
    const cplx w = std::polar(delta_energy * std::tan(th), angles.delta(t));
    ComplexMatrix h(2);
    h(0, 0) = -delta_energy;
    h(1, 1) = delta_energy;
    h(0, 1) = -w;
    h(1, 0) = -std::conj(w);
    return h;
}

double analytic_berry(const TwoLevelAngles& angles, const TimeGrid& grid) {
    std::vector<double> f(grid.n_samples());
    for (int j = 0; j < grid.n_samples(); ++j) {
        const double t = grid.time(j);
        const double s = std::sin(0.5 * angles.theta(t));
        f[j] = s * s * angles.delta_dot(t);
    }
    return trapezoid(grid, f);
}

double analytic_dynamical(const TwoLevelSpec& spec, const TimeGrid& grid) {
    spec.validate();
    std::vector<double> f(grid.n_samples());
    for (int j = 0; j < grid.n_samples(); ++j) {
        const double m = std::max(spec.w_mag.eval(grid.time(j)), 0.0);
        f[j] = -std::sqrt(spec.delta * spec.delta + m * m);
    }
    return trapezoid(grid, f);
}

double analytic_total_phase(const TwoLevelAngles& angles, double tau, double t_start) {
    const double th0 = 0.5 * angles.theta(t_start);
    const double th1 = 0.5 * angles.theta(tau);
    const cplx bracket = std::cos(th0) * std::cos(th1) +
                         std::polar(std::sin(th0) * std::sin(th1),
                                    angles.delta(t_start) - angles.delta(tau));
    if (std::abs(bracket) <= 1e-10) {
        throw OrthogonalStatesError("total phase undefined: endpoint states are orthogonal");
    }
    return std::arg(bracket);
}

SubphaseExponents subphase_exponents(const TwoLevelAngles& angles, const TimeGrid& grid) {
    const int ns = grid.n_samples();
    std::vector<double> p1(ns), p2(ns);
    std::vector<cplx> c1(ns), c2(ns);
    for (int j = 0; j < ns; ++j) {
        const double t = grid.time(j);
        const double th = angles.theta(t);
        if (th < 1e-6 || th > kPi - 1e-6) {
            throw SingularChannelError("mixing angle within 1e-6 of {0, pi} at t = " +
                                       std::to_string(t));
        }
        const double s = std::sin(0.5 * th), c = std::cos(0.5 * th);
        const double thd = angles.theta_dot(t), ded = angles.delta_dot(t);
        p1[j] = (-0.5 * s * c * thd) / (c * c);
        p2[j] = (0.5 * s * c * thd - s * s * ded) / (s * s);
        c1[j] = c;
        c2[j] = std::polar(s, -angles.delta(t));
    }
    SubphaseExponents out;
    out.printed_1 = cumulative_trapezoid(grid, p1);
    out.printed_2 = cumulative_trapezoid(grid, p2);
    out.derived_1.assign(ns, 0.0);
    out.derived_2.assign(ns, 0.0);
    for (int j = 1; j < ns; ++j) {
        out.derived_1[j] = out.derived_1[j - 1] - std::arg(c1[j] * std::conj(c1[j - 1]));
        out.derived_2[j] = out.derived_2[j - 1] - std::arg(c2[j] * std::conj(c2[j - 1]));
    }
    return out;
}

DensityMatrixSnapshot closed_form_density(const TwoLevelAngles& angles, const TimeGrid& grid,
                                          double t) {
    const int j = grid.index_of(t);
    const SubphaseExponents exps = subphase_exponents(angles, grid);
    const double th = angles.theta(grid.time(j));
    const double s = std::sin(0.5 * th), c = std::cos(0.5 * th);

    ComplexMatrix rho(2);
    rho(0, 0) = c * c;
    rho(1, 1) = s * s;
    rho(0, 1) = std::polar(c * s, angles.delta(grid.t0()) + exps.printed_relative(j));
    rho(1, 0) = std::conj(rho(0, 1));

    DensityMatrixSnapshot snap;
    snap.t = grid.time(j);
    snap.purity = trace(matmul(rho, rho)).real();
    snap.rho = std::move(rho);
    return snap;
}

} // namespace subphase::twolevel
