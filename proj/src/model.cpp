#include "subphase/model.hpp"

#include <cmath>
#include <memory>
#include <utility>

namespace subphase {

double WaveTerm::eval(double t) const {
    switch (kind) {
        case Kind::constant:
            return value;
        case Kind::ramp:
            return value + slope * (t - tref);
        case Kind::sinusoid:
            return amplitude * std::sin(omega * (t - tref) + phase) + offset;
    }
    return 0.0;
}

double WaveTerm::deriv(double t) const {
    switch (kind) {
        case Kind::constant:
            return 0.0;
        case Kind::ramp:
            return slope;
        case Kind::sinusoid:
            return amplitude * omega * std::cos(omega * (t - tref) + phase);
    }
    return 0.0;
}

double Waveform::eval(double t) const {
    double v = 0.0;
    for (const WaveTerm& w : terms) v += w.eval(t);
    return v;
}

double Waveform::deriv(double t) const {
    double v = 0.0;
    for (const WaveTerm& w : terms) v += w.deriv(t);
    return v;
}

Waveform Waveform::constant(double v) {
    WaveTerm w;
    w.kind = WaveTerm::Kind::constant;
    w.value = v;
    return {{w}};
}

Waveform Waveform::ramp(double v0, double slope, double tref) {
    WaveTerm w;
    w.kind = WaveTerm::Kind::ramp;
    w.value = v0;
    w.slope = slope;
    w.tref = tref;
    return {{w}};
}

Waveform Waveform::sinusoid(double amplitude, double omega, double phase, double offset,
                            double tref) {
    WaveTerm w;
    w.kind = WaveTerm::Kind::sinusoid;
    w.amplitude = amplitude;
    w.omega = omega;
    w.phase = phase;
    w.offset = offset;
    w.tref = tref;
    return {{w}};
}

void TwoLevelSpec::validate() const {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw ValidationError("two-level spec requires Delta > 0");
    }
    for (const Waveform* wf : {&w_mag, &w_phase}) {
        for (const WaveTerm& w : wf->terms) {
            for (double p : {w.value, w.slope, w.amplitude, w.omega, w.phase, w.offset, w.tref}) {
                if (!std::isfinite(p)) throw ValidationError("waveform parameter is not finite");
            }
        }
    }
}

const char* to_string(SplitMode mode) {
    switch (mode) {
        case SplitMode::initial:
            return "initial";
        case SplitMode::bare:
            return "bare";
        case SplitMode::deviation:
            return "deviation";
    }
    return "?";
}

SplitMode split_mode_from_string(const std::string& s) {
    if (s == "initial") return SplitMode::initial;
    if (s == "bare") return SplitMode::bare;
    if (s == "deviation") return SplitMode::deviation;
    throw ValidationError("unknown split mode '" + s + "' (expected initial|bare|deviation)");
}

const char* to_string(Regime regime) {
    return regime == Regime::adiabatic ? "adiabatic" : "nonadiabatic";
}

Regime regime_from_string(const std::string& s) {
    if (s == "adiabatic") return Regime::adiabatic;
    if (s == "nonadiabatic") return Regime::nonadiabatic;
    throw ValidationError("unknown regime '" + s + "' (expected adiabatic|nonadiabatic)");
}

HamiltonianModel::HamiltonianModel(ComplexMatrix h0, DeltaFn delta_h, TimeGrid grid, Regime regime,
                                   SplitMode split)
    : h0_(std::move(h0)), delta_(std::move(delta_h)), grid_(grid), regime_(regime), split_(split) {
    h0_.require_hermitian("HamiltonianModel h0");
    const double scale = std::max(h0_.maxnorm(), 1.0);
    for (int j = 0; j < grid_.n_samples(); ++j) {
        const ComplexMatrix dh = delta_(grid_.time(j));
        if (dh.dim() != h0_.dim()) throw ShapeError("delta_h dimension does not match h0");
        dh.require_hermitian("HamiltonianModel delta_h");
        if (j == 0 && split_ != SplitMode::bare && dh.maxnorm() > 1e-12 * scale) {
            throw ValidationError("delta_h(t0) must vanish for this split mode");
        }
    }
}

HamiltonianModel HamiltonianModel::tabulated(ComplexMatrix h0,
                                             std::vector<ComplexMatrix> delta_samples,
                                             TimeGrid grid, Regime regime, SplitMode split) {
    if (delta_samples.size() != static_cast<std::size_t>(grid.n_samples())) {
        throw ShapeError("tabulated model needs one delta_h sample per grid point");
    }
    auto samples = std::make_shared<std::vector<ComplexMatrix>>(std::move(delta_samples));
    const TimeGrid g = grid;
    DeltaFn fn = [samples, g](double t) {
        const double x = (t - g.t0()) / g.step();
        int j = static_cast<int>(std::floor(x));
        j = std::max(0, std::min(j, g.n_steps() - 1));
        const double w = x - j;
        ComplexMatrix out = (*samples)[j];
        out *= (1.0 - w);
        ComplexMatrix hi = (*samples)[j + 1];
        hi *= w;
        out += hi;
        return out;
    };
    return HamiltonianModel(std::move(h0), std::move(fn), grid, regime, split);
}

ComplexMatrix HamiltonianModel::delta_h(double t) const {
    if (!grid_.contains(t)) throw RangeError("time outside the model span");
    return delta_(t);
}

HamiltonianModel build_two_level(const TwoLevelSpec& spec, const TimeGrid& grid, SplitMode split,
                                 Regime regime) {
    spec.validate();
    for (int j = 0; j < grid.n_samples(); ++j) {
        if (spec.w_mag.eval(grid.time(j)) < -1e-12) {
            throw ValidationError("|w(t)| must be nonnegative on the grid");
        }
    }

    auto coupling = [spec](double t) {
        const double mag = std::max(spec.w_mag.eval(t), 0.0);
        const double ph = spec.w_phase.eval(t);
        return std::polar(mag, ph);
    };

    ComplexMatrix h0(2);
    h0(0, 0) = -spec.delta;
    h0(1, 1) = spec.delta;

    const cplx w0 = coupling(grid.t0());

    HamiltonianModel::DeltaFn delta_fn;
    switch (split) {
        case SplitMode::initial:
            h0(0, 1) = w0;
            h0(1, 0) = std::conj(w0);
            delta_fn = [coupling, w0](double t) {
                ComplexMatrix dh(2);
                const cplx w = coupling(t) - w0;
                dh(0, 1) = w;
                dh(1, 0) = std::conj(w);
                return dh;
            };
            break;
        case SplitMode::bare:
            delta_fn = [coupling](double t) {
                ComplexMatrix dh(2);
                const cplx w = coupling(t);
                dh(0, 1) = w;
                dh(1, 0) = std::conj(w);
                return dh;
            };
            break;
        case SplitMode::deviation:
            delta_fn = [coupling, w0](double t) {
                ComplexMatrix dh(2);
                const cplx w = coupling(t) - w0;
                dh(0, 1) = w;
                dh(1, 0) = std::conj(w);
                return dh;
            };
            break;
    }
    return HamiltonianModel(std::move(h0), std::move(delta_fn), grid, regime, split);
}

ComplexMatrix evaluate_hamiltonian(const HamiltonianModel& model, double t) {
    if (!model.grid().contains(t)) throw RangeError("time outside the model span");
    ComplexMatrix h = model.h0();
    h += model.delta_h(t);
    return h;
}

EigenBasis initial_eigenbasis(const HamiltonianModel& model) {
    EigenSystem sys = hermitian_eigensystem(model.h0());
    if (model.regime() == Regime::adiabatic && sys.has_degeneracy()) {
        throw DegeneracyError(
            "initial Hamiltonian has a degenerate eigenvalue cluster; the adiabatic channel "
            "expansion needs a resolvable basis");
    }
    return {std::move(sys.values), std::move(sys.vectors)};
}

} // namespace subphase
