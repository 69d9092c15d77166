#pragma once

#include <functional>
#include <string>
#include <vector>

#include "subphase/eigensystem.hpp"
#include "subphase/types.hpp"

namespace subphase {

// Waveforms are sums of constant / linear-ramp / sinusoid terms, each with an
// analytic derivative. That covers the built-in two-level drives; arbitrary
// matrices go through tabulated models instead.
struct WaveTerm {
    enum class Kind { constant, ramp, sinusoid };
    Kind kind = Kind::constant;
    // constant: value
    // ramp: value + slope * (t - tref)
    // sinusoid: amplitude * sin(omega * (t - tref) + phase) + offset
    double value = 0.0;
    double slope = 0.0;
    double amplitude = 0.0;
    double omega = 0.0;
    double phase = 0.0;
    double offset = 0.0;
    double tref = 0.0;

    double eval(double t) const;
    double deriv(double t) const;
};

struct Waveform {
    std::vector<WaveTerm> terms;

    double eval(double t) const;
    double deriv(double t) const;

    static Waveform constant(double v);
    static Waveform ramp(double v0, double slope, double tref = 0.0);
    static Waveform sinusoid(double amplitude, double omega, double phase = 0.0,
                             double offset = 0.0, double tref = 0.0);
};

// Two-level drive: H0 = diag(-Delta, Delta) with coupling
// w(t) = |w(t)| exp(i delta(t)) on the off-diagonal.
struct TwoLevelSpec {
    double delta = 1.0; // energy gap parameter, > 0
    Waveform w_mag;     // |w(t)| >= 0
    Waveform w_phase;   // delta(t), radians

    void validate() const;
};

// How H(t) is divided into a time-independent part and a perturbation.
//   initial:   h0 = H(t0) in full, dH(t) = H(t) - H(t0); dH(t0) = 0.
//   bare:      h0 = diag(-Delta, Delta), dH(t) = the raw coupling matrix,
//              generally nonzero at t0.
//   deviation: h0 = diag(-Delta, Delta), dH(t) = coupling minus its t0 value;
//              the constant initial coupling is dropped from the model.
enum class SplitMode { initial, bare, deviation };

const char* to_string(SplitMode mode);
SplitMode split_mode_from_string(const std::string& s);

enum class Regime { adiabatic, nonadiabatic };

const char* to_string(Regime regime);
Regime regime_from_string(const std::string& s);

// Split Hamiltonian H(t) = h0 + dH(t). Immutable after construction;
// evaluation is pure. Construction validates Hermiticity of h0 and of dH at
// every grid sample, and dH(t0) = 0 unless the split is `bare`.
class HamiltonianModel {
public:
    using DeltaFn = std::function<ComplexMatrix(double)>;

    HamiltonianModel(ComplexMatrix h0, DeltaFn delta_h, TimeGrid grid, Regime regime,
                     SplitMode split = SplitMode::initial);

    // dH given by linear interpolation of per-sample matrices
    static HamiltonianModel tabulated(ComplexMatrix h0, std::vector<ComplexMatrix> delta_samples,
                                      TimeGrid grid, Regime regime,
                                      SplitMode split = SplitMode::initial);

    int dim() const { return h0_.dim(); }
    const ComplexMatrix& h0() const { return h0_; }
    const TimeGrid& grid() const { return grid_; }
    Regime regime() const { return regime_; }
    SplitMode split() const { return split_; }

    ComplexMatrix delta_h(double t) const;

private:
    ComplexMatrix h0_;
    DeltaFn delta_;
    TimeGrid grid_;
    Regime regime_;
    SplitMode split_;
};

HamiltonianModel build_two_level(const TwoLevelSpec& spec, const TimeGrid& grid, SplitMode split,
                                 Regime regime = Regime::nonadiabatic);

// h0 + dH(t); Hermitian by construction, range-checked in t
ComplexMatrix evaluate_hamiltonian(const HamiltonianModel& model, double t);

struct EigenBasis {
    std::vector<double> energies;     // E_k at t0, ascending; omega_k = E_k (hbar = 1)
    std::vector<StateVector> vectors; // orthonormal channel basis
    int dim() const { return static_cast<int>(energies.size()); }
};

// Channel basis from h0. Degenerate clusters are an error for adiabatic-mode
// models: the channel expansion needs a resolvable basis there.
EigenBasis initial_eigenbasis(const HamiltonianModel& model);

} // namespace subphase
