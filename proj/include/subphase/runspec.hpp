#pragma once

#include <string>
#include <vector>

#include "subphase/density.hpp"
#include "subphase/phases.hpp"

namespace subphase {

// A complete run description, parsed from the versioned JSON run-spec file
// (see README for the schema). Field-level messages on validation failure.
struct RunSpec {
    static constexpr int kSchemaVersion = 1;

    enum class ModelKind { two_level, tabulated };
    enum class InitialKind { channel, ground, amplitudes };
    enum class Method { exact, first_order };

    // model
    ModelKind kind = ModelKind::two_level;
    TwoLevelSpec two_level;
    ComplexMatrix h0;                         // tabulated models
    std::vector<ComplexMatrix> delta_samples; // tabulated models
    SplitMode split = SplitMode::initial;

    // grid
    double t0 = 0.0;
    double t_end = 10.0;
    int n_steps = 4000;

    // run
    InitialKind initial_kind = InitialKind::channel;
    int initial_channel = 0;
    std::vector<cplx> amplitudes;
    Regime regime = Regime::nonadiabatic;
    double threshold = 1e-8;
    Method method = Method::exact;

    // outputs
    std::string report_name = "report.json";
    std::string trajectory_name = "trajectory.csv";

    TimeGrid grid() const { return TimeGrid(t0, t_end, n_steps); }
    HamiltonianModel build_model() const;

    static RunSpec from_json_text(const std::string& text);
    static RunSpec from_file(const std::string& path);

    // deterministic reference configuration used when no spec file is given
    static RunSpec reference();

    // sweep transforms
    RunSpec with_n_steps(int n) const;
    RunSpec with_amplitude_scale(double s) const;
    RunSpec with_rate(double r) const; // time dilation; two-level models only
};

struct RunOutput {
    RunSpec spec;
    CoefficientTrajectory traj;
    PhaseLedger ledger;
    PhaseReport report;
    std::vector<double> alpha_integrand; // per sample
    std::vector<double> geo_rate;        // per sample
    // largest distance between the reassembled state and an independent
    // direct integration of the Schroedinger equation (for first-order runs
    // this measures the perturbative error instead)
    double oracle_residual = 0.0;
};

RunOutput execute(const RunSpec& spec);

} // namespace subphase
