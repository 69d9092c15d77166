#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subphase/density.hpp"
#include "subphase/kernels.hpp"
#include "subphase/reporting.hpp"
#include "subphase/runspec.hpp"
#include "subphase/verification.hpp"

namespace {

using namespace subphase;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitVerification = 3;

struct CommonOpts {
    std::string model_file;
    std::string split;
    int steps = 0;
    double tmax = 0.0;
    double threshold = 0.0;
    std::string out_dir = ".";
    std::string kernel = "auto";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--model", opts.model_file, "run-spec JSON file (built-in reference when omitted)");
    cmd->add_option("--split", opts.split, "override the Hamiltonian split: initial|bare")
        ->check(CLI::IsMember({"initial", "bare"}));
    cmd->add_option("--steps", opts.steps, "override grid n_steps");
    cmd->add_option("--tmax", opts.tmax, "override grid t_end");
    cmd->add_option("--threshold", opts.threshold, "override the channel amplitude threshold");
    cmd->add_option("--out-dir", opts.out_dir, "output directory");
    cmd->add_option("--kernel", opts.kernel, "kernel backend: auto|scalar|avx2|neon");
}

RunSpec load_spec(const CommonOpts& opts) {
    RunSpec spec = opts.model_file.empty() ? RunSpec::reference() : RunSpec::from_file(opts.model_file);
    if (!opts.split.empty()) spec.split = split_mode_from_string(opts.split);
    if (opts.steps > 0) spec.n_steps = opts.steps;
    if (opts.tmax > 0.0) spec.t_end = opts.tmax;
    if (opts.threshold > 0.0) spec.threshold = opts.threshold;
    return spec;
}

std::string out_path(const CommonOpts& opts, const std::string& name) {
    std::filesystem::create_directories(opts.out_dir);
    return (std::filesystem::path(opts.out_dir) / name).string();
}

int cmd_simulate(const CommonOpts& opts, bool write_trajectory) {
    const RunSpec spec = load_spec(opts);
    const RunOutput out = execute(spec);
    if (write_trajectory) {
        write_text_file(out_path(opts, spec.trajectory_name), trajectory_csv(out));
    }
    write_text_file(out_path(opts, spec.report_name), report_json(out));
    std::cout << "total_phi " << format17(out.report.total_phi) << "\n"
              << "dynamical_alpha " << format17(out.report.dynamical_alpha) << "\n"
              << "aa_beta " << format17(out.report.aa_beta) << "\n";
    if (out.report.berry_connection) {
        std::cout << "berry_connection " << format17(*out.report.berry_connection) << "\n";
    }
    if (out.report.berry_decomposed) {
        std::cout << "berry_decomposed " << format17(*out.report.berry_decomposed) << "\n";
    }
    return kExitOk;
}

int cmd_density(const CommonOpts& opts, std::vector<double> times) {
    const RunSpec spec = load_spec(opts);
    const RunOutput out = execute(spec);
    if (times.empty()) times.push_back(spec.t_end);
    std::vector<DensityMatrixSnapshot> snaps;
    snaps.reserve(times.size());
    for (double t : times) snaps.push_back(assemble_density(out.traj, out.ledger, t));
    write_text_file(out_path(opts, "density.json"), density_json(snaps));
    for (const DensityMatrixSnapshot& s : snaps) {
        std::cout << "t " << format17(s.t) << " purity " << format17(s.purity) << "\n";
    }
    return kExitOk;
}

int cmd_verify(const CommonOpts& opts) {
    verification::Config cfg;
    if (opts.steps > 0) cfg.n_steps = opts.steps;
    if (opts.tmax > 0.0) cfg.t_end = opts.tmax;
    const std::vector<verification::Criterion> results = verification::run_acceptance(cfg);
    std::cout << verification::format_text(results);
    write_text_file(out_path(opts, "verify.json"), verification::format_json(results));
    return verification::all_passed(results) ? kExitOk : kExitVerification;
}

int cmd_sweep(const CommonOpts& opts, const std::string& parameter,
              const std::vector<double>& values) {
    const RunSpec base = load_spec(opts);
    if (parameter != "rate" && parameter != "amplitude" && parameter != "n_steps") {
        throw ValidationError("sweep: unknown parameter '" + parameter +
                              "' (expected rate|amplitude|n_steps)");
    }

    std::vector<std::future<SweepRow>> futures;
    futures.reserve(values.size());
    for (double v : values) {
        futures.push_back(std::async(std::launch::async, [&base, parameter, v]() {
            SweepRow row;
            row.value = v;
            try {
                RunSpec spec = base;
                if (parameter == "rate") {
                    spec = base.with_rate(v);
                } else if (parameter == "amplitude") {
                    spec = base.with_amplitude_scale(v);
                } else {
                    spec = base.with_n_steps(static_cast<int>(std::llround(v)));
                }
                const RunOutput out = execute(spec);
                row.report = out.report;
                row.oracle_residual = out.oracle_residual;
            } catch (const std::exception& e) {
                row.failed = true;
                row.error = e.what();
            }
            return row;
        }));
    }
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (std::future<SweepRow>& f : futures) rows.push_back(f.get());

    const std::string csv = sweep_csv(parameter, rows);
    write_text_file(out_path(opts, "sweep.csv"), csv);
    std::cout << csv;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"channel-resolved geometric phases of driven quantum systems"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::vector<double> density_times;
    std::string sweep_param;
    std::vector<double> sweep_values;

    CLI::App* simulate = app.add_subcommand("simulate", "integrate and write trajectory + report");
    add_common(simulate, opts);
    CLI::App* phases = app.add_subcommand("phases", "integrate and write the phase report only");
    add_common(phases, opts);
    CLI::App* density = app.add_subcommand("density", "emit density-matrix snapshots");
    add_common(density, opts);
    density->add_option("--at", density_times, "snapshot times (default: t_end)");
    CLI::App* verify = app.add_subcommand("verify", "run the full verification suite");
    add_common(verify, opts);
    CLI::App* sweep = app.add_subcommand("sweep", "rerun over a parameter list, aggregate a CSV");
    add_common(sweep, opts);
    sweep->add_option("--param", sweep_param, "rate|amplitude|n_steps")->required();
    sweep->add_option("--values", sweep_values, "parameter values (empty list: header-only CSV)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        subphase::kernels::select(subphase::kernels::parse_backend(opts.kernel));
        if (simulate->parsed()) return cmd_simulate(opts, true);
        if (phases->parsed()) return cmd_simulate(opts, false);
        if (density->parsed()) return cmd_density(opts, density_times);
        if (verify->parsed()) return cmd_verify(opts);
        if (sweep->parsed()) return cmd_sweep(opts, sweep_param, sweep_values);
    } catch (const subphase::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const subphase::Error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
