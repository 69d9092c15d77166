#include "subphase/reporting.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "subphase/kernels.hpp"

namespace subphase {

std::string format17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::string json_number(double x) {
    if (!std::isfinite(x)) return "null";
    return format17(x);
}

std::string json_real_array(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += json_number(v[i]);
    }
    return s + "]";
}

std::string json_matrix(const ComplexMatrix& m) {
    std::string s = "[";
    for (int i = 0; i < m.dim(); ++i) {
        if (i) s += ",";
        s += "[";
        for (int j = 0; j < m.dim(); ++j) {
            if (j) s += ",";
            s += "[" + json_number(m(i, j).real()) + "," + json_number(m(i, j).imag()) + "]";
        }
        s += "]";
    }
    return s + "]";
}

const char* model_type(const RunSpec& spec) {
    return spec.kind == RunSpec::ModelKind::two_level ? "two_level" : "tabulated";
}

const char* method_name(const RunSpec& spec) {
    return spec.method == RunSpec::Method::exact ? "exact" : "first_order";
}

} // namespace

std::string trajectory_csv(const RunOutput& out) {
    const CoefficientTrajectory& traj = out.traj;
    const int d = traj.dim();
    std::string s = "t";
    for (int k = 0; k < d; ++k) {
        const std::string ck = "c" + std::to_string(k);
        s += "," + ck + "_re," + ck + "_im," + ck + "_p," + ck + "_gamma," + ck + "_dyn," + ck +
             "_amplog";
    }
    s += ",alpha_integrand,geo_rate\n";
    for (int j = 0; j < traj.n_samples(); ++j) {
        s += format17(traj.grid.time(j));
        for (int k = 0; k < d; ++k) {
            const cplx c = traj.c(j, k);
            s += "," + format17(c.real());
            s += "," + format17(c.imag());
            s += "," + format17(std::norm(c));
            s += "," + format17(out.ledger.gamma_at(j, k));
            s += "," + format17(out.ledger.dyn_at(j, k));
            s += "," + format17(out.ledger.amp_log_at(j, k));
        }
        s += "," + format17(out.alpha_integrand[j]);
        s += "," + format17(out.geo_rate[j]);
        s += "\n";
    }
    return s;
}

std::string report_json(const RunOutput& out) {
    const PhaseReport& rep = out.report;
    const int d = out.traj.dim();

    std::string s = "{\n";
    s += "  \"schema_version\": 1,\n";
    s += std::string("  \"model\": {\"type\": \"") + model_type(out.spec) + "\", \"split\": \"" +
         to_string(out.spec.split) + "\", \"regime\": \"" + to_string(out.spec.regime) +
         "\", \"dim\": " + std::to_string(d);
    if (out.spec.kind == RunSpec::ModelKind::two_level) {
        s += ", \"delta\": " + json_number(out.spec.two_level.delta);
    }
    s += "},\n";
    s += "  \"grid\": {\"t0\": " + json_number(out.spec.t0) +
         ", \"t_end\": " + json_number(out.spec.t_end) +
         ", \"n_steps\": " + std::to_string(out.spec.n_steps) + "},\n";
    s += std::string("  \"method\": \"") + method_name(out.spec) + "\",\n";
    s += "  \"threshold\": " + json_number(out.spec.threshold) + ",\n";
    s += std::string("  \"kernel\": \"") + kernels::active().name + "\",\n";

    std::vector<double> energies = out.traj.basis.energies;
    s += "  \"energies\": " + json_real_array(energies) + ",\n";
    s += "  \"tau\": " + json_number(rep.tau) + ",\n";
    s += "  \"total_phi\": " + json_number(rep.total_phi) + ",\n";
    s += "  \"dynamical_alpha\": " + json_number(rep.dynamical_alpha) + ",\n";
    s += "  \"aa_beta\": " + json_number(rep.aa_beta) + ",\n";
    s += "  \"berry_connection\": " +
         (rep.berry_connection ? json_number(*rep.berry_connection) : "null") + ",\n";
    s += "  \"berry_decomposed\": " +
         (rep.berry_decomposed ? json_number(*rep.berry_decomposed) : "null") + ",\n";
    s += "  \"band\": " + std::to_string(rep.band) + ",\n";
    s += "  \"channel_gammas\": " + json_real_array(rep.channel_gammas) + ",\n";
    s += "  \"channel_dyn\": " + json_real_array(rep.channel_dyn) + ",\n";
    s += "  \"channel_amp_log\": " + json_real_array(rep.channel_amp_log) + ",\n";
    s += "  \"channel_masked\": [";
    for (int k = 0; k < d; ++k) {
        if (k) s += ",";
        s += rep.channel_masked[k] ? "true" : "false";
    }
    s += "],\n";
    s += "  \"relative_matrix\": [";
    for (int k = 0; k < d; ++k) {
        if (k) s += ",";
        s += "[";
        for (int l = 0; l < d; ++l) {
            if (l) s += ",";
            s += json_number(rep.relative.at(k, l));
        }
        s += "]";
    }
    s += "],\n";
    s += "  \"norm_drift\": " + json_number(rep.norm_drift) + ",\n";
    s += "  \"oracle_residual\": " + json_number(out.oracle_residual) + ",\n";
    s += "  \"masked_events\": [";
    for (std::size_t i = 0; i < out.ledger.events.size(); ++i) {
        const PhaseLedger::MaskEvent& e = out.ledger.events[i];
        if (i) s += ",";
        s += "{\"channel\": " + std::to_string(e.channel) +
             ", \"sample\": " + std::to_string(e.sample) + ", \"time\": " + json_number(e.time) +
             "}";
    }
    s += "]\n";
    s += "}\n";
    return s;
}

std::string density_json(const std::vector<DensityMatrixSnapshot>& snapshots) {
    std::string s = "{\n  \"schema_version\": 1,\n  \"snapshots\": [";
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        if (i) s += ",";
        s += "\n    {\"t\": " + json_number(snapshots[i].t) +
             ", \"purity\": " + json_number(snapshots[i].purity) +
             ", \"rho\": " + json_matrix(snapshots[i].rho) + "}";
    }
    s += "\n  ]\n}\n";
    return s;
}

std::string sweep_csv(const std::string& parameter, const std::vector<SweepRow>& rows) {
    std::string s = parameter +
                    ",total_phi,dynamical_alpha,aa_beta,berry_connection,berry_decomposed,"
                    "norm_drift,residual,aa_minus_berry,status\n";
    for (const SweepRow& r : rows) {
        s += format17(r.value);
        if (r.failed) {
            s += ",nan,nan,nan,nan,nan,nan,nan,nan,error:" + r.error + "\n";
            continue;
        }
        const double bc = r.report.berry_connection ? *r.report.berry_connection
                                                    : std::nan("");
        const double bd = r.report.berry_decomposed ? *r.report.berry_decomposed : std::nan("");
        const double gap = r.report.berry_connection
                               ? std::abs(wrap_angle(r.report.aa_beta - bc))
                               : std::nan("");
        s += "," + format17(r.report.total_phi);
        s += "," + format17(r.report.dynamical_alpha);
        s += "," + format17(r.report.aa_beta);
        s += "," + format17(bc);
        s += "," + format17(bd);
        s += "," + format17(r.report.norm_drift);
        s += "," + format17(r.oracle_residual);
        s += "," + format17(gap);
        s += ",ok\n";
    }
    return s;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw ValidationError("failed writing '" + path + "'");
}

} // namespace subphase
