#include "subphase/runspec.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace subphase {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ValidationError("run spec: " + where + ": " + what);
}

double get_number(const json& j, const std::string& where, const std::string& key) {
    if (!j.contains(key)) fail(where + "." + key, "missing");
    if (!j[key].is_number()) fail(where + "." + key, "expected a number");
    const double v = j[key].get<double>();
    if (!std::isfinite(v)) fail(where + "." + key, "must be finite");
    return v;
}

double get_number_or(const json& j, const std::string& where, const std::string& key,
                     double fallback) {
    if (!j.contains(key)) return fallback;
    return get_number(j, where, key);
}

std::string get_string_or(const json& j, const std::string& where, const std::string& key,
                          const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) fail(where + "." + key, "expected a string");
    return j[key].get<std::string>();
}

WaveTerm parse_term(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected a waveform object");
    const std::string type = get_string_or(j, where, "type", "");
    WaveTerm w;
    if (type == "constant") {
        w.kind = WaveTerm::Kind::constant;
        w.value = get_number(j, where, "value");
    } else if (type == "ramp") {
        w.kind = WaveTerm::Kind::ramp;
        w.value = get_number_or(j, where, "value", 0.0);
        w.slope = get_number(j, where, "slope");
        w.tref = get_number_or(j, where, "tref", 0.0);
    } else if (type == "sinusoid") {
        w.kind = WaveTerm::Kind::sinusoid;
        w.amplitude = get_number(j, where, "amplitude");
        w.omega = get_number(j, where, "omega");
        w.phase = get_number_or(j, where, "phase", 0.0);
        w.offset = get_number_or(j, where, "offset", 0.0);
        w.tref = get_number_or(j, where, "tref", 0.0);
    } else {
        fail(where + ".type", "expected constant|ramp|sinusoid");
    }
    return w;
}

Waveform parse_waveform(const json& j, const std::string& where) {
    Waveform wf;
    if (j.is_array()) {
        int i = 0;
        for (const json& term : j) {
            wf.terms.push_back(parse_term(term, where + "[" + std::to_string(i) + "]"));
            ++i;
        }
    } else {
        wf.terms.push_back(parse_term(j, where));
    }
    return wf;
}

ComplexMatrix parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) fail(where, "expected a nested array of [re, im] pairs");
    const int d = static_cast<int>(j.size());
    ComplexMatrix m(d);
    for (int r = 0; r < d; ++r) {
        const json& row = j[r];
        if (!row.is_array() || static_cast<int>(row.size()) != d) {
            fail(where, "matrix rows must all have length " + std::to_string(d));
        }
        for (int c = 0; c < d; ++c) {
            const json& z = row[c];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                fail(where, "entries must be [re, im] number pairs");
            }
            m(r, c) = cplx(z[0].get<double>(), z[1].get<double>());
        }
    }
    return m;
}

} // namespace

HamiltonianModel RunSpec::build_model() const {
    const TimeGrid g = grid();
    if (kind == ModelKind::two_level) {
        return build_two_level(two_level, g, split, regime);
    }
    return HamiltonianModel::tabulated(h0, delta_samples, g, regime, split);
}

RunSpec RunSpec::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("run spec: JSON parse error: ") + e.what());
    }
    if (!j.is_object()) fail("$", "expected a JSON object");
    if (!j.contains("schema_version")) fail("schema_version", "missing");
    if (!j["schema_version"].is_number_integer() ||
        j["schema_version"].get<int>() != kSchemaVersion) {
        fail("schema_version", "expected " + std::to_string(kSchemaVersion));
    }

    RunSpec spec;

    if (!j.contains("model") || !j["model"].is_object()) fail("model", "missing object");
    const json& jm = j["model"];
    const std::string type = get_string_or(jm, "model", "type", "two_level");
    if (type == "two_level") {
        spec.kind = ModelKind::two_level;
        spec.two_level.delta = get_number(jm, "model", "delta");
        if (!jm.contains("w_mag")) fail("model.w_mag", "missing");
        if (!jm.contains("w_phase")) fail("model.w_phase", "missing");
        spec.two_level.w_mag = parse_waveform(jm["w_mag"], "model.w_mag");
        spec.two_level.w_phase = parse_waveform(jm["w_phase"], "model.w_phase");
    } else if (type == "tabulated") {
        spec.kind = ModelKind::tabulated;
        if (!jm.contains("h0")) fail("model.h0", "missing");
        spec.h0 = parse_matrix(jm["h0"], "model.h0");
        if (!jm.contains("delta_h_samples") || !jm["delta_h_samples"].is_array()) {
            fail("model.delta_h_samples", "missing array");
        }
        int i = 0;
        for (const json& s : jm["delta_h_samples"]) {
            spec.delta_samples.push_back(
                parse_matrix(s, "model.delta_h_samples[" + std::to_string(i) + "]"));
            ++i;
        }
    } else {
        fail("model.type", "expected two_level|tabulated");
    }
    spec.split = split_mode_from_string(get_string_or(jm, "model", "split", "initial"));

    if (!j.contains("grid") || !j["grid"].is_object()) fail("grid", "missing object");
    const json& jg = j["grid"];
    spec.t0 = get_number_or(jg, "grid", "t0", 0.0);
    spec.t_end = get_number(jg, "grid", "t_end");
    const double ns = get_number(jg, "grid", "n_steps");
    if (ns < 2 || ns != std::floor(ns)) fail("grid.n_steps", "expected an integer >= 2");
    spec.n_steps = static_cast<int>(ns);

    if (j.contains("run")) {
        const json& jr = j["run"];
        if (!jr.is_object()) fail("run", "expected an object");
        const std::string init = get_string_or(jr, "run", "initial", "channel");
        if (init == "channel") {
            spec.initial_kind = InitialKind::channel;
            const double ch = get_number_or(jr, "run", "initial_channel", 0.0);
            if (ch < 0 || ch != std::floor(ch)) fail("run.initial_channel", "expected an index");
            spec.initial_channel = static_cast<int>(ch);
        } else if (init == "ground") {
            spec.initial_kind = InitialKind::ground;
        } else if (init == "amplitudes") {
            spec.initial_kind = InitialKind::amplitudes;
            if (!jr.contains("amplitudes") || !jr["amplitudes"].is_array()) {
                fail("run.amplitudes", "missing array of [re, im] pairs");
            }
            for (const json& z : jr["amplitudes"]) {
                if (!z.is_array() || z.size() != 2) fail("run.amplitudes", "entries are [re, im]");
                spec.amplitudes.emplace_back(z[0].get<double>(), z[1].get<double>());
            }
        } else {
            fail("run.initial", "expected channel|ground|amplitudes");
        }
        spec.regime = regime_from_string(get_string_or(jr, "run", "regime", "nonadiabatic"));
        spec.threshold = get_number_or(jr, "run", "threshold", 1e-8);
        if (!(spec.threshold > 0.0)) fail("run.threshold", "must be positive");
        const std::string method = get_string_or(jr, "run", "method", "exact");
        if (method == "exact") {
            spec.method = Method::exact;
        } else if (method == "first_order") {
            spec.method = Method::first_order;
        } else {
            fail("run.method", "expected exact|first_order");
        }
    }

    if (j.contains("outputs")) {
        const json& jo = j["outputs"];
        if (!jo.is_object()) fail("outputs", "expected an object");
        spec.report_name = get_string_or(jo, "outputs", "report", "report.json");
        spec.trajectory_name = get_string_or(jo, "outputs", "trajectory_csv", "trajectory.csv");
    }
    return spec;
}

RunSpec RunSpec::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("run spec: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

RunSpec RunSpec::reference() {
    RunSpec spec;
    spec.kind = ModelKind::two_level;
    spec.two_level.delta = 1.0;
    spec.two_level.w_mag = Waveform::ramp(0.0, 0.05);
    spec.two_level.w_phase = Waveform::ramp(0.0, 0.3);
    spec.split = SplitMode::initial;
    spec.t0 = 0.0;
    spec.t_end = 10.0;
    spec.n_steps = 4000;
    spec.initial_kind = InitialKind::ground;
    spec.regime = Regime::adiabatic;
    return spec;
}

RunSpec RunSpec::with_n_steps(int n) const {
    RunSpec out = *this;
    if (n < 2) throw ValidationError("sweep: n_steps must be >= 2");
    out.n_steps = n;
    return out;
}

RunSpec RunSpec::with_amplitude_scale(double s) const {
    RunSpec out = *this;
    if (!std::isfinite(s)) throw ValidationError("sweep: amplitude scale must be finite");
    if (kind == ModelKind::two_level) {
        for (WaveTerm& w : out.two_level.w_mag.terms) {
            w.value *= s;
            w.slope *= s;
            w.amplitude *= s;
            w.offset *= s;
        }
    } else {
        for (ComplexMatrix& m : out.delta_samples) m *= s;
    }
    return out;
}

RunSpec RunSpec::with_rate(double r) const {
    if (!(r > 0.0)) throw ValidationError("sweep: rate must be positive");
    if (kind != ModelKind::two_level) {
        throw ValidationError("sweep: rate applies to two-level models only");
    }
    RunSpec out = *this;
    // same drive traversed r times slower: u = t0 + (t - t0) r
    auto dilate = [&](Waveform& wf) {
        for (WaveTerm& w : wf.terms) {
            switch (w.kind) {
                case WaveTerm::Kind::constant:
                    break;
                case WaveTerm::Kind::ramp:
                    w.tref = t0 - (t0 - w.tref) / r;
                    w.slope *= r;
                    break;
                case WaveTerm::Kind::sinusoid:
                    w.tref = t0 - (t0 - w.tref) / r;
                    w.omega *= r;
                    break;
            }
        }
    };
    dilate(out.two_level.w_mag);
    dilate(out.two_level.w_phase);
    out.t_end = t0 + (t_end - t0) / r;
    out.n_steps = static_cast<int>(std::llround(n_steps / r));
    if (out.n_steps < 2) out.n_steps = 2;
    return out;
}

RunOutput execute(const RunSpec& spec) {
    const HamiltonianModel model = spec.build_model();
    const TimeGrid g = spec.grid();

    CoefficientTrajectory traj;
    switch (spec.method) {
        case RunSpec::Method::exact: {
            if (spec.initial_kind == RunSpec::InitialKind::channel) {
                traj = integrate_from_channel(model, spec.initial_channel, g);
            } else if (spec.initial_kind == RunSpec::InitialKind::ground) {
                const EigenSystem sys = hermitian_eigensystem(evaluate_hamiltonian(model, g.t0()));
                traj = integrate_from_state(model, sys.vectors.front(), g);
            } else {
                if (static_cast<int>(spec.amplitudes.size()) != model.dim()) {
                    throw ValidationError("run spec: run.amplitudes length must equal the model "
                                          "dimension");
                }
                std::vector<cplx> amps = spec.amplitudes;
                double n2 = 0.0;
                for (const cplx& z : amps) n2 += std::norm(z);
                if (n2 <= 0.0) throw ValidationError("run spec: run.amplitudes must be nonzero");
                for (cplx& z : amps) z /= std::sqrt(n2);
                traj = integrate_coefficients(model, amps, g);
            }
            break;
        }
        case RunSpec::Method::first_order: {
            if (spec.initial_kind != RunSpec::InitialKind::channel) {
                throw ValidationError("run spec: first_order runs start from a channel");
            }
            traj = first_order_coefficients(model, spec.initial_channel, g);
            break;
        }
    }

    RunOutput out;
    out.spec = spec;
    out.ledger = sub_geometric_phases(traj, spec.threshold);
    out.report = aa_phase(traj, model, g.t_end(), spec.threshold);
    out.alpha_integrand = dynamical_integrand(traj, model);
    out.geo_rate = geometric_rate(traj);

    const StateTrajectory assembled = assemble_state(traj);
    const StateTrajectory direct = direct_schrodinger_solve(model, assembled.states.front(), g);
    double residual = 0.0;
    for (int j = 0; j < g.n_samples(); ++j) {
        double s = 0.0;
        for (int i = 0; i < model.dim(); ++i) {
            s += std::norm(assembled.states[j][i] - direct.states[j][i]);
        }
        residual = std::max(residual, std::sqrt(s));
    }
    out.oracle_residual = residual;

    out.traj = std::move(traj);
    return out;
}

} // namespace subphase
