#pragma once

#include <string>
#include <vector>

#include "subphase/runspec.hpp"

namespace subphase {

// All floating-point output is serialized with 17 significant digits so a
// double round-trips exactly; identical inputs give byte-identical text.
std::string format17(double x);

// Trajectory time series. Columns: t, then per channel
// c{k}_re, c{k}_im, c{k}_p, c{k}_gamma, c{k}_dyn, c{k}_amplog,
// then alpha_integrand and geo_rate (documented extras; every report scalar
// is recomputable from these columns).
std::string trajectory_csv(const RunOutput& out);

// Flat key-value report document with a schema-version key.
std::string report_json(const RunOutput& out);

std::string density_json(const std::vector<DensityMatrixSnapshot>& snapshots);

struct SweepRow {
    double value = 0.0;
    PhaseReport report;
    double oracle_residual = 0.0;
    bool failed = false;
    std::string error;
};

std::string sweep_csv(const std::string& parameter, const std::vector<SweepRow>& rows);

void write_text_file(const std::string& path, const std::string& content);

} // namespace subphase
