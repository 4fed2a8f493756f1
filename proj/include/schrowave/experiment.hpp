#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "schrowave/reference.hpp"
#include "schrowave/resources.hpp"

namespace schrowave {

/// Flat dotted-key experiment description ("time.dt = 0.01" style).
struct ExperimentConfig {
    Formulation formulation = Formulation::smf_spectral;
    int dimension = 1;
    double grid_a = 0.0, grid_b = 1.0;
    int grid_M = 32;

    std::string medium_preset;  // empty = constants below
    double medium_rho = 1.0, medium_lambda = 1.0, medium_mu = 1.0;

    double force_constant = 0.0;  // body force on the first velocity/xi component

    std::string init_preset = "none";  // none | gaussian-stress | exact-hyperbolic
    double init_center = 0.0, init_width = 1.0;

    double p_lo = -M_PI, p_hi = M_PI;
    int p_N = 64;

    std::string warp = "exact-kink";  // exact-kink | smooth:<k>

    TimeScheme scheme = TimeScheme::crank_nicolson;
    double dt = 1e-2, T = 1.0;

    double homog_c = 0.0;  // <= 0 selects auto (||b||_inf)

    RecoveryMode recovery_mode = RecoveryMode::point;
    std::optional<double> recovery_p1;  // absent = first node at or above p*
    /// "global" bounds p* by the full H1 spectrum; "subspace" restricts it to
    /// the invariant subspace reachable from the initial state.
    std::string recovery_threshold = "global";

    std::string output_dir;
    bool strict = false;

    /// Canonical key-value text (sorted keys, 17-significant-digit numbers).
    std::string canonical_text() const;
    uint64_t hash() const;
};

/// Parse the flat key-value format; unknown keys are errors, missing required
/// keys are reported together.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

/// Bundled experiment presets; throws on unknown name.
ExperimentConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

struct RunResult {
    ExperimentConfig cfg;
    uint64_t config_hash = 0;
    std::vector<std::string> field_names;
    std::vector<double> xs, ys;  // node coordinates per field entry block (ys empty in 1-D)
    DenseVec quantum;            // recovered physical fields, component-major
    DenseVec classical;          // reference physical fields
    std::optional<DenseVec> exact;
    ErrorReport vs_classical;
    std::optional<ErrorReport> vs_exact;
    ResourceEstimate resources;
    double lambda_max_h1 = 0.0;
    double p_star = 0.0;
    double p1_value = 0.0;
    int p1_index = 0;
    bool window_extended = false;
    PGrid pgrid_used;
    Eigen::Index n_base = 0;
};

RunResult run_experiment(const ExperimentConfig& cfg);

/// Write result artifacts into cfg.output_dir (created if needed):
/// result_table.csv, error_report.json, resources.json, resources.csv.
void write_run_artifacts(const RunResult& result);

std::string result_table_csv(const RunResult& result);
/// Recovered fields alone, one "x[,y],component,value" row per sample.
std::string recovered_fields_csv(const RunResult& result);
std::string error_report_json(const RunResult& result);
/// Per-component rows: component,l2_abs,l2_rel,linf_abs,linf_rel.
std::string error_report_csv(const RunResult& result);
std::string resources_json(const RunResult& result);
std::string resources_csv_row(const RunResult& result);

struct SweepPoint {
    double value = 0.0;
    double error = 0.0;
};

struct SweepResult {
    std::string axis;
    std::vector<SweepPoint> points;
    double observed_order = 0.0;
    std::string metric;  // which error each point carries
    uint64_t base_hash = 0;
};

/// axis in {"M", "N", "dt"}; at least 3 monotone values. The error metric is
/// axis-specific: M sweeps measure the classical solve against the exact
/// solution, N sweeps the recovered state against the classical reference,
/// dt sweeps the classical stepper against the dense exponential.
SweepResult sweep_experiment(const ExperimentConfig& base, const std::string& axis,
                             const std::vector<double>& values);

std::string sweep_csv(const SweepResult& s);

}  // namespace schrowave
