#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "schrowave/experiment.hpp"
#include "schrowave/invariants.hpp"

using namespace schrowave;

namespace {

ExperimentConfig config_from_options(const std::string& config_path, const std::string& preset,
                                     const std::string& out_dir, bool strict) {
    if (config_path.empty() == preset.empty())
        throw CLI::ValidationError("exactly one of --config or --preset is required");
    ExperimentConfig cfg =
        config_path.empty() ? preset_config(preset) : load_config_file(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    cfg.strict = strict;
    return cfg;
}

void print_run_summary(const RunResult& r) {
    std::printf("formulation        %s (d = %d, M = %d)\n",
                formulation_to_string(r.cfg.formulation).c_str(), r.cfg.dimension, r.cfg.grid_M);
    std::printf("lambda_max(H1)     %.6f\n", r.lambda_max_h1);
    std::printf("p*                 %.6f%s\n", r.p_star, r.window_extended ? "  (window extended)" : "");
    if (r.cfg.recovery_mode == RecoveryMode::point)
        std::printf("recovery point p1  %.6f (node %d)\n", r.p1_value, r.p1_index);
    for (const auto& c : r.vs_classical.components)
        std::printf("  %-6s rel L2 vs classical %.3e   rel Linf %.3e\n", c.name.c_str(), c.l2_rel,
                    c.linf_rel);
    if (r.vs_exact)
        for (const auto& c : r.vs_exact->components)
            std::printf("  %-6s rel L2 vs exact     %.3e\n", c.name.c_str(), c.l2_rel);
    std::printf("H_s: dim 2^%d, sparsity %d, max-norm %.4f, queries %lld (%s)\n", r.resources.m_H,
                r.resources.s, r.resources.hmax, r.resources.n_query, r.resources.label.c_str());
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> vals;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
    return vals;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"schrowave: Hamiltonian-embedding emulator for elastic wave equations"};
    app.require_subcommand(1);

    std::string config_path, preset, out_dir, axis, values_csv;
    bool strict = false;
    int threads = 1;
    double scenario_r = 2.0;
    std::string epsilons_csv = "0.1,0.01,0.001";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "flat key-value config file");
        cmd->add_option("--preset", preset, "bundled preset name");
        cmd->add_option("--out", out_dir, "output directory (default $SCHROWAVE_OUT or ./out)");
        cmd->add_flag("--strict", strict, "fail instead of auto-extending the p window");
        cmd->add_option("--threads", threads, "sweep-point concurrency (currently sequential)");
    };

    CLI::App* cmd_run = app.add_subcommand("run", "run one experiment and write CSV/JSON artifacts");
    add_common(cmd_run);

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "convergence sweep over M, N, or dt");
    add_common(cmd_sweep);
    cmd_sweep->add_option("--axis", axis, "M | N | dt")->required();
    cmd_sweep->add_option("--values", values_csv, "comma-separated increasing values")->required();

    CLI::App* cmd_validate = app.add_subcommand("validate", "run the full invariant suite");

    CLI::App* cmd_res = app.add_subcommand("resources", "measured and predicted resource estimates");
    add_common(cmd_res);
    cmd_res->add_option("--r", scenario_r, "solution smoothness for predictions (default 2)");
    cmd_res->add_option("--epsilons", epsilons_csv, "tolerance list for predictions");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            ExperimentConfig cfg = config_from_options(config_path, preset, out_dir, strict);
            RunResult r = run_experiment(cfg);
            write_run_artifacts(r);
            print_run_summary(r);
            return 0;
        }
        if (cmd_sweep->parsed()) {
            ExperimentConfig cfg = config_from_options(config_path, preset, out_dir, strict);
            SweepResult s = sweep_experiment(cfg, axis, parse_values(values_csv));
            std::string dir = cfg.output_dir.empty() ? "out" : cfg.output_dir;
            std::filesystem::create_directories(dir);
            std::ofstream f(dir + "/sweep_" + axis + ".csv", std::ios::binary);
            f << sweep_csv(s);
            std::printf("%s", sweep_csv(s).c_str());
            return 0;
        }
        if (cmd_validate->parsed()) {
            ValidationReport rep = validate_invariants();
            std::printf("%s", rep.to_text().c_str());
            return rep.all_pass() ? 0 : 1;
        }
        if (cmd_res->parsed()) {
            ExperimentConfig cfg = config_from_options(config_path, preset, out_dir, strict);
            RunResult r = run_experiment(cfg);
            std::ostringstream csv;
            csv << "formulation,d,r,epsilon,T,s,hmax,tau,m_H,n_query,n_gate_proxy,"
                   "classical_ops_proxy\n";
            csv << resources_csv_row(r);
            for (double eps : parse_values(epsilons_csv)) {
                ComplexityScenario sc;
                sc.formulation = cfg.formulation;
                sc.d = cfg.dimension;
                sc.r = scenario_r;
                sc.epsilon = eps;
                sc.T = cfg.T;
                ResourceEstimate est = predict(sc);
                char line[256];
                std::snprintf(line, sizeof(line), "%s,%d,%.17g,%.17g,%.17g,,,,%d,,%.17g,%.17g\n",
                              formulation_to_string(cfg.formulation).c_str(), cfg.dimension,
                              scenario_r, eps, cfg.T,
                              predicted_qubits(cfg.formulation, cfg.dimension, cfg.grid_M, cfg.p_N),
                              est.n_gate_proxy, est.classical_ops);
                csv << line;
            }
            std::string dir = cfg.output_dir.empty() ? "out" : cfg.output_dir;
            std::filesystem::create_directories(dir);
            std::ofstream f(dir + "/resources_table.csv", std::ios::binary);
            f << csv.str();
            std::printf("%s", csv.str().c_str());
            std::printf("resources.json written for the measured run\n");
            write_run_artifacts(r);
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
