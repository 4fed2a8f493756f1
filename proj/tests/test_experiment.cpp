#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <algorithm>

#include <json.hpp>

#include "schrowave/experiment.hpp"
#include "schrowave/invariants.hpp"
#include "schrowave/io.hpp"

using namespace schrowave;

namespace {

std::string tiny_config_text() {
    return R"(# tiny displacement run
formulation = displacement-spectral
dimension = 1
grid.a = 0
grid.b = 1
grid.M = 8
medium.rho = 1.41
medium.lambda = 0.61
medium.mu = 0.40
init.preset = exact-hyperbolic
p.lo = -6.0
p.hi = 6.0
p.N = 64
time.scheme = crank-nicolson
time.dt = 0.01
time.T = 0.2
)";
}

}  // namespace

TEST_CASE("config parsing") {
    ExperimentConfig cfg = parse_config_text(tiny_config_text());
    CHECK(cfg.formulation == Formulation::displacement_spectral);
    CHECK(cfg.grid_M == 8);
    CHECK(cfg.dt == doctest::Approx(0.01));
    CHECK(cfg.recovery_mode == RecoveryMode::point);
    CHECK_FALSE(cfg.recovery_p1.has_value());

    SUBCASE("empty config lists every missing key") {
        try {
            parse_config_text("");
            FAIL("expected schema error");
        } catch (const std::invalid_argument& e) {
            const std::string msg = e.what();
            for (const char* key : {"formulation", "grid.M", "p.N", "time.dt"})
                CHECK(msg.find(key) != std::string::npos);
        }
    }

    SUBCASE("unknown keys are rejected") {
        CHECK_THROWS_AS(parse_config_text(tiny_config_text() + "blah.blah = 1\n"),
                        std::invalid_argument);
    }

    SUBCASE("duplicate keys are rejected") {
        CHECK_THROWS_AS(parse_config_text(tiny_config_text() + "grid.M = 16\n"),
                        std::invalid_argument);
    }

    SUBCASE("bad enum values are rejected") {
        std::string text = tiny_config_text();
        text.replace(text.find("crank-nicolson"), 14, "leapfrog-x-y-z");
        CHECK_THROWS_AS(parse_config_text(text), std::invalid_argument);
    }
}

TEST_CASE("canonical text and hashing") {
    ExperimentConfig cfg = parse_config_text(tiny_config_text());
    CHECK(cfg.canonical_text() == parse_config_text(cfg.canonical_text()).canonical_text());
    const uint64_t h = cfg.hash();
    ExperimentConfig cfg2 = cfg;
    cfg2.dt = 0.005;
    CHECK(cfg2.hash() != h);
    ExperimentConfig cfg3 = cfg;
    cfg3.recovery_p1 = 1.25;
    CHECK(cfg3.hash() != h);
}

TEST_CASE("presets load and carry the reported settings") {
    for (const auto& name : preset_names()) CHECK_NOTHROW(preset_config(name));

    ExperimentConfig p61 = preset_config("paper-6.1");
    CHECK(p61.formulation == Formulation::smf_spectral);
    CHECK(p61.grid_M == 64);
    CHECK(p61.force_constant == doctest::Approx(0.1));
    CHECK(p61.p_N == 1024);
    CHECK(p61.homog_c == doctest::Approx(1.0));
    REQUIRE(p61.recovery_p1.has_value());
    CHECK(*p61.recovery_p1 == doctest::Approx(3.203));

    ExperimentConfig p63 = preset_config("paper-6.3-spectral-row2");
    CHECK(p63.dt == doctest::Approx(1.0 / 2000.0));
    CHECK(p63.medium_mu == doctest::Approx(0.40));

    CHECK_THROWS_AS(preset_config("paper-9.9"), std::invalid_argument);
}

TEST_CASE("experiment run produces consistent artifacts") {
    ExperimentConfig cfg = parse_config_text(tiny_config_text());
    RunResult r = run_experiment(cfg);

    CHECK(r.field_names == std::vector<std::string>{"xi", "eps", "p"});
    CHECK(r.quantum.size() == 3 * 8);
    CHECK(r.vs_exact.has_value());
    CHECK(r.vs_classical.max_l2_rel() < 0.2);

    SUBCASE("result table is byte-identical across reruns") {
        RunResult r2 = run_experiment(cfg);
        CHECK(result_table_csv(r) == result_table_csv(r2));
        CHECK(result_table_csv(r).find("config_hash=") != std::string::npos);
    }

    SUBCASE("error report is valid JSON with both comparisons") {
        auto j = nlohmann::json::parse(error_report_json(r));
        CHECK(j.contains("vs_classical"));
        CHECK(j.contains("vs_exact"));
        CHECK(j["p_star"].is_number());
    }

    SUBCASE("artifacts land in the output directory") {
        cfg.output_dir = (std::filesystem::temp_directory_path() / "schrowave_test_out").string();
        std::filesystem::remove_all(cfg.output_dir);
        RunResult r3 = run_experiment(cfg);
        write_run_artifacts(r3);
        for (const char* name :
             {"result_table.csv", "error_report.json", "resources.json", "resources.csv"})
            CHECK(std::filesystem::exists(std::filesystem::path(cfg.output_dir) / name));
    }
}

TEST_CASE("p window handling") {
    ExperimentConfig cfg = parse_config_text(tiny_config_text());
    cfg.medium_lambda = 0.61;
    cfg.p_lo = -2.0;
    cfg.p_hi = 0.5;  // too small for p* of this run
    cfg.T = 1.0;

    SUBCASE("non-strict runs extend the window") {
        RunResult r = run_experiment(cfg);
        CHECK(r.window_extended);
        CHECK(r.pgrid_used.hi == doctest::Approx(r.p_star + 1.0));
        CHECK(r.p1_value >= r.p_star);
    }

    SUBCASE("strict runs refuse") {
        cfg.strict = true;
        CHECK_THROWS_AS(run_experiment(cfg), std::runtime_error);
    }

    SUBCASE("strict runs refuse recovery below p*") {
        cfg.p_hi = 12.0;
        cfg.strict = true;
        cfg.recovery_p1 = 0.01;
        CHECK_THROWS_AS(run_experiment(cfg), std::runtime_error);
    }
}

TEST_CASE("subspace recovery threshold is a refinement") {
    ExperimentConfig cfg = parse_config_text(tiny_config_text());
    cfg.T = 1.0;
    cfg.p_lo = -10.0;
    cfg.p_hi = 10.0;
    RunResult global = run_experiment(cfg);
    cfg.recovery_threshold = "subspace";
    RunResult sub = run_experiment(cfg);
    CHECK(sub.p_star <= global.p_star + 1e-12);
    CHECK(sub.p_star > 0.0);
    // M = 8 resolves only the 4pi mode pair of the benchmark data
    CHECK(sub.p_star < global.p_star);
}

TEST_CASE("sweeps") {
    ExperimentConfig cfg = parse_config_text(tiny_config_text());

    SUBCASE("dt sweep observes second-order time stepping") {
        SweepResult s = sweep_experiment(cfg, "dt", {0.01, 0.02, 0.04});
        CHECK(s.metric == "classical_vs_exponential_l2");
        CHECK(s.observed_order == doctest::Approx(2.0).epsilon(0.1));
        const std::string csv = sweep_csv(s);
        CHECK(csv.find("observed_order=") != std::string::npos);
    }

    SUBCASE("N sweep error decreases") {
        cfg.T = 1.0;
        cfg.p_lo = -8.0;
        cfg.p_hi = 8.0;
        cfg.recovery_threshold = "subspace";
        SweepResult s = sweep_experiment(cfg, "N", {64, 128, 256});
        CHECK(s.points.front().error > s.points.back().error);
    }

    SUBCASE("input validation") {
        CHECK_THROWS_AS(sweep_experiment(cfg, "dt", {0.01, 0.02}), std::invalid_argument);
        CHECK_THROWS_AS(sweep_experiment(cfg, "dt", {0.02, 0.01, 0.04}), std::invalid_argument);
        CHECK_THROWS_AS(sweep_experiment(cfg, "Q", {1, 2, 3}), std::invalid_argument);
    }
}

TEST_CASE("validation suite and fault injection") {
    ValidationReport ok = validate_invariants();
    CHECK(ok.all_pass());
    CHECK(ok.results.size() >= 20);
    for (const auto& r : ok.results) CHECK(r.tolerance >= 0.0);

    ValidationOptions bad;
    bad.corrupt_central_wrap = true;
    ValidationReport broken = validate_invariants(bad);
    CHECK_FALSE(broken.all_pass());
    bool the_named_check_failed = false;
    for (const auto& r : broken.results)
        if (r.name.find("central-difference antisymmetry") != std::string::npos && !r.pass)
            the_named_check_failed = true;
    CHECK(the_named_check_failed);
    CHECK(broken.to_text().find("[FAIL] central-difference antisymmetry") != std::string::npos);
}

TEST_CASE("state vector text round trip") {
    DenseVec v = DenseVec::Random(9);
    std::stringstream ss;
    write_state(ss, v);
    DenseVec back = read_state(ss);
    REQUIRE(back.size() == 9);
    CHECK((back - v).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("recovered-fields and error-report exports") {
    ExperimentConfig cfg = parse_config_text(tiny_config_text());
    RunResult r = run_experiment(cfg);
    const std::string fields = recovered_fields_csv(r);
    CHECK(fields.rfind("x,component,value\n", 0) == 0);
    CHECK(std::count(fields.begin(), fields.end(), '\n') == 1 + 3 * 8);
    const std::string errs = error_report_csv(r);
    CHECK(errs.find("component,l2_abs") == 0);
    CHECK(errs.find("xi,") != std::string::npos);
}
