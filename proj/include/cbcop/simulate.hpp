#pragma once

// Simulation harness: repeated (sample -> three independence tests) runs
// per scenario, with rejection percentages as output.
//
// Seeding is hierarchical: master seed -> scenario label -> repetition
// index -> step, so results are independent of scenario order in the config
// file, of repetition execution order, and of the worker count.

#include <cstdint>
#include <string>
#include <vector>

namespace cbcop {

struct ScenarioConfig {
    std::string family = "independence"; // independence | clayton | gaussian
    double tau = 0.0;                    // required for clayton/gaussian
    std::string margin1, margin2;        // margin spec strings
    int n = 100;                         // sample size per repetition
    int reps = 1000;                     // repetitions N
    int multipliers = 1000;              // bootstrap replicates M (and MC chi-squared draws)
    double alpha = 0.05;

    // Canonical content label; doubles as the scenario's seeding namespace.
    std::string label() const;
    void validate() const;
};

struct ScenarioReport {
    ScenarioConfig config;
    std::uint64_t seed = 0;
    int reject_cvm = 0;     // multiplier-bootstrap Cramer-von Mises
    int reject_chi2 = 0;    // chi-squared, asymptotic p-value
    int reject_chi2_mc = 0; // chi-squared, Monte Carlo p-value
    double wall_seconds = 0.0;

    double pct_cvm() const { return 100.0 * reject_cvm / config.reps; }
    double pct_chi2() const { return 100.0 * reject_chi2 / config.reps; }
    double pct_chi2_mc() const { return 100.0 * reject_chi2_mc / config.reps; }
};

// Parse a config file: {"defaults": {...}, "scenarios": [{...}, ...]}.
// Every scenario is validated before any simulation starts.
std::vector<ScenarioConfig> load_scenarios(const std::string& path);

// jobs = 0 means one worker per hardware thread; results never depend on
// the worker count.
ScenarioReport run_scenario(const ScenarioConfig& cfg, std::uint64_t master_seed, int jobs = 1);

} // namespace cbcop
