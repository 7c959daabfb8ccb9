// cbcop: checkerboard-copula statistics, independence tests, and the
// simulation harness, from the command line.
//
// Exit codes: 0 success, 2 usage, 3 data/config validation, 4 internal
// numeric failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cbcop/checkerboard.hpp"
#include "cbcop/errors.hpp"
#include "cbcop/inference.hpp"
#include "cbcop/io.hpp"
#include "cbcop/simulate.hpp"
#include "cbcop/statistics.hpp"

namespace {

using nlohmann::json;

struct StatsArgs {
    std::string path;
    bool table = false;
    std::string format = "text";
};

struct TestArgs {
    std::string path;
    int multipliers = 1000;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    std::string law = "normal";
    bool dump_replicates = false;
    std::string format = "text";
};

struct SimulateArgs {
    std::string path;
    std::uint64_t seed = 0;
    int jobs = 1;
    int reps_override = 0;
    int multipliers_override = 0;
    std::string format = "text";
};

struct CopulaArgs {
    std::string path;
    std::vector<double> eval;
    bool tau = false, rho = false, gap = false;
    std::string format = "text";
};

cbcop::RankedSample load_sample(const std::string& path, bool as_table) {
    const cbcop::CsvTable csv = cbcop::read_csv_file(path);
    if (as_table) {
        std::vector<long long> counts;
        counts.reserve(csv.values.size());
        for (const double v : csv.values) {
            if (v < 0.0 || v != std::floor(v))
                throw cbcop::validation_error("count table: entries must be non-negative integers");
            counts.push_back(static_cast<long long>(v));
        }
        return cbcop::ContingencyTable(csv.rows, csv.cols, std::move(counts)).to_sample();
    }
    if (csv.cols < 2)
        throw cbcop::validation_error("stats: need at least two data columns");
    return cbcop::RankedSample::rank(csv.values, csv.rows, csv.cols);
}

void emit(const std::string& format, const std::vector<std::pair<std::string, std::string>>& text_rows,
          const json& structured) {
    if (format == "json") {
        std::cout << structured.dump() << '\n';
        return;
    }
    std::size_t width = 0;
    for (const auto& [key, value] : text_rows)
        width = std::max(width, key.size());
    for (const auto& [key, value] : text_rows)
        std::cout << key << std::string(width - key.size() + 2, ' ') << value << '\n';
}

int cmd_stats(const StatsArgs& args) {
    const cbcop::RankedSample s = load_sample(args.path, args.table);

    std::vector<std::pair<std::string, std::string>> rows;
    json out;
    out["n"] = s.n();
    out["d"] = s.dim();
    rows.emplace_back("n", std::to_string(s.n()));
    rows.emplace_back("d", std::to_string(s.dim()));

    if (s.dim() == 2) {
        const double tau = cbcop::kendall_tau(s);
        const double rho = cbcop::spearman_rho(s);
        const auto table = cbcop::ContingencyTable::from_sample(s);
        const double chi2 = cbcop::chi_squared(table);
        const double g2 = cbcop::g_squared(table);
        rows.emplace_back("tau", cbcop::format_number(tau));
        rows.emplace_back("rho", cbcop::format_number(rho));
        rows.emplace_back("chi2", cbcop::format_number(chi2));
        rows.emplace_back("g2", cbcop::format_number(g2));
        out["tau"] = tau;
        out["rho"] = rho;
        out["chi2"] = chi2;
        out["g2"] = g2;
    } else {
        const double rho_nd = cbcop::spearman_rho_multivariate(s);
        rows.emplace_back("rho_nd", cbcop::format_number(rho_nd));
        out["rho_nd"] = rho_nd;
    }
    const double sn = cbcop::cvm_statistic(s);
    rows.emplace_back("s_n", cbcop::format_number(sn));
    out["s_n"] = sn;

    emit(args.format, rows, out);
    return 0;
}

int cmd_test(const TestArgs& args) {
    const cbcop::RankedSample s = load_sample(args.path, false);
    if (s.dim() != 2)
        throw cbcop::validation_error("test: the multiplier test is bivariate; got d = " +
                                      std::to_string(s.dim()));
    if (args.multipliers < 1)
        throw cbcop::validation_error("test: --multipliers must be >= 1");
    if (!(args.alpha > 0.0 && args.alpha < 1.0))
        throw cbcop::validation_error("test: --alpha must lie in (0, 1)");

    cbcop::MultiplierConfig cfg;
    cfg.replicates = args.multipliers;
    cfg.seed = args.seed;
    cfg.keep_replicates = args.dump_replicates;
    if (args.law == "normal")
        cfg.law = cbcop::MultiplierLaw::normal;
    else if (args.law == "rademacher")
        cfg.law = cbcop::MultiplierLaw::rademacher;
    else
        throw cbcop::validation_error("test: --law must be normal or rademacher");

    const cbcop::TestReport report = cbcop::independence_test(s, cfg);
    const bool reject = report.p_value < args.alpha;

    std::vector<std::pair<std::string, std::string>> rows;
    rows.emplace_back("statistic", cbcop::format_number(report.statistic));
    rows.emplace_back("p_value", cbcop::format_number(report.p_value));
    rows.emplace_back("multipliers", std::to_string(report.replicates));
    rows.emplace_back("seed", std::to_string(report.seed));
    rows.emplace_back("alpha", cbcop::format_number(args.alpha));
    rows.emplace_back("decision", reject ? "reject" : "accept");
    rows.emplace_back("elapsed_s", cbcop::format_number(report.elapsed_seconds));

    json out;
    out["statistic"] = report.statistic;
    out["p_value"] = report.p_value;
    out["multipliers"] = report.replicates;
    out["seed"] = report.seed;
    out["alpha"] = args.alpha;
    out["decision"] = reject ? "reject" : "accept";
    out["elapsed_s"] = report.elapsed_seconds;
    if (args.dump_replicates) {
        out["replicates"] = report.replicate_values;
        for (std::size_t m = 0; m < report.replicate_values.size(); ++m)
            rows.emplace_back("replicate_" + std::to_string(m + 1),
                              cbcop::format_full(report.replicate_values[m]));
    }

    emit(args.format, rows, out);
    return 0;
}

int cmd_simulate(const SimulateArgs& args) {
    std::vector<cbcop::ScenarioConfig> scenarios = cbcop::load_scenarios(args.path);
    for (auto& cfg : scenarios) {
        if (args.reps_override > 0)
            cfg.reps = args.reps_override;
        if (args.multipliers_override > 0)
            cfg.multipliers = args.multipliers_override;
        cfg.validate();
    }

    for (const auto& cfg : scenarios) {
        const cbcop::ScenarioReport report = cbcop::run_scenario(cfg, args.seed, args.jobs);
        if (args.format == "json") {
            json out;
            out["scenario"] = cfg.label();
            out["family"] = cfg.family;
            if (cfg.family != "independence")
                out["tau"] = cfg.tau;
            out["margins"] = {cfg.margin1, cfg.margin2};
            out["n"] = cfg.n;
            out["reps"] = cfg.reps;
            out["multipliers"] = cfg.multipliers;
            out["alpha"] = cfg.alpha;
            out["seed"] = report.seed;
            out["reject_pct"] = {{"cvm", report.pct_cvm()},
                                 {"chi2", report.pct_chi2()},
                                 {"chi2_mc", report.pct_chi2_mc()}};
            out["rejects"] = {{"cvm", report.reject_cvm},
                              {"chi2", report.reject_chi2},
                              {"chi2_mc", report.reject_chi2_mc}};
            out["seconds"] = report.wall_seconds;
            std::cout << out.dump() << std::endl;
        } else {
            std::printf("scenario     %s\n", cfg.label().c_str());
            std::printf("reps         %d\n", cfg.reps);
            std::printf("multipliers  %d\n", cfg.multipliers);
            std::printf("alpha        %s\n", cbcop::format_number(cfg.alpha).c_str());
            std::printf("reject_pct   cvm %s  chi2 %s  chi2_mc %s\n",
                        cbcop::format_number(report.pct_cvm()).c_str(),
                        cbcop::format_number(report.pct_chi2()).c_str(),
                        cbcop::format_number(report.pct_chi2_mc()).c_str());
            std::printf("rejects      cvm %d  chi2 %d  chi2_mc %d\n", report.reject_cvm,
                        report.reject_chi2, report.reject_chi2_mc);
            std::printf("seconds      %s\n\n", cbcop::format_number(report.wall_seconds).c_str());
            std::fflush(stdout);
        }
    }
    return 0;
}

int cmd_copula(const CopulaArgs& args) {
    const cbcop::JointPmf pmf = cbcop::read_joint_pmf_file(args.path);
    const cbcop::CheckerboardCopula copula = cbcop::CheckerboardCopula::build(pmf);

    std::vector<std::pair<std::string, std::string>> rows;
    json out;
    if (!args.eval.empty()) {
        if (args.eval.size() != copula.dim())
            throw cbcop::validation_error("copula: --eval needs exactly d coordinates");
        const double value = copula.cdf(args.eval);
        rows.emplace_back("cdf", cbcop::format_number(value));
        out["u"] = args.eval;
        out["cdf"] = value;
    }
    if (args.tau) {
        const double value = copula.population_tau();
        rows.emplace_back("tau", cbcop::format_number(value));
        out["tau"] = value;
    }
    if (args.rho) {
        const double value = copula.population_rho();
        rows.emplace_back("rho", cbcop::format_number(value));
        out["rho"] = value;
    }
    if (args.gap) {
        const double value = copula.independence_gap();
        rows.emplace_back("gap", cbcop::format_number(value));
        out["gap"] = value;
    }
    emit(args.format, rows, out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"checkerboard copula statistics and independence tests for count data"};
    app.require_subcommand(1);

    StatsArgs stats_args;
    auto* stats = app.add_subcommand("stats", "rank statistics of a data file");
    stats->add_option("file", stats_args.path, "CSV of observations (or counts with --table)")
        ->required();
    stats->add_flag("--table", stats_args.table, "treat input as a count table");
    stats->add_option("--format", stats_args.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    TestArgs test_args;
    auto* test = app.add_subcommand("test", "multiplier-bootstrap independence test");
    test->add_option("file", test_args.path, "CSV of bivariate observations")->required();
    test->add_option("-M,--multipliers", test_args.multipliers, "bootstrap replicates");
    test->add_option("--seed", test_args.seed, "master seed")->required();
    test->add_option("--alpha", test_args.alpha, "nominal level");
    test->add_option("--law", test_args.law, "multiplier law: normal or rademacher");
    test->add_flag("--dump-replicates", test_args.dump_replicates,
                   "include all bootstrap replicate values");
    test->add_option("--format", test_args.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    SimulateArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "rejection-rate study from a scenario file");
    simulate->add_option("config", sim_args.path, "scenario config JSON")->required();
    simulate->add_option("--seed", sim_args.seed, "master seed")->required();
    simulate->add_option("-j,--jobs", sim_args.jobs, "worker threads (result-invariant)")
        ->check(CLI::PositiveNumber);
    simulate->add_option("-N,--reps", sim_args.reps_override,
                         "override repetitions for every scenario");
    simulate->add_option("-M,--multipliers", sim_args.multipliers_override,
                         "override bootstrap replicates for every scenario");
    simulate->add_option("--format", sim_args.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    CopulaArgs cop_args;
    auto* copula = app.add_subcommand("copula", "population quantities of a joint pmf");
    copula->add_option("file", cop_args.path, "joint pmf JSON")->required();
    copula->add_option("--eval", cop_args.eval, "evaluate the cdf at a point (d coordinates)")
        ->expected(-1);
    copula->add_flag("--tau", cop_args.tau, "population Kendall tau (d = 2)");
    copula->add_flag("--rho", cop_args.rho, "population Spearman rho");
    copula->add_flag("--gap", cop_args.gap, "squared L2 distance from independence");
    copula->add_option("--format", cop_args.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*stats)
            return cmd_stats(stats_args);
        if (*test)
            return cmd_test(test_args);
        if (*simulate)
            return cmd_simulate(sim_args);
        if (*copula) {
            if (cop_args.eval.empty() && !cop_args.tau && !cop_args.rho && !cop_args.gap) {
                std::cerr << "copula: nothing requested; use --eval, --tau, --rho or --gap\n";
                return 2;
            }
            return cmd_copula(cop_args);
        }
    } catch (const cbcop::validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
