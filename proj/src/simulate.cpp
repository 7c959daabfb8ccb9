#include "cbcop/simulate.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <thread>

#include "json.hpp"

#include "cbcop/errors.hpp"
#include "cbcop/inference.hpp"
#include "cbcop/io.hpp"
#include "cbcop/samplers.hpp"

namespace cbcop {

namespace {

CopulaFamily family_of(const ScenarioConfig& cfg) {
    if (cfg.family == "independence")
        return CopulaFamily::independence();
    if (cfg.family == "clayton")
        return CopulaFamily::from_tau(CopulaFamily::Tag::clayton, cfg.tau);
    if (cfg.family == "gaussian")
        return CopulaFamily::from_tau(CopulaFamily::Tag::gaussian, cfg.tau);
    throw validation_error("scenario: unknown copula family " + cfg.family);
}

} // namespace

std::string ScenarioConfig::label() const {
    char buf[256];
    if (family == "independence") {
        std::snprintf(buf, sizeof buf, "independence %s x %s n=%d", margin1.c_str(),
                      margin2.c_str(), n);
    } else {
        std::snprintf(buf, sizeof buf, "%s(tau=%g) %s x %s n=%d", family.c_str(), tau,
                      margin1.c_str(), margin2.c_str(), n);
    }
    return buf;
}

void ScenarioConfig::validate() const {
    if (n < 2)
        throw validation_error("scenario: n must be >= 2");
    if (reps < 1)
        throw validation_error("scenario: reps must be >= 1");
    if (multipliers < 1)
        throw validation_error("scenario: multipliers must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw validation_error("scenario: alpha must lie in (0, 1)");
    if (family != "independence" && !(tau > 0.0 && tau < 1.0))
        throw validation_error("scenario: tau must lie in (0, 1)");
    family_of(*this);        // family name
    parse_margin(margin1);   // margin spec syntax
    parse_margin(margin2);
}

std::vector<ScenarioConfig> load_scenarios(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error("scenario config: cannot open " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("scenario config: invalid json: ") + e.what());
    }

    ScenarioConfig defaults;
    const auto apply = [](ScenarioConfig& cfg, const nlohmann::json& node) {
        if (node.contains("family")) cfg.family = node.at("family").get<std::string>();
        if (node.contains("tau")) cfg.tau = node.at("tau").get<double>();
        if (node.contains("margin1")) cfg.margin1 = node.at("margin1").get<std::string>();
        if (node.contains("margin2")) cfg.margin2 = node.at("margin2").get<std::string>();
        if (node.contains("n")) cfg.n = node.at("n").get<int>();
        if (node.contains("reps")) cfg.reps = node.at("reps").get<int>();
        if (node.contains("multipliers")) cfg.multipliers = node.at("multipliers").get<int>();
        if (node.contains("alpha")) cfg.alpha = node.at("alpha").get<double>();
    };

    std::vector<ScenarioConfig> scenarios;
    try {
        if (doc.contains("defaults"))
            apply(defaults, doc.at("defaults"));
        if (!doc.contains("scenarios") || !doc.at("scenarios").is_array() ||
            doc.at("scenarios").empty())
            throw validation_error("scenario config: need a non-empty \"scenarios\" array");

        for (const auto& node : doc.at("scenarios")) {
            ScenarioConfig cfg = defaults;
            apply(cfg, node);
            cfg.validate();
            scenarios.push_back(std::move(cfg));
        }
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("scenario config: bad field: ") + e.what());
    }
    return scenarios;
}

namespace {

struct RejectionCounts {
    int cvm = 0, chi2 = 0, chi2_mc = 0;
};

// One repetition: draw, discretize, run the three tests at level alpha.
RejectionCounts run_repetition(const ScenarioConfig& cfg, const CopulaFamily& family,
                               const DiscreteMargin& m1, const DiscreteMargin& m2,
                               const RngStream& rep_stream) {
    const auto pairs =
        sample_copula(family, static_cast<std::size_t>(cfg.n), rep_stream.child("sample"));
    const auto data = discretize(pairs, m1, m2);
    const auto sample = RankedSample::rank(data, static_cast<std::size_t>(cfg.n), 2);
    const auto table = ContingencyTable::from_sample(sample);

    RejectionCounts out;

    MultiplierConfig mcfg;
    mcfg.replicates = cfg.multipliers;
    mcfg.seed = rep_stream.child("test").key();
    out.cvm = independence_test(sample, mcfg).p_value < cfg.alpha;

    out.chi2 = chi_squared_test(table).p_value < cfg.alpha;

    out.chi2_mc =
        chi_squared_mc(table, cfg.multipliers, rep_stream.child("mc").key()).p_value < cfg.alpha;
    return out;
}

} // namespace

ScenarioReport run_scenario(const ScenarioConfig& cfg, std::uint64_t master_seed, int jobs) {
    cfg.validate();
    if (jobs == 0)
        jobs = std::max(1u, std::thread::hardware_concurrency());
    if (jobs < 1)
        throw validation_error("scenario: jobs must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();

    const CopulaFamily family = family_of(cfg);
    const DiscreteMargin m1 = parse_margin(cfg.margin1);
    const DiscreteMargin m2 = parse_margin(cfg.margin2);
    const RngStream scenario_stream = RngStream(master_seed).child(cfg.label());

    ScenarioReport report;
    report.config = cfg;
    report.seed = master_seed;

    const int workers = std::min(jobs, cfg.reps);
    std::atomic<int> next_rep{0};
    std::vector<RejectionCounts> partial(static_cast<std::size_t>(workers));

    const auto worker = [&](int w) {
        RejectionCounts local;
        for (int r = next_rep.fetch_add(1); r < cfg.reps; r = next_rep.fetch_add(1)) {
            const RejectionCounts one = run_repetition(
                cfg, family, m1, m2, scenario_stream.child(static_cast<std::uint64_t>(r)));
            local.cvm += one.cvm;
            local.chi2 += one.chi2;
            local.chi2_mc += one.chi2_mc;
        }
        partial[static_cast<std::size_t>(w)] = local;
    };

    if (workers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker, w);
        for (auto& th : pool)
            th.join();
    }

    for (const auto& p : partial) {
        report.reject_cvm += p.cvm;
        report.reject_chi2 += p.chi2;
        report.reject_chi2_mc += p.chi2_mc;
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace cbcop
