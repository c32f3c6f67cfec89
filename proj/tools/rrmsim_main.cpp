#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "rrm/engine.hpp"
#include "rrm/report_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitVerifyFailed = 1;

int cmd_run(const std::string& config_path, std::int64_t seed_override, const std::string& out_dir) {
    rrm::ScenarioConfig config = rrm::load_config_file(config_path);
    rrm::validate_config(config);

    const std::uint64_t seed =
        seed_override >= 0 ? static_cast<std::uint64_t>(seed_override) : config.seeds.front();

    const rrm::RunReport report = rrm::run(config, seed);

    rrm::MonteCarloSummary summary;
    summary.pooled = report.stats;
    summary.mean_sync_count = static_cast<double>(report.sync_times.size());
    summary.mean_tracks_acquired = static_cast<double>(report.tracks_acquired);
    summary.runs.push_back(report);

    std::vector<rrm::StrategyResult> results;
    results.push_back({config.strategy.name(), std::move(summary)});
    rrm::write_bundle(out_dir, config, results);

    std::cout << rrm::render_summary_table(results);
    std::cout << "run complete: strategy=" << config.strategy.name() << " seed=" << seed
              << " samples=" << report.error_samples.size() << " syncs=" << report.sync_times.size()
              << " tracks=" << report.tracks_acquired << "/" << report.targets_total << "\n";
    std::cout << "output written to " << out_dir << "\n";
    return kExitOk;
}

int cmd_compare(const std::string& config_path, std::vector<std::string> strategy_names, int runs,
                const std::string& out_dir, int threads) {
    rrm::ScenarioConfig base = rrm::load_config_file(config_path);
    rrm::validate_config(base);

    if (strategy_names.empty()) {
        strategy_names = {"caseDecision", "regUpdate2", "regUpdate3", "regUpdate4", "regUpdate10",
                          "TBreg3"};
    }

    std::vector<rrm::StrategyResult> results;
    for (const std::string& name : strategy_names) {
        rrm::ScenarioConfig config = base;
        config.strategy = rrm::StrategySpec::parse(name);
        rrm::validate_config(config);
        std::cout << "running " << name << " (" << runs << " runs)..." << std::endl;
        results.push_back({name, rrm::monte_carlo(config, runs, threads)});
    }

    rrm::write_bundle(out_dir, base, results);
    std::cout << "\n" << rrm::render_summary_table(results);
    std::cout << "output written to " << out_dir << "\n";
    return kExitOk;
}

int cmd_stats(const std::string& samples_path) {
    const std::vector<double> samples = rrm::read_samples_file(samples_path);
    if (samples.empty()) {
        std::cerr << "error: no samples in '" << samples_path << "'\n";
        return kExitUsage;
    }
    const rrm::SampleStats s = rrm::compute_stats(samples);
    std::cout << "count   " << s.count << "\n"
              << "median  " << rrm::format_double(s.median) << "\n"
              << "min     " << rrm::format_double(s.min) << "\n"
              << "max     " << rrm::format_double(s.max) << "\n"
              << "mean    " << rrm::format_double(s.mean) << "\n"
              << "std     " << rrm::format_double(s.std_dev) << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& out_dir) {
    const std::vector<std::string> issues = rrm::verify_bundle(out_dir);
    if (issues.empty()) {
        std::cout << "verify: OK (" << out_dir << ")\n";
        return kExitOk;
    }
    for (const std::string& issue : issues) std::cerr << "verify: " << issue << "\n";
    return kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bistatic radar resource-management simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::int64_t seed = -1;
    int runs = 5;
    int threads = 1;
    std::vector<std::string> strategies;
    std::string samples_path;
    std::string verify_dir;

    CLI::App* run_cmd = app.add_subcommand("run", "Simulate one run and write its report files");
    run_cmd->add_option("config", config_path, "Scenario config (JSON)")->required();
    run_cmd->add_option("--seed", seed, "Seed override (default: first seed in the config)");
    run_cmd->add_option("--out-dir", out_dir, "Output directory");

    CLI::App* compare_cmd =
        app.add_subcommand("compare", "Monte Carlo comparison of allocation strategies");
    compare_cmd->add_option("config", config_path, "Scenario config (JSON)")->required();
    compare_cmd->add_option("--strategies", strategies,
                            "Strategy names (default: caseDecision regUpdate2 regUpdate3 regUpdate4 "
                            "regUpdate10 TBreg3)")
        ->delimiter(',');
    compare_cmd->add_option("--runs", runs, "Runs per strategy");
    compare_cmd->add_option("--out-dir", out_dir, "Output directory");
    compare_cmd->add_option("--threads", threads, "Parallel runs");

    CLI::App* stats_cmd = app.add_subcommand("stats", "Statistics of an error-sample file");
    stats_cmd->add_option("samples", samples_path, "Errors CSV or plain numbers")->required();

    CLI::App* verify_cmd = app.add_subcommand("verify", "Recompute a bundle's statistics from raw files");
    verify_cmd->add_option("out_dir", verify_dir, "Bundle directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(config_path, seed, out_dir);
        if (compare_cmd->parsed()) return cmd_compare(config_path, strategies, runs, out_dir, threads);
        if (stats_cmd->parsed()) return cmd_stats(samples_path);
        if (verify_cmd->parsed()) return cmd_verify(verify_dir);
    } catch (const rrm::ConfigParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const rrm::ConfigInvalidError& e) {
        std::cerr << "error: infeasible config: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}
