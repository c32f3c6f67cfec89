#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rrm/engine.hpp"

namespace rrm {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Shortest round-trip decimal form; parsing it back recovers the exact bits.
std::string format_double(double value);

struct StrategyResult {
    std::string name;
    MonteCarloSummary summary;
};

// Writes one errors CSV and one sync-schedule CSV per run plus summary.json.
void write_bundle(const std::filesystem::path& out_dir, const ScenarioConfig& config,
                  const std::vector<StrategyResult>& results);

// Per-strategy statistics table in the shape of the summary (one row per
// strategy: median, min, max, mean, std. dev.).
std::string render_summary_table(const std::vector<StrategyResult>& results);

// Recomputes every statistic in summary.json from the raw CSVs. Returns the
// list of mismatches; empty means the bundle is internally consistent.
std::vector<std::string> verify_bundle(const std::filesystem::path& out_dir);

// Sample input for the stats subcommand: either a raw errors CSV (the
// position_error_m column) or plain whitespace-separated numbers.
std::vector<double> read_samples_file(const std::filesystem::path& path);

}  // namespace rrm
