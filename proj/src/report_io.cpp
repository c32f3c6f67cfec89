#include "rrm/report_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rrm {

using nlohmann::json;

std::string format_double(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

namespace {

std::string errors_filename(const std::string& strategy, std::uint64_t seed) {
    return strategy + "_seed" + std::to_string(seed) + "_errors.csv";
}

std::string sync_filename(const std::string& strategy, std::uint64_t seed) {
    return strategy + "_seed" + std::to_string(seed) + "_sync.csv";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file '" + path.string() + "'");
    out << content;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json stats_to_json(const SampleStats& s) {
    if (s.count == 0) return nullptr;
    return {{"count", s.count},   {"median", s.median}, {"min", s.min},
            {"max", s.max},       {"mean", s.mean},     {"std_dev", s.std_dev}};
}

std::string run_errors_csv(const RunReport& r) {
    std::string csv = "time_s,track_id,target_id,position_error_m\n";
    for (const TrackErrorSample& s : r.error_samples) {
        csv += format_double(s.time_s);
        csv += ',';
        csv += std::to_string(s.track_id);
        csv += ',';
        csv += std::to_string(s.target_id);
        csv += ',';
        csv += format_double(s.position_error_m);
        csv += '\n';
    }
    return csv;
}

std::string run_sync_csv(const RunReport& r) {
    std::string csv = "sync_time_s\n";
    for (double t : r.sync_times) {
        csv += format_double(t);
        csv += '\n';
    }
    return csv;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field += ch;
        }
    }
    fields.push_back(field);
    return fields;
}

double parse_double(const std::string& text) {
    double v = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), v);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
        throw std::runtime_error("malformed number '" + text + "'");
    }
    return v;
}

std::vector<double> read_errors_csv_column(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read file '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line) || line != "time_s,track_id,target_id,position_error_m") {
        throw std::runtime_error(path.string() + ": unexpected errors CSV header");
    }
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 4) throw std::runtime_error(path.string() + ": malformed row");
        values.push_back(parse_double(fields[3]));
    }
    return values;
}

std::size_t count_sync_rows(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read file '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line) || line != "sync_time_s") {
        throw std::runtime_error(path.string() + ": unexpected sync CSV header");
    }
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty()) ++rows;
    }
    return rows;
}

bool stats_match(const json& stored, const SampleStats& computed, const std::string& where,
                 std::vector<std::string>& issues) {
    if (stored.is_null()) {
        if (computed.count != 0) {
            issues.push_back(where + ": summary has no stats but samples exist");
            return false;
        }
        return true;
    }
    bool ok = true;
    auto check = [&](const char* key, double value) {
        const double stored_value = stored.at(key).get<double>();
        if (stored_value != value) {
            issues.push_back(where + "." + key + ": stored " + format_double(stored_value) +
                             " != recomputed " + format_double(value));
            ok = false;
        }
    };
    if (stored.at("count").get<std::size_t>() != computed.count) {
        issues.push_back(where + ".count: stored != recomputed");
        ok = false;
    }
    check("median", computed.median);
    check("min", computed.min);
    check("max", computed.max);
    check("mean", computed.mean);
    check("std_dev", computed.std_dev);
    return ok;
}

}  // namespace

void write_bundle(const std::filesystem::path& out_dir, const ScenarioConfig& config,
                  const std::vector<StrategyResult>& results) {
    std::filesystem::create_directories(out_dir);

    json summary;
    summary["artifact_version"] = kArtifactVersion;
    summary["config_hash"] = config_hash(config);
    summary["error_sampling"] = "per_update_confirmed";
    summary["seeds"] = json::array();
    if (!results.empty()) {
        for (const RunReport& r : results.front().summary.runs) summary["seeds"].push_back(r.seed);
    }

    summary["strategies"] = json::array();
    for (const StrategyResult& res : results) {
        json s;
        s["name"] = res.name;
        s["pooled"] = stats_to_json(res.summary.pooled);
        s["mean_sync_count"] = res.summary.mean_sync_count;
        s["mean_tracks_acquired"] = res.summary.mean_tracks_acquired;
        s["runs"] = json::array();
        for (const RunReport& r : res.summary.runs) {
            json rj;
            rj["seed"] = r.seed;
            rj["stats"] = stats_to_json(r.stats);
            rj["sync_count"] = r.sync_times.size();
            rj["tracks_acquired"] = r.tracks_acquired;
            rj["targets_total"] = r.targets_total;
            rj["mean_period_load"] = r.mean_period_load;
            rj["max_period_load"] = r.max_period_load;
            rj["budget_violations"] = r.budget_violations;
            rj["errors_file"] = errors_filename(res.name, r.seed);
            rj["sync_file"] = sync_filename(res.name, r.seed);
            s["runs"].push_back(std::move(rj));

            write_text_file(out_dir / errors_filename(res.name, r.seed), run_errors_csv(r));
            write_text_file(out_dir / sync_filename(res.name, r.seed), run_sync_csv(r));
        }
        summary["strategies"].push_back(std::move(s));
    }

    write_text_file(out_dir / "summary.json", summary.dump(2) + "\n");
    write_text_file(out_dir / "config.json", serialize_config(config));
}

std::string render_summary_table(const std::vector<StrategyResult>& results) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-14s %10s %10s %10s %10s %10s %8s\n", "strategy", "median",
                  "min", "max", "mean", "std.dev.", "samples");
    out << line;
    for (const StrategyResult& res : results) {
        const SampleStats& s = res.summary.pooled;
        if (s.count == 0) {
            std::snprintf(line, sizeof(line), "%-14s %10s %10s %10s %10s %10s %8d\n", res.name.c_str(),
                          "-", "-", "-", "-", "-", 0);
        } else {
            std::snprintf(line, sizeof(line), "%-14s %10.1f %10.1f %10.1f %10.1f %10.1f %8zu\n",
                          res.name.c_str(), s.median, s.min, s.max, s.mean, s.std_dev, s.count);
        }
        out << line;
    }
    return out.str();
}

std::vector<std::string> verify_bundle(const std::filesystem::path& out_dir) {
    std::vector<std::string> issues;
    json summary;
    try {
        summary = json::parse(read_text_file(out_dir / "summary.json"));
    } catch (const std::exception& e) {
        issues.push_back(std::string("summary.json unreadable: ") + e.what());
        return issues;
    }

    try {
        for (const json& s : summary.at("strategies")) {
            const std::string name = s.at("name").get<std::string>();
            std::vector<double> pooled;
            for (const json& r : s.at("runs")) {
                const std::string where = name + "/seed" + std::to_string(r.at("seed").get<std::uint64_t>());
                const auto samples = read_errors_csv_column(out_dir / r.at("errors_file").get<std::string>());
                pooled.insert(pooled.end(), samples.begin(), samples.end());

                SampleStats computed;
                if (!samples.empty()) computed = compute_stats(samples);
                stats_match(r.at("stats"), computed, where, issues);

                const std::size_t syncs = count_sync_rows(out_dir / r.at("sync_file").get<std::string>());
                if (syncs != r.at("sync_count").get<std::size_t>()) {
                    issues.push_back(where + ": sync_count does not match the sync file");
                }
                if (r.at("budget_violations").get<int>() != 0) {
                    issues.push_back(where + ": budget violations recorded");
                }
            }
            SampleStats pooled_stats;
            if (!pooled.empty()) pooled_stats = compute_stats(pooled);
            stats_match(s.at("pooled"), pooled_stats, name + "/pooled", issues);
        }
    } catch (const std::exception& e) {
        issues.push_back(std::string("summary.json malformed: ") + e.what());
    }
    return issues;
}

std::vector<double> read_samples_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read file '" + path.string() + "'");
    std::string first_line;
    if (!std::getline(in, first_line)) {
        throw std::runtime_error(path.string() + ": empty file");
    }
    if (first_line == "time_s,track_id,target_id,position_error_m") {
        return read_errors_csv_column(path);
    }

    std::vector<double> values;
    std::string token;
    std::istringstream first(first_line);
    while (first >> token) values.push_back(parse_double(token));
    while (in >> token) values.push_back(parse_double(token));
    return values;
}

}  // namespace rrm
