#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "yielon/archipelago.hpp"
#include "yielon/config.hpp"
#include "yielon/record.hpp"

namespace yielon {

struct IslandSummary {
    double credits = 0.0; // cumulative normalized credit
    int switches = 0;
    int intrinsic = 0;
    int extrinsic = 0;
    int g_special = 0;

    friend bool operator==(const IslandSummary&, const IslandSummary&) = default;
};

struct RunSummary {
    std::vector<IslandSummary> islands;
    std::uint64_t seed = 0;
    std::string regime;
    int episodes = 0;
    bool deterministic = true;
    std::string error; // empty on a clean run
};

struct RunResult {
    std::vector<EpisodeRecord> records;
    RunSummary summary;

    bool failed() const { return !summary.error.empty(); }
};

using RecordSink = std::function<void(const EpisodeRecord&)>;

std::vector<std::unique_ptr<DomainExecutor>> make_executors(const ExperimentConfig& config);

// Deterministic mode steps all islands through episode j before any starts
// j+1, against a registry snapshot taken at the top of the round. The
// free-running mode runs islands on their own threads and is labeled
// nondeterministic in the summary. A domain failure aborts the run with the
// partial record stream kept and the error noted in the summary.
RunResult run_experiment(const ExperimentConfig& config, const RecordSink& sink = {});
RunResult run_with_executors(const ExperimentConfig& config,
                             std::vector<std::unique_ptr<DomainExecutor>> executors,
                             const RecordSink& sink = {});

inline constexpr const char* kTraceHeader =
    "episode,island,algorithm,phase,raw_credit,norm_credit,sigma,yielons,decision,switch,"
    "exploration";

std::string trace_line(const EpisodeRecord& record);
EpisodeRecord parse_trace_line(const std::string& line); // throws on malformed rows

// trace.csv, summary.json and one plot-ready CSV per island
// (episode,normalized_credit,yielon_count,switch_marker,phase_label).
void write_outputs(const RunResult& result, const std::string& dir);

std::vector<EpisodeRecord> parse_trace(const std::string& path);
std::string summary_json(const RunSummary& summary);

struct RegimeCell {
    double credits_mean = 0.0;
    double credits_sd = 0.0;
    double switches_mean = 0.0;
    double switches_sd = 0.0;
};

struct ComparisonTable {
    std::vector<std::string> regimes;          // row order of first appearance
    std::vector<int> runs;                     // aggregated runs per regime
    std::vector<std::vector<RegimeCell>> cells; // [regime][island]
    int islands = 0;
};

// Runs every config and aggregates per (regime, island) across seeds. The
// configs must agree on domain, island count and episode count.
ComparisonTable compare_regimes(const std::vector<ExperimentConfig>& configs);
std::string format_comparison(const ComparisonTable& table);

} // namespace yielon
