#include "yielon/experiment.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "yielon/rng.hpp"

namespace yielon {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// seed stream tags per island
enum : std::uint64_t { kIslandRng = 100, kScheduleRng = 200, kInstanceRng = 300, kWorldRng = 400,
                       kEpisodeRng = 500 };

std::vector<IslandState> make_islands(const ExperimentConfig& config) {
    std::vector<IslandState> islands;
    for (std::size_t i = 0; i < config.islands.size(); ++i) {
        const auto& ic = config.islands[i];
        IslandState island;
        island.id = static_cast<int>(i);
        island.is_g_island = ic.g_island;
        island.repertoire = Repertoire(ic.repertoire);
        island.active = ic.start;
        island.yielory = Yielory(config.yield.upsilon_initial);
        island.window = CreditWindow(config.yield.window_size);
        island.rng = make_rng(config.seed, kIslandRng + i);
        islands.push_back(std::move(island));
    }
    return islands;
}

std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const char* field) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error(std::string("trace: bad ") + field + " value '" + s + "'");
    return v;
}

int parse_int(const std::string& s, const char* field) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error(std::string("trace: bad ") + field + " value '" + s + "'");
    return v;
}

RunSummary summarize(const ExperimentConfig& config, const std::vector<IslandState>& islands,
                     const std::string& error) {
    RunSummary summary;
    summary.seed = config.seed;
    summary.regime = to_string(config.regime);
    summary.episodes = config.episodes;
    summary.deterministic = config.deterministic;
    summary.error = error;
    for (const auto& island : islands)
        summary.islands.push_back({island.credit_total, island.switches, island.intrinsic_count,
                                   island.extrinsic_count, island.g_special_count});
    return summary;
}

} // namespace

std::vector<std::unique_ptr<DomainExecutor>> make_executors(const ExperimentConfig& config) {
    std::vector<std::unique_ptr<DomainExecutor>> executors;
    for (std::size_t i = 0; i < config.islands.size(); ++i) {
        const auto& ic = config.islands[i];
        if (config.domain == Domain::Sorting) {
            sorting::PhaseSchedule schedule = [&] {
                if (ic.phases) return sorting::PhaseSchedule(*ic.phases);
                auto rng = make_rng(config.seed, kScheduleRng + i);
                return sorting::default_schedule(config.episodes, rng);
            }();
            executors.push_back(std::make_unique<sorting::SortingExecutor>(
                std::move(schedule), derive_seed(config.seed, kInstanceRng + i)));
        } else {
            executors.push_back(std::make_unique<grid::GridworldExecutor>(
                ic.world.value_or(grid::WorldSpec{}), derive_seed(config.seed, kWorldRng + i),
                derive_seed(config.seed, kEpisodeRng + i), "w" + std::to_string(i)));
        }
    }
    return executors;
}

RunResult run_experiment(const ExperimentConfig& config, const RecordSink& sink) {
    return run_with_executors(config, make_executors(config), sink);
}

RunResult run_with_executors(const ExperimentConfig& config,
                             std::vector<std::unique_ptr<DomainExecutor>> executors,
                             const RecordSink& sink) {
    std::vector<IslandState> islands = make_islands(config);
    if (executors.size() != islands.size())
        throw std::invalid_argument("one executor per island required");
    const int n = static_cast<int>(islands.size());
    CiaRegistry registry(std::max(n, 1));
    const bool greedy = config.regime.selector == Selector::Greedy;

    RunResult result;
    std::string error;

    auto step = [&](int i, int episode, const RegistrySnapshot& snap) {
        auto& island = islands[static_cast<std::size_t>(i)];
        return greedy ? step_island_greedy(island, snap, registry, *executors[static_cast<std::size_t>(i)],
                                           episode)
                      : step_island(island, snap, registry, *executors[static_cast<std::size_t>(i)],
                                    episode, config.yield);
    };

    if (config.deterministic) {
        for (int episode = 0; episode < config.episodes && error.empty(); ++episode) {
            const RegistrySnapshot snap = registry.snapshot();
            for (int i = 0; i < n; ++i) {
                auto record = step(i, episode, snap);
                if (!record) {
                    error = "island " + std::to_string(i) + " failed at episode " +
                            std::to_string(episode) + ": " +
                            islands[static_cast<std::size_t>(i)].last_error;
                    break;
                }
                result.records.push_back(*record);
                if (sink) sink(*record);
            }
        }
    } else {
        std::vector<std::vector<EpisodeRecord>> streams(static_cast<std::size_t>(n));
        std::atomic<bool> stop{false};
        std::mutex error_mutex;
        std::vector<std::thread> workers;
        for (int i = 0; i < n; ++i) {
            workers.emplace_back([&, i] {
                for (int episode = 0; episode < config.episodes; ++episode) {
                    if (stop.load(std::memory_order_relaxed)) return;
                    auto record = step(i, episode, registry.snapshot());
                    if (!record) {
                        stop.store(true, std::memory_order_relaxed);
                        std::lock_guard lock(error_mutex);
                        if (error.empty())
                            error = "island " + std::to_string(i) + " failed at episode " +
                                    std::to_string(episode) + ": " +
                                    islands[static_cast<std::size_t>(i)].last_error;
                        return;
                    }
                    streams[static_cast<std::size_t>(i)].push_back(*record);
                }
            });
        }
        for (auto& w : workers) w.join();
        std::size_t longest = 0;
        for (const auto& s : streams) longest = std::max(longest, s.size());
        for (std::size_t row = 0; row < longest; ++row)
            for (const auto& s : streams)
                if (row < s.size()) {
                    result.records.push_back(s[row]);
                    if (sink) sink(s[row]);
                }
    }

    result.summary = summarize(config, islands, error);
    return result;
}

std::string trace_line(const EpisodeRecord& r) {
    std::string line;
    line += std::to_string(r.episode);
    line += ',';
    line += std::to_string(r.island);
    line += ',';
    line += r.algorithm.value;
    line += ',';
    line += r.phase;
    line += ',';
    line += fmt_double(r.raw_credit);
    line += ',';
    line += fmt_double(r.norm_credit);
    line += ',';
    if (r.sigma) line += fmt_double(*r.sigma);
    line += ',';
    line += fmt_double(r.yielons);
    line += ',';
    line += to_string(r.decision);
    line += ',';
    line += r.switched ? '1' : '0';
    line += ',';
    line += to_string(r.exploration);
    return line;
}

EpisodeRecord parse_trace_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        fields.push_back(line.substr(start, pos == std::string::npos ? pos : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (fields.size() != 11)
        throw std::runtime_error("trace: expected 11 fields, got " + std::to_string(fields.size()));

    EpisodeRecord r;
    r.episode = parse_int(fields[0], "episode");
    r.island = parse_int(fields[1], "island");
    r.algorithm = AlgorithmId{fields[2]};
    r.phase = fields[3];
    r.raw_credit = parse_double(fields[4], "raw_credit");
    r.norm_credit = parse_double(fields[5], "norm_credit");
    if (!fields[6].empty()) r.sigma = parse_double(fields[6], "sigma");
    r.yielons = parse_double(fields[7], "yielons");
    const auto decision = decision_from_string(fields[8]);
    if (!decision) throw std::runtime_error("trace: bad decision '" + fields[8] + "'");
    r.decision = *decision;
    if (fields[9] != "0" && fields[9] != "1")
        throw std::runtime_error("trace: bad switch flag '" + fields[9] + "'");
    r.switched = fields[9] == "1";
    const auto exploration = exploration_from_string(fields[10]);
    if (!exploration) throw std::runtime_error("trace: bad exploration '" + fields[10] + "'");
    r.exploration = *exploration;
    return r;
}

std::string summary_json(const RunSummary& summary) {
    json j;
    j["episodes"] = summary.episodes;
    j["regime"] = summary.regime;
    j["seed"] = summary.seed;
    j["deterministic"] = summary.deterministic;
    if (!summary.error.empty()) j["error"] = summary.error;
    j["islands"] = json::array();
    for (const auto& is : summary.islands)
        j["islands"].push_back({{"credits", is.credits},
                                {"switches", is.switches},
                                {"intrinsic", is.intrinsic},
                                {"extrinsic", is.extrinsic},
                                {"g_special", is.g_special}});
    return j.dump(2) + "\n";
}

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

} // namespace

void write_outputs(const RunResult& result, const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());

    {
        auto out = open_out(fs::path(dir) / "trace.csv");
        out << kTraceHeader << '\n';
        for (const auto& r : result.records) out << trace_line(r) << '\n';
        if (!out) throw std::runtime_error("write failed: " + (fs::path(dir) / "trace.csv").string());
    }
    {
        auto out = open_out(fs::path(dir) / "summary.json");
        out << summary_json(result.summary);
        if (!out)
            throw std::runtime_error("write failed: " + (fs::path(dir) / "summary.json").string());
    }
    for (std::size_t i = 0; i < result.summary.islands.size(); ++i) {
        const auto path = fs::path(dir) / ("island" + std::to_string(i) + "_plot.csv");
        auto out = open_out(path);
        out << "episode,normalized_credit,yielon_count,switch_marker,phase_label\n";
        for (const auto& r : result.records) {
            if (r.island != static_cast<int>(i)) continue;
            out << r.episode << ',' << fmt_double(r.norm_credit) << ',' << fmt_double(r.yielons)
                << ',' << (r.switched ? 1 : 0) << ',' << r.phase << '\n';
        }
        if (!out) throw std::runtime_error("write failed: " + path.string());
    }
}

std::vector<EpisodeRecord> parse_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace: " + path);
    std::string line;
    if (!std::getline(in, line) || line != kTraceHeader)
        throw std::runtime_error("trace header mismatch in " + path);
    std::vector<EpisodeRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(parse_trace_line(line));
    }
    return records;
}

ComparisonTable compare_regimes(const std::vector<ExperimentConfig>& configs) {
    if (configs.empty()) throw ConfigError("compare: need at least one config");
    const auto& ref = configs.front();
    for (const auto& cfg : configs) {
        if (cfg.domain != ref.domain)
            throw ConfigError("compare: configs mix domains " + std::string(to_string(ref.domain)) +
                              " and " + to_string(cfg.domain));
        if (cfg.islands.size() != ref.islands.size())
            throw ConfigError("compare: configs disagree on island count");
        if (cfg.episodes != ref.episodes)
            throw ConfigError("compare: configs disagree on episode count");
    }

    ComparisonTable table;
    table.islands = static_cast<int>(ref.islands.size());
    std::map<std::string, std::size_t> row_of;
    // [regime][island] -> samples
    std::vector<std::vector<std::vector<double>>> credits, switches;

    for (const auto& cfg : configs) {
        const RunResult run = run_experiment(cfg);
        if (run.failed()) throw std::runtime_error("compare: run failed: " + run.summary.error);
        const std::string regime = run.summary.regime;
        auto it = row_of.find(regime);
        if (it == row_of.end()) {
            it = row_of.emplace(regime, table.regimes.size()).first;
            table.regimes.push_back(regime);
            table.runs.push_back(0);
            credits.emplace_back(static_cast<std::size_t>(table.islands));
            switches.emplace_back(static_cast<std::size_t>(table.islands));
        }
        const std::size_t row = it->second;
        ++table.runs[row];
        for (std::size_t i = 0; i < run.summary.islands.size(); ++i) {
            credits[row][i].push_back(run.summary.islands[i].credits);
            switches[row][i].push_back(static_cast<double>(run.summary.islands[i].switches));
        }
    }

    auto mean_sd = [](const std::vector<double>& xs) {
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        double ss = 0.0;
        for (double x : xs) ss += (x - mean) * (x - mean);
        const double sd = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
        return std::pair{mean, sd};
    };

    for (std::size_t row = 0; row < table.regimes.size(); ++row) {
        std::vector<RegimeCell> cells;
        for (int i = 0; i < table.islands; ++i) {
            RegimeCell cell;
            const auto [cm, cs] = mean_sd(credits[row][static_cast<std::size_t>(i)]);
            const auto [sm, ss] = mean_sd(switches[row][static_cast<std::size_t>(i)]);
            cell.credits_mean = cm;
            cell.credits_sd = cs;
            cell.switches_mean = sm;
            cell.switches_sd = ss;
            cells.push_back(cell);
        }
        table.cells.push_back(std::move(cells));
    }
    return table;
}

std::string format_comparison(const ComparisonTable& table) {
    std::ostringstream out;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-18s %5s", "regime", "runs");
    out << buf;
    for (int i = 0; i < table.islands; ++i) {
        std::snprintf(buf, sizeof buf, " | %21s %17s", ("I" + std::to_string(i) + " credits").c_str(),
                      "switches");
        out << buf;
    }
    out << '\n';
    for (std::size_t row = 0; row < table.regimes.size(); ++row) {
        std::snprintf(buf, sizeof buf, "%-18s %5d", table.regimes[row].c_str(), table.runs[row]);
        out << buf;
        for (const auto& cell : table.cells[row]) {
            std::snprintf(buf, sizeof buf, " | %9.1f +- %8.1f %7.1f +- %6.1f", cell.credits_mean,
                          cell.credits_sd, cell.switches_mean, cell.switches_sd);
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

} // namespace yielon
