#pragma once

// Islands, repertoires, the central registry and the exploration policies,
// including the G-Island diversity rule.

#include <mutex>
#include <optional>
#include <random>
#include <vector>

#include "yielon/domain.hpp"
#include "yielon/record.hpp"
#include "yielon/yield.hpp"

namespace yielon {

// Ordered set of algorithms available on one island.
class Repertoire {
public:
    Repertoire() = default;
    explicit Repertoire(std::vector<AlgorithmId> algos);

    bool contains(const AlgorithmId& algo) const;
    // Idempotent; imported algorithms stay permanently.
    void add(const AlgorithmId& algo);

    std::size_t size() const { return algos_.size(); }
    const std::vector<AlgorithmId>& algos() const { return algos_; }

private:
    std::vector<AlgorithmId> algos_;
};

struct IslandState {
    int id = 0;
    bool is_g_island = false;
    Repertoire repertoire;
    AlgorithmId active;
    Yielory yielory;
    CreditWindow window{5};
    NormalizationState norms;
    std::mt19937_64 rng;

    double credit_total = 0.0; // cumulative normalized credit
    int switches = 0;
    int intrinsic_count = 0;
    int extrinsic_count = 0;
    int g_special_count = 0;
    int failures = 0;
    std::string last_error;
};

struct CiaEntry {
    AlgorithmId algo;   // algorithm that earned the reported score
    AlgorithmId active; // algorithm the island runs now
    double yielons = 0.0;
    double perf = 0.0;  // mean normalized credit over the island's window
};

struct RegistrySnapshot {
    std::vector<std::optional<CiaEntry>> entries;
    std::optional<int> best_island;

    std::optional<CiaBest> best() const;
};

// Passive per-island scoreboard. Reports are serialized; snapshots are
// consistent copies. Best entry is the maximum perf, ties to the lowest
// island index.
class CiaRegistry {
public:
    explicit CiaRegistry(int island_count);

    void report(int island, const CiaEntry& entry); // throws on unknown island
    std::optional<CiaBest> query_best() const;
    RegistrySnapshot snapshot() const;

private:
    void recompute_best();

    std::vector<std::optional<CiaEntry>> entries_;
    std::optional<int> best_;
    mutable std::mutex mutex_;
};

// Uniform draw from the repertoire minus the active algorithm. A singleton
// repertoire yields the active algorithm back (no-op switch).
AlgorithmId intrinsic_explore(IslandState& island);

// Adopt the archipelago best, importing it into the repertoire if absent.
void extrinsic_explore(IslandState& island, const AlgorithmId& best);

struct GExploreResult {
    AlgorithmId algo;
    bool special = false; // true when the diversity draw fired
};

// Uniform draw from the repertoire minus every algorithm currently active on
// some island (the island's own included). Nullopt when nothing is left.
std::optional<AlgorithmId> draw_unused_algorithm(IslandState& island,
                                                 const RegistrySnapshot& snapshot);

// Exploration target for a G-Island. The special draw picks uniformly from
// the local repertoire minus every currently active algorithm; it fires when
// the G island lags the mean Yielon level by more than delta, or when it is
// the performance argmax while sharing its algorithm with another island.
// Otherwise (or when the exclusion leaves nothing) falls back to
// intrinsic_explore.
GExploreResult g_island_explore(IslandState& island, const RegistrySnapshot& snapshot,
                                const YieldParams& params);

// Runs one task instance on the island: execute, normalize, window, decide,
// apply any switch (G islands route exploration through g_island_explore),
// report to the registry. Returns nullopt on executor failure, leaving the
// island untouched except for the failure counter.
std::optional<EpisodeRecord> step_island(IslandState& island, const RegistrySnapshot& snapshot,
                                         CiaRegistry& registry, DomainExecutor& executor,
                                         int episode, const YieldParams& params);

} // namespace yielon
