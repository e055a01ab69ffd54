#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "yielon/baselines.hpp"
#include "yielon/gridworld.hpp"
#include "yielon/sorting.hpp"
#include "yielon/yield.hpp"

namespace yielon {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Domain { Sorting, Gridworld };

const char* to_string(Domain domain);

struct IslandConfig {
    std::vector<AlgorithmId> repertoire;
    AlgorithmId start;
    bool g_island = false;
    std::optional<std::vector<sorting::Phase>> phases; // sorting only
    std::optional<grid::WorldSpec> world;              // gridworld only
};

struct ExperimentConfig {
    Domain domain = Domain::Sorting;
    int episodes = 300;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    bool deterministic = true;
    RegimeConfig regime{true, true, Selector::LatentYield}; // yielory_g
    bool allow_multiple_g = false;
    YieldParams yield;
    std::vector<IslandConfig> islands; // empty: resolved to domain defaults

    // Fills default islands, reconciles G flags with the regime and
    // validates everything. Idempotent; rerun after overriding fields.
    void finalize();
};

// Paper-style setups: three sorting islands starting counting/insertion/
// quick, or four gridworld islands over the six-learner repertoire.
std::vector<IslandConfig> default_islands(Domain domain);
ExperimentConfig default_config(Domain domain);

// Strict JSON schema; unknown keys are rejected and every diagnostic names
// the offending field.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string dump_config(const ExperimentConfig& config); // loadable JSON

} // namespace yielon
