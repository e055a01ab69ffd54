#pragma once

// Greedy selection baseline and the four experiment regimes.

#include <optional>
#include <string>

#include "yielon/archipelago.hpp"

namespace yielon {

enum class Selector { Greedy, LatentYield };

struct RegimeConfig {
    bool use_yielory = true;
    bool use_g_island = true;
    Selector selector = Selector::LatentYield;

    void validate() const; // selector and use_yielory must agree
};

// Names: no_yielory_no_g, no_yielory_g, yielory_no_g, yielory_g.
std::optional<RegimeConfig> regime_from_string(const std::string& name);
std::string to_string(const RegimeConfig& regime);

// The registry's current best algorithm; the island's own when the registry
// is empty.
AlgorithmId greedy_select(const RegistrySnapshot& snapshot, const IslandState& island);

// Uniform draw from the repertoire minus every currently active algorithm.
// Empty exclusion result yields nullopt.
std::optional<AlgorithmId> draw_unused_algorithm(IslandState& island,
                                                 const RegistrySnapshot& snapshot);

// Greedy per-episode step: switch whenever the archipelago best differs from
// the active algorithm, with no inertia. A greedy G island instead hops to a
// random inactive algorithm whenever its own score is not the best. The
// Yielory is never consulted.
std::optional<EpisodeRecord> step_island_greedy(IslandState& island,
                                                const RegistrySnapshot& snapshot,
                                                CiaRegistry& registry, DomainExecutor& executor,
                                                int episode);

} // namespace yielon
