#include "yielon/baselines.hpp"

#include <stdexcept>

namespace yielon {

void RegimeConfig::validate() const {
    if (selector == Selector::LatentYield && !use_yielory)
        throw std::invalid_argument("regime: latent-yield selection requires use_yielory");
    if (selector == Selector::Greedy && use_yielory)
        throw std::invalid_argument("regime: greedy selection must not use the Yielory");
}

std::optional<RegimeConfig> regime_from_string(const std::string& name) {
    if (name == "no_yielory_no_g") return RegimeConfig{false, false, Selector::Greedy};
    if (name == "no_yielory_g") return RegimeConfig{false, true, Selector::Greedy};
    if (name == "yielory_no_g") return RegimeConfig{true, false, Selector::LatentYield};
    if (name == "yielory_g") return RegimeConfig{true, true, Selector::LatentYield};
    return std::nullopt;
}

std::string to_string(const RegimeConfig& regime) {
    if (regime.use_yielory) return regime.use_g_island ? "yielory_g" : "yielory_no_g";
    return regime.use_g_island ? "no_yielory_g" : "no_yielory_no_g";
}

AlgorithmId greedy_select(const RegistrySnapshot& snapshot, const IslandState& island) {
    const auto best = snapshot.best();
    return best ? best->algo : island.active;
}

std::optional<EpisodeRecord> step_island_greedy(IslandState& island,
                                                const RegistrySnapshot& snapshot,
                                                CiaRegistry& registry, DomainExecutor& executor,
                                                int episode) {
    InstanceOutcome outcome;
    try {
        outcome = executor.run_instance(island.active, episode);
    } catch (const std::exception& e) {
        ++island.failures;
        island.last_error = e.what();
        return std::nullopt;
    }

    const AlgorithmId ran = island.active;
    const double c_norm =
        outcome.raw_credit > 0.0 ? normalize_credit(outcome.raw_credit, island.norms, ran) : 0.0;
    island.credit_total += c_norm;
    const double perf = c_norm; // greedy scoring reacts to the latest episode only

    DecisionKind decision = DecisionKind::Exploit;
    ExplorationKind exploration = ExplorationKind::None;
    if (island.is_g_island) {
        if (snapshot.best_island && *snapshot.best_island != island.id) {
            decision = DecisionKind::IntrinsicExplore;
            if (auto pick = draw_unused_algorithm(island, snapshot)) {
                island.active = *pick;
                exploration = ExplorationKind::GSpecial;
            } else {
                island.active = intrinsic_explore(island);
                exploration = ExplorationKind::Intrinsic;
            }
        }
    } else {
        const AlgorithmId best = greedy_select(snapshot, island);
        if (best != island.active) {
            decision = DecisionKind::ExtrinsicExplore;
            extrinsic_explore(island, best);
            exploration = ExplorationKind::Extrinsic;
        }
    }
    if (exploration != ExplorationKind::None) {
        ++island.switches;
        switch (exploration) {
            case ExplorationKind::Intrinsic: ++island.intrinsic_count; break;
            case ExplorationKind::Extrinsic: ++island.extrinsic_count; break;
            case ExplorationKind::GSpecial: ++island.g_special_count; break;
            case ExplorationKind::None: break;
        }
    }

    registry.report(island.id, CiaEntry{ran, island.active, 0.0, perf});

    EpisodeRecord record;
    record.episode = episode;
    record.island = island.id;
    record.algorithm = ran;
    record.phase = outcome.phase;
    record.raw_credit = outcome.raw_credit;
    record.norm_credit = c_norm;
    record.sigma = std::nullopt;
    record.yielons = 0.0;
    record.decision = decision;
    record.switched = exploration != ExplorationKind::None;
    record.exploration = exploration;
    return record;
}

} // namespace yielon
