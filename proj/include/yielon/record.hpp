#pragma once

#include <optional>
#include <string>

#include "yielon/yield.hpp"

namespace yielon {

enum class ExplorationKind { None, Intrinsic, Extrinsic, GSpecial };

const char* to_string(ExplorationKind kind);
std::optional<DecisionKind> decision_from_string(const std::string& s);
std::optional<ExplorationKind> exploration_from_string(const std::string& s);

// One trace row per (island, episode).
struct EpisodeRecord {
    int episode = 0;
    int island = 0;
    AlgorithmId algorithm;            // algorithm that executed this instance
    std::string phase;                // data kind or world id
    double raw_credit = 0.0;
    double norm_credit = 0.0;
    std::optional<double> sigma;      // empty while the window is short, and in greedy mode
    double yielons = 0.0;             // end-of-episode level; 0 in greedy regimes
    DecisionKind decision = DecisionKind::Exploit;
    bool switched = false;
    ExplorationKind exploration = ExplorationKind::None;

    friend bool operator==(const EpisodeRecord&, const EpisodeRecord&) = default;
};

} // namespace yielon
