#include "yielon/archipelago.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace yielon {

const char* to_string(ExplorationKind kind) {
    switch (kind) {
        case ExplorationKind::None: return "none";
        case ExplorationKind::Intrinsic: return "intrinsic";
        case ExplorationKind::Extrinsic: return "extrinsic";
        case ExplorationKind::GSpecial: return "g_special";
    }
    return "none";
}

std::optional<DecisionKind> decision_from_string(const std::string& s) {
    if (s == "exploit") return DecisionKind::Exploit;
    if (s == "exploit_saturated") return DecisionKind::ExploitSaturated;
    if (s == "intrinsic") return DecisionKind::IntrinsicExplore;
    if (s == "extrinsic") return DecisionKind::ExtrinsicExplore;
    return std::nullopt;
}

std::optional<ExplorationKind> exploration_from_string(const std::string& s) {
    if (s == "none") return ExplorationKind::None;
    if (s == "intrinsic") return ExplorationKind::Intrinsic;
    if (s == "extrinsic") return ExplorationKind::Extrinsic;
    if (s == "g_special") return ExplorationKind::GSpecial;
    return std::nullopt;
}

Repertoire::Repertoire(std::vector<AlgorithmId> algos) : algos_(std::move(algos)) {
    if (algos_.empty()) throw std::invalid_argument("repertoire must not be empty");
    for (std::size_t i = 0; i < algos_.size(); ++i)
        for (std::size_t j = i + 1; j < algos_.size(); ++j)
            if (algos_[i] == algos_[j])
                throw std::invalid_argument("repertoire contains duplicate algorithm: " + algos_[i].value);
}

bool Repertoire::contains(const AlgorithmId& algo) const {
    return std::find(algos_.begin(), algos_.end(), algo) != algos_.end();
}

void Repertoire::add(const AlgorithmId& algo) {
    if (!contains(algo)) algos_.push_back(algo);
}

std::optional<CiaBest> RegistrySnapshot::best() const {
    if (!best_island) return std::nullopt;
    const auto& e = entries[static_cast<std::size_t>(*best_island)];
    return CiaBest{e->algo, e->yielons};
}

CiaRegistry::CiaRegistry(int island_count) : entries_(static_cast<std::size_t>(island_count)) {
    if (island_count <= 0) throw std::invalid_argument("registry needs at least one island");
}

void CiaRegistry::report(int island, const CiaEntry& entry) {
    std::lock_guard lock(mutex_);
    if (island < 0 || island >= static_cast<int>(entries_.size()))
        throw std::out_of_range("report from unknown island " + std::to_string(island));
    entries_[static_cast<std::size_t>(island)] = entry;
    recompute_best();
}

void CiaRegistry::recompute_best() {
    best_.reset();
    for (int i = 0; i < static_cast<int>(entries_.size()); ++i) {
        const auto& e = entries_[static_cast<std::size_t>(i)];
        if (!e) continue;
        if (!best_ || e->perf > entries_[static_cast<std::size_t>(*best_)]->perf) best_ = i;
    }
}

std::optional<CiaBest> CiaRegistry::query_best() const {
    std::lock_guard lock(mutex_);
    if (!best_) return std::nullopt;
    const auto& e = entries_[static_cast<std::size_t>(*best_)];
    return CiaBest{e->algo, e->yielons};
}

RegistrySnapshot CiaRegistry::snapshot() const {
    std::lock_guard lock(mutex_);
    return RegistrySnapshot{entries_, best_};
}

AlgorithmId intrinsic_explore(IslandState& island) {
    std::vector<const AlgorithmId*> candidates;
    for (const auto& a : island.repertoire.algos())
        if (a != island.active) candidates.push_back(&a);
    if (candidates.empty()) return island.active;
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    return *candidates[pick(island.rng)];
}

void extrinsic_explore(IslandState& island, const AlgorithmId& best) {
    island.repertoire.add(best);
    island.active = best;
}

std::optional<AlgorithmId> draw_unused_algorithm(IslandState& island,
                                                 const RegistrySnapshot& snapshot) {
    std::vector<const AlgorithmId*> unused;
    for (const auto& a : island.repertoire.algos()) {
        if (a == island.active) continue;
        bool active_somewhere = false;
        for (const auto& e : snapshot.entries)
            if (e && e->active == a) { active_somewhere = true; break; }
        if (!active_somewhere) unused.push_back(&a);
    }
    if (unused.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, unused.size() - 1);
    return *unused[pick(island.rng)];
}

GExploreResult g_island_explore(IslandState& island, const RegistrySnapshot& snapshot,
                                const YieldParams& params) {
    double yielon_sum = 0.0;
    int reporting = 0;
    std::optional<double> own_yielons;
    bool algo_shared = false;
    for (int i = 0; i < static_cast<int>(snapshot.entries.size()); ++i) {
        const auto& e = snapshot.entries[static_cast<std::size_t>(i)];
        if (!e) continue;
        yielon_sum += e->yielons;
        ++reporting;
        if (i == island.id) own_yielons = e->yielons;
        else if (e->active == island.active) algo_shared = true;
    }

    bool lagging = false;
    if (own_yielons && reporting > 0)
        lagging = yielon_sum / reporting - *own_yielons > params.g_island_gap;
    const bool top_but_copied =
        snapshot.best_island && *snapshot.best_island == island.id && algo_shared;

    if (lagging || top_but_copied) {
        if (auto pick = draw_unused_algorithm(island, snapshot)) return {*pick, true};
    }
    return {intrinsic_explore(island), false};
}

namespace {

double window_mean(const CreditWindow& window) {
    const auto& e = window.entries();
    if (e.empty()) return 0.0;
    return std::accumulate(e.begin(), e.end(), 0.0) / static_cast<double>(e.size());
}

RegistrySnapshot with_live_entry(RegistrySnapshot snapshot, int island, CiaEntry entry) {
    snapshot.entries.resize(
        std::max(snapshot.entries.size(), static_cast<std::size_t>(island) + 1));
    snapshot.entries[static_cast<std::size_t>(island)] = std::move(entry);
    snapshot.best_island.reset();
    for (int i = 0; i < static_cast<int>(snapshot.entries.size()); ++i) {
        const auto& e = snapshot.entries[static_cast<std::size_t>(i)];
        if (!e) continue;
        if (!snapshot.best_island ||
            e->perf > snapshot.entries[static_cast<std::size_t>(*snapshot.best_island)]->perf)
            snapshot.best_island = i;
    }
    return snapshot;
}

// Eq-7-style trigger for a G island that is not otherwise switching: it
// initiates a diversity hop when it lags the mean Yielon level by more than
// delta, or tops the scoreboard while another island runs its algorithm.
bool g_trigger_holds(const IslandState& island, const RegistrySnapshot& snapshot,
                     const YieldParams& params) {
    double yielon_sum = 0.0;
    int reporting = 0;
    std::optional<double> own;
    bool shared = false;
    for (int i = 0; i < static_cast<int>(snapshot.entries.size()); ++i) {
        const auto& e = snapshot.entries[static_cast<std::size_t>(i)];
        if (!e) continue;
        yielon_sum += e->yielons;
        ++reporting;
        if (i == island.id) own = e->yielons;
        else if (e->active == island.active) shared = true;
    }
    const bool lagging =
        own && reporting > 0 && yielon_sum / reporting - *own > params.g_island_gap;
    const bool top_but_copied =
        snapshot.best_island && *snapshot.best_island == island.id && shared;
    return lagging || top_but_copied;
}

} // namespace

std::optional<EpisodeRecord> step_island(IslandState& island, const RegistrySnapshot& snapshot,
                                         CiaRegistry& registry, DomainExecutor& executor,
                                         int episode, const YieldParams& params) {
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
    island.window.push(c_norm);
    island.credit_total += c_norm;
    const double perf = window_mean(island.window);

    DecideResult res =
        decide(island.window, island.yielory, c_norm, snapshot.best(), island.active, params);
    island.yielory = res.yielory;

    ExplorationKind exploration = ExplorationKind::None;
    DecisionKind decision = res.decision.kind;
    if (decision == DecisionKind::IntrinsicExplore || decision == DecisionKind::ExtrinsicExplore) {
        if (decision == DecisionKind::ExtrinsicExplore) {
            extrinsic_explore(island, *res.decision.target);
            exploration = ExplorationKind::Extrinsic;
        } else if (island.is_g_island) {
            const auto patched = with_live_entry(
                snapshot, island.id, CiaEntry{ran, island.active, res.yielons_before_reset, perf});
            GExploreResult g = g_island_explore(island, patched, params);
            island.active = g.algo;
            exploration = g.special ? ExplorationKind::GSpecial : ExplorationKind::Intrinsic;
        } else {
            island.active = intrinsic_explore(island);
            exploration = ExplorationKind::Intrinsic;
        }
    } else if (island.is_g_island && island.window.size() == static_cast<std::size_t>(params.window_size)) {
        // A settled G island may still hop on its own: the diversity drive
        // fires once it has a full window of evidence on the current
        // algorithm and the trigger conditions hold.
        const auto patched = with_live_entry(
            snapshot, island.id,
            CiaEntry{ran, island.active, island.yielory.value(), perf});
        if (g_trigger_holds(island, patched, params)) {
            if (auto pick = draw_unused_algorithm(island, patched)) {
                decision = DecisionKind::IntrinsicExplore;
                island.active = *pick;
                island.yielory = Yielory::with_value(island.yielory, params.upsilon_initial);
                island.window.clear();
                exploration = ExplorationKind::GSpecial;
            }
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

    registry.report(island.id, CiaEntry{ran, island.active, island.yielory.value(), perf});

    EpisodeRecord record;
    record.episode = episode;
    record.island = island.id;
    record.algorithm = ran;
    record.phase = outcome.phase;
    record.raw_credit = outcome.raw_credit;
    record.norm_credit = c_norm;
    record.sigma = res.sigma;
    record.yielons = island.yielory.value();
    record.decision = decision;
    record.switched = exploration != ExplorationKind::None;
    record.exploration = exploration;
    return record;
}

} // namespace yielon
