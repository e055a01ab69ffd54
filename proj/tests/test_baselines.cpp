#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "yielon/baselines.hpp"
#include "yielon/rng.hpp"

using namespace yielon;

namespace {

const AlgorithmId kQS{"sorting/quick"};
const AlgorithmId kIS{"sorting/insertion"};
const AlgorithmId kCS{"sorting/counting"};
const AlgorithmId kXX{"sorting/extra"};

IslandState make_island(int id, std::vector<AlgorithmId> rep, AlgorithmId active,
                        bool g = false) {
    IslandState island;
    island.id = id;
    island.is_g_island = g;
    island.repertoire = Repertoire(std::move(rep));
    island.active = std::move(active);
    island.yielory = Yielory(60.0);
    island.window = CreditWindow(5);
    island.rng = make_rng(7, static_cast<std::uint64_t>(id));
    return island;
}

struct ScriptedExecutor : DomainExecutor {
    std::function<double(const AlgorithmId&, int)> credit;
    explicit ScriptedExecutor(std::function<double(const AlgorithmId&, int)> fn)
        : credit(std::move(fn)) {}
    InstanceOutcome run_instance(const AlgorithmId& algo, int episode) override {
        return {credit(algo, episode), "scripted"};
    }
};

} // namespace

TEST_CASE("regime names round-trip and enforce the selector pairing") {
    for (const char* name : {"no_yielory_no_g", "no_yielory_g", "yielory_no_g", "yielory_g"}) {
        const auto regime = regime_from_string(name);
        REQUIRE(regime.has_value());
        CHECK(to_string(*regime) == name);
        CHECK_NOTHROW(regime->validate());
        CHECK((regime->selector == Selector::LatentYield) == regime->use_yielory);
    }
    CHECK(!regime_from_string("greedy"));

    RegimeConfig bad{false, false, Selector::LatentYield};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    RegimeConfig bad2{true, false, Selector::Greedy};
    CHECK_THROWS_AS(bad2.validate(), std::invalid_argument);
}

TEST_CASE("greedy_select returns the registry best or the island's own") {
    auto island = make_island(0, {kQS, kIS}, kQS);
    RegistrySnapshot empty;
    CHECK(greedy_select(empty, island) == kQS);

    RegistrySnapshot snap;
    snap.entries = {CiaEntry{kQS, kQS, 0.0, 40.0}, CiaEntry{kCS, kCS, 0.0, 90.0}};
    snap.best_island = 1;
    CHECK(greedy_select(snap, island) == kCS);
}

TEST_CASE("greedy step: best equals active is a fixed point") {
    auto island = make_island(0, {kQS, kIS}, kQS);
    CiaRegistry registry(2);
    registry.report(0, {kQS, kQS, 0.0, 90.0});
    registry.report(1, {kIS, kIS, 0.0, 50.0});
    ScriptedExecutor exec([](const AlgorithmId&, int) { return 0.5; });

    const auto rec = step_island_greedy(island, registry.snapshot(), registry, exec, 0);
    REQUIRE(rec.has_value());
    CHECK(!rec->switched);
    CHECK(rec->decision == DecisionKind::Exploit);
    CHECK(island.active == kQS);
}

TEST_CASE("greedy step: any better island triggers an immediate copy") {
    auto island = make_island(0, {kQS, kIS}, kQS);
    CiaRegistry registry(2);
    registry.report(0, {kQS, kQS, 0.0, 40.0});
    registry.report(1, {kCS, kCS, 0.0, 90.0});
    ScriptedExecutor exec([](const AlgorithmId&, int) { return 0.5; });

    const auto rec = step_island_greedy(island, registry.snapshot(), registry, exec, 0);
    REQUIRE(rec.has_value());
    CHECK(rec->switched);
    CHECK(rec->decision == DecisionKind::ExtrinsicExplore);
    CHECK(rec->exploration == ExplorationKind::Extrinsic);
    CHECK(island.active == kCS);
    CHECK(island.repertoire.contains(kCS)); // imported on the way in
    CHECK(island.extrinsic_count == 1);
}

TEST_CASE("greedy has zero hysteresis over any scripted run") {
    auto island = make_island(0, {kQS, kIS, kCS}, kQS);
    CiaRegistry registry(2);
    ScriptedExecutor exec([](const AlgorithmId&, int) { return 0.5; });
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> perf(0.0, 100.0);
    const std::vector<AlgorithmId> pool{kQS, kIS, kCS};

    for (int ep = 0; ep < 300; ++ep) {
        // island 1 reports a random best candidate before island 0 steps
        const auto& other = pool[static_cast<std::size_t>(rng() % pool.size())];
        registry.report(1, {other, other, 0.0, perf(rng)});
        const auto snap = registry.snapshot();
        const auto best = snap.best();
        const bool expect_switch = best && best->algo != island.active;
        const auto rec = step_island_greedy(island, snap, registry, exec, ep);
        REQUIRE(rec.has_value());
        CHECK(rec->switched == expect_switch);
    }
}

TEST_CASE("greedy never consults the yielory and reports zero yielons") {
    auto island = make_island(0, {kQS, kIS}, kQS);
    CiaRegistry registry(2);
    registry.report(1, {kIS, kIS, 0.0, 99.0});
    ScriptedExecutor exec([](const AlgorithmId&, int ep) { return 1.0 / (1 + ep); });

    for (int ep = 0; ep < 100; ++ep) {
        const auto rec = step_island_greedy(island, registry.snapshot(), registry, exec, ep);
        REQUIRE(rec.has_value());
        CHECK(rec->yielons == 0.0);
        CHECK(!rec->sigma);
    }
    CHECK(island.yielory.reads() == 0);
    const auto snap = registry.snapshot();
    CHECK(snap.entries[0]->yielons == 0.0);
}

TEST_CASE("greedy perf score is the latest single episode credit") {
    auto island = make_island(0, {kQS, kIS}, kQS);
    CiaRegistry registry(1);
    // raw falls, so the normalized credit falls relative to the first max
    ScriptedExecutor exec([](const AlgorithmId&, int ep) { return 1.0 / (1 + ep); });

    auto rec = step_island_greedy(island, registry.snapshot(), registry, exec, 0);
    CHECK(registry.snapshot().entries[0]->perf == doctest::Approx(100.0));
    rec = step_island_greedy(island, registry.snapshot(), registry, exec, 1);
    CHECK(registry.snapshot().entries[0]->perf == doctest::Approx(50.0));
    rec = step_island_greedy(island, registry.snapshot(), registry, exec, 3);
    CHECK(registry.snapshot().entries[0]->perf == doctest::Approx(25.0));
}

TEST_CASE("greedy g island hops to an inactive algorithm whenever beaten") {
    auto island = make_island(1, {kQS, kIS, kCS, kXX}, kIS, true);
    CiaRegistry registry(3);
    registry.report(0, {kQS, kQS, 0.0, 95.0});
    registry.report(1, {kIS, kIS, 0.0, 50.0});
    registry.report(2, {kCS, kCS, 0.0, 80.0});
    ScriptedExecutor exec([](const AlgorithmId&, int) { return 0.5; });

    const auto rec = step_island_greedy(island, registry.snapshot(), registry, exec, 0);
    REQUIRE(rec.has_value());
    CHECK(rec->switched);
    CHECK(rec->exploration == ExplorationKind::GSpecial);
    CHECK(island.active == kXX); // the only algorithm active nowhere
    CHECK(island.g_special_count == 1);
}

TEST_CASE("greedy g island stands pat while on top, falls back when cornered") {
    SUBCASE("g island holds the best score") {
        auto island = make_island(1, {kQS, kIS}, kIS, true);
        CiaRegistry registry(2);
        registry.report(0, {kQS, kQS, 0.0, 40.0});
        registry.report(1, {kIS, kIS, 0.0, 90.0});
        ScriptedExecutor exec([](const AlgorithmId&, int) { return 0.5; });
        const auto rec = step_island_greedy(island, registry.snapshot(), registry, exec, 0);
        CHECK(!rec->switched);
        CHECK(island.active == kIS);
    }
    SUBCASE("all local algorithms are active somewhere") {
        auto island = make_island(1, {kQS, kIS}, kIS, true);
        CiaRegistry registry(2);
        registry.report(0, {kQS, kQS, 0.0, 95.0});
        registry.report(1, {kIS, kIS, 0.0, 50.0});
        ScriptedExecutor exec([](const AlgorithmId&, int) { return 0.5; });
        const auto rec = step_island_greedy(island, registry.snapshot(), registry, exec, 0);
        REQUIRE(rec.has_value());
        CHECK(rec->switched);
        CHECK(rec->exploration == ExplorationKind::Intrinsic); // local random fallback
        CHECK(island.active == kQS);
    }
}
