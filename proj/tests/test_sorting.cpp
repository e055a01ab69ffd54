#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "yielon/rng.hpp"
#include "yielon/sorting.hpp"

using namespace yielon;
using namespace yielon::sorting;

namespace {

// Reference instrumented insertion sort, written independently of the
// library path and validated by the hand-counted length-3 cases below.
SortRun reference_insertion(const std::vector<int>& in) {
    SortRun run{in, {}};
    auto& a = run.values;
    auto& c = run.counters;
    for (std::size_t i = 1; i < a.size(); ++i) {
        c.reads += 1;
        c.moves += 1;
        const int key = a[i];
        std::size_t j = i;
        for (; j > 0; --j) {
            c.reads += 1;
            c.comparisons += 1;
            if (a[j - 1] <= key) break;
            c.reads += 1;
            c.writes += 1;
            c.moves += 1;
            a[j] = a[j - 1];
        }
        c.writes += 1;
        c.moves += 1;
        a[j] = key;
    }
    return run;
}

// Literal dense counting sort; the production path must reproduce both its
// output and its counters.
SortRun reference_dense_counting(const std::vector<int>& in, int value_max) {
    SortRun run{in, {}};
    auto& c = run.counters;
    std::vector<int> count(static_cast<std::size_t>(value_max) + 1);
    for (auto& slot : count) {
        slot = 0;
        ++c.writes;
    }
    for (std::size_t i = 0; i < run.values.size(); ++i) {
        ++c.reads; // key
        const int v = run.values[i];
        ++c.reads; // counter load
        ++c.arithmetic;
        ++c.writes; // counter store
        ++count[static_cast<std::size_t>(v)];
    }
    std::size_t idx = 0;
    for (int v = 0; v <= value_max; ++v) {
        ++c.reads;
        for (int k = 0; k < count[static_cast<std::size_t>(v)]; ++k) {
            ++c.writes;
            ++c.moves;
            run.values[idx++] = v;
        }
    }
    return run;
}

// library-independent correctness oracle
std::vector<int> selection_sorted(std::vector<int> v) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        std::size_t best = i;
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[j] < v[best]) best = j;
        std::swap(v[i], v[best]);
    }
    return v;
}

int inversions(const std::vector<int>& v) {
    int count = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[i] > v[j]) ++count;
    return count;
}

} // namespace

TEST_CASE("instance generation respects the kind ranges") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto small = generate_instance(DataKind::RandS, rng);
        REQUIRE(small.values.size() == kInstanceLength);
        for (int v : small.values) {
            REQUIRE(v >= 1);
            REQUIRE(v <= 35);
        }
        const auto large = generate_instance(DataKind::RandL, rng);
        REQUIRE(large.values.size() == kInstanceLength);
        for (int v : large.values) {
            REQUIRE(v >= 0);
            REQUIRE(v <= 1'000'000);
        }
    }
}

TEST_CASE("almost-sorted instances are a lightly disturbed sorted array") {
    std::mt19937_64 rng(7);
    const auto zero = almost_sorted_values(rng, 0);
    CHECK(std::is_sorted(zero.begin(), zero.end()));

    for (int trial = 0; trial < 500; ++trial) {
        const auto inst = generate_instance(DataKind::AlmoS, rng);
        REQUIRE(inst.values.size() == kInstanceLength);
        CHECK(inversions(inst.values) <= 4); // two adjacent swaps at most
        auto sorted = inst.values;
        std::sort(sorted.begin(), sorted.end());
        CHECK(selection_sorted(inst.values) == sorted);
    }
}

TEST_CASE("instances are deterministic per seed") {
    const auto a = generate_instance(DataKind::RandL, std::uint64_t{12345});
    const auto b = generate_instance(DataKind::RandL, std::uint64_t{12345});
    const auto c = generate_instance(DataKind::RandL, std::uint64_t{12346});
    CHECK(a.values == b.values);
    CHECK(a.seed == 12345);
    CHECK(a.values != c.values);
}

TEST_CASE("hand-counted length-3 cases pin the insertion-sort convention") {
    struct Case {
        std::vector<int> input;
        InstrumentCounters expected;
    };
    // counted on paper: key load (read+move), one read per comparison,
    // read+write+move per shift, write+move per final placement
    const std::vector<Case> cases = {
        {{1, 2, 3}, {2, 4, 0, 4, 2}},
        {{3, 2, 1}, {3, 7, 0, 8, 5}},
        {{2, 1, 3}, {2, 5, 0, 5, 3}},
    };
    for (const auto& c : cases) {
        const auto ref = reference_insertion(c.input);
        CHECK(ref.counters == c.expected);
        const auto prod = insertion_sort(c.input);
        CHECK(prod.counters == c.expected);
        CHECK(prod.values == selection_sorted(c.input));
    }
}

TEST_CASE("insertion sort on a sorted array costs one comparison per element") {
    std::vector<int> sorted(kInstanceLength);
    for (int i = 0; i < kInstanceLength; ++i) sorted[static_cast<std::size_t>(i)] = i * 3;
    const auto run = insertion_sort(sorted);
    CHECK(run.counters.comparisons == kInstanceLength - 1);
    CHECK(run.values == sorted);
}

TEST_CASE("production insertion sort matches the reference on random arrays") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> value(0, 50);
    std::uniform_int_distribution<int> len(0, 24);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<int> input(static_cast<std::size_t>(len(rng)));
        for (auto& v : input) v = value(rng);
        const auto prod = insertion_sort(input);
        const auto ref = reference_insertion(input);
        REQUIRE(prod.values == ref.values);
        REQUIRE(prod.counters == ref.counters);
    }
}

TEST_CASE("sparse counting sort reproduces the dense reference exactly") {
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<int> value(0, 35);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<int> input(kInstanceLength);
        for (auto& v : input) v = value(rng);
        const auto prod = counting_sort(input, 35);
        const auto ref = reference_dense_counting(input, 35);
        REQUIRE(prod.values == ref.values);
        REQUIRE(prod.counters == ref.counters);
    }

    // one full-range case; the reference really walks the million counters
    const auto inst = generate_instance(DataKind::RandL, std::uint64_t{777});
    const auto prod = counting_sort(inst.values, kind_value_max(DataKind::RandL));
    const auto ref = reference_dense_counting(inst.values, kind_value_max(DataKind::RandL));
    CHECK(prod.values == ref.values);
    CHECK(prod.counters == ref.counters);
}

TEST_CASE("counting sort rejects keys outside the declared range") {
    CHECK_THROWS_AS(counting_sort({1, 2, 40}, 35), std::invalid_argument);
    CHECK_THROWS_AS(counting_sort({-1}, 35), std::invalid_argument);
    CHECK_THROWS_AS(counting_sort({1}, -1), std::invalid_argument);
}

TEST_CASE("all three sorts agree with the reference sort") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 1000; ++trial) {
        for (DataKind kind : {DataKind::RandL, DataKind::RandS, DataKind::AlmoS}) {
            const auto inst = generate_instance(kind, rng);
            const auto expected = selection_sorted(inst.values);
            CHECK(quick_sort(inst.values).values == expected);
            CHECK(insertion_sort(inst.values).values == expected);
            CHECK(counting_sort(inst.values, kind_value_max(kind)).values == expected);
        }
    }
}

TEST_CASE("run_sort dispatches by id and validates it") {
    const SortInstance singleton{{5}, DataKind::RandS, 0};
    for (const auto& algo : {kQuick, kInsertion, kCounting})
        CHECK(run_sort(algo, singleton).values == std::vector<int>{5});
    CHECK_THROWS_AS(run_sort(AlgorithmId{"sorting/bogo"}, singleton), std::invalid_argument);
}

TEST_CASE("counters are deterministic per instance") {
    const auto inst = generate_instance(DataKind::RandL, std::uint64_t{4242});
    const auto a = run_sort(kQuick, inst);
    const auto b = run_sort(kQuick, inst);
    CHECK(a.counters == b.counters);
    CHECK(a.values == b.values);
}

TEST_CASE("raw credit is the reciprocal of the work done") {
    InstrumentCounters idle;
    CHECK(raw_credit(idle) == doctest::Approx(1.0));

    InstrumentCounters loaded;
    loaded.comparisons = 99; // omega
    loaded.reads = 100;      // alpha
    CHECK(raw_credit(loaded) == doctest::Approx(0.005));

    InstrumentCounters heavier = loaded;
    heavier.writes = 55;
    CHECK(raw_credit(heavier) < raw_credit(loaded));
}

TEST_CASE("phase schedule spans are half-open and the tail extends") {
    const PhaseSchedule schedule({{DataKind::RandS, 0, 100},
                                  {DataKind::AlmoS, 100, 200},
                                  {DataKind::RandL, 200, 300}});
    CHECK(schedule_kind(schedule, 0) == DataKind::RandS);
    CHECK(schedule_kind(schedule, 99) == DataKind::RandS);
    CHECK(schedule_kind(schedule, 100) == DataKind::AlmoS);
    CHECK(schedule_kind(schedule, 299) == DataKind::RandL);
    CHECK(schedule_kind(schedule, 300) == DataKind::RandL);
    CHECK(schedule_kind(schedule, 5000) == DataKind::RandL);
}

TEST_CASE("phase schedule validation") {
    CHECK_THROWS_AS(PhaseSchedule({}), std::invalid_argument);
    CHECK_THROWS_AS(PhaseSchedule({{DataKind::RandS, 0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(PhaseSchedule({{DataKind::RandS, 0, 10}, {DataKind::RandL, 12, 20}}),
                    std::invalid_argument);
}

TEST_CASE("default schedules cover the range and differ by seed") {
    auto rng_a = make_rng(1, 0);
    auto rng_b = make_rng(2, 0);
    const auto a = default_schedule(300, rng_a);
    const auto b = default_schedule(300, rng_b);
    REQUIRE(a.phases().size() == 3);
    CHECK(a.phases().front().begin == 0);
    CHECK(a.phases().back().end == 300);

    // all three kinds appear exactly once
    std::vector<DataKind> kinds;
    for (const auto& p : a.phases()) kinds.push_back(p.kind);
    std::sort(kinds.begin(), kinds.end());
    CHECK(std::unique(kinds.begin(), kinds.end()) == kinds.end());

    // different seeds shuffle the order eventually
    bool differs = a.phases()[0].kind != b.phases()[0].kind ||
                   a.phases()[1].kind != b.phases()[1].kind;
    for (std::uint64_t s = 3; !differs && s < 12; ++s) {
        auto rng_c = make_rng(s, 0);
        differs = default_schedule(300, rng_c).phases()[0].kind != a.phases()[0].kind;
    }
    CHECK(differs);
}

TEST_CASE("affinity: each kind favours its intended algorithm") {
    for (DataKind kind : {DataKind::RandS, DataKind::AlmoS, DataKind::RandL}) {
        double quick = 0.0, insert = 0.0, count = 0.0;
        for (int s = 0; s < 100; ++s) {
            const auto inst =
                generate_instance(kind, derive_seed(8899, static_cast<std::uint64_t>(s)));
            quick += raw_credit(quick_sort(inst.values).counters);
            insert += raw_credit(insertion_sort(inst.values).counters);
            count += raw_credit(counting_sort(inst.values, kind_value_max(kind)).counters);
        }
        switch (kind) {
            case DataKind::RandS:
                CHECK(count > quick);
                CHECK(count > insert);
                break;
            case DataKind::AlmoS:
                CHECK(insert > quick);
                CHECK(insert > count);
                break;
            case DataKind::RandL:
                CHECK(quick > insert);
                CHECK(quick > count);
                break;
        }
    }
}

TEST_CASE("sorting executor labels phases and pays the schedule's credit") {
    const PhaseSchedule schedule({{DataKind::RandS, 0, 5}, {DataKind::RandL, 5, 10}});
    SortingExecutor exec(schedule, 4242);
    const auto first = exec.run_instance(kCounting, 0);
    CHECK(first.phase == "RandS");
    CHECK(first.raw_credit > 1e-4); // small-range counting is cheap
    const auto later = exec.run_instance(kCounting, 7);
    CHECK(later.phase == "RandL");
    CHECK(later.raw_credit < 1e-5); // full-range counting is punished

    SortingExecutor again(schedule, 4242);
    CHECK(again.run_instance(kCounting, 0).raw_credit == doctest::Approx(first.raw_credit));
}
