#pragma once

// Instrumented sorting task: three sorts with operation counters, the three
// input-data regimes and the reciprocal-cost credit.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "yielon/domain.hpp"
#include "yielon/yield.hpp"

namespace yielon::sorting {

inline const AlgorithmId kQuick{"sorting/quick"};
inline const AlgorithmId kInsertion{"sorting/insertion"};
inline const AlgorithmId kCounting{"sorting/counting"};

enum class DataKind { RandL, RandS, AlmoS };

const char* to_string(DataKind kind);
std::optional<DataKind> kind_from_string(const std::string& s);

// Value ceiling per kind; also the counting-sort key range.
int kind_value_max(DataKind kind);

inline constexpr int kInstanceLength = 20;

struct SortInstance {
    std::vector<int> values;
    DataKind kind = DataKind::RandL;
    std::uint64_t seed = 0;
};

SortInstance generate_instance(DataKind kind, std::mt19937_64& rng);
SortInstance generate_instance(DataKind kind, std::uint64_t seed);

// Sorted uniform draw over [0, 10^6] with `swaps` random adjacent swaps.
std::vector<int> almost_sorted_values(std::mt19937_64& rng, int swaps);

// Counting convention: omega = comparisons + element moves (assignments of
// data values, including temporaries and auxiliary arrays) + value
// arithmetic (counter increments); alpha = every read or write of the data
// array or an auxiliary array. Loop-index bookkeeping is not counted.
struct InstrumentCounters {
    std::int64_t comparisons = 0;
    std::int64_t moves = 0;
    std::int64_t arithmetic = 0;
    std::int64_t reads = 0;
    std::int64_t writes = 0;

    std::int64_t omega() const { return comparisons + moves + arithmetic; }
    std::int64_t alpha() const { return reads + writes; }

    friend bool operator==(const InstrumentCounters&, const InstrumentCounters&) = default;
};

struct SortRun {
    std::vector<int> values;
    InstrumentCounters counters;
};

// Median-of-three quicksort with Hoare partitioning.
SortRun quick_sort(const std::vector<int>& input);
SortRun insertion_sort(const std::vector<int>& input);
// Counting sort over keys in [0, value_max]. The counters follow the dense
// count-array algorithm for that range; the output is computed sparsely so
// large ranges cost no more wall time than small ones.
SortRun counting_sort(const std::vector<int>& input, int value_max);

SortRun run_sort(const AlgorithmId& algo, const SortInstance& instance);

inline double raw_credit(const InstrumentCounters& c) {
    return 1.0 / static_cast<double>(c.omega() + c.alpha() + 1);
}

struct Phase {
    DataKind kind = DataKind::RandL;
    int begin = 0;
    int end = 0; // half-open
};

// Ordered phases partitioning the episode range.
class PhaseSchedule {
public:
    explicit PhaseSchedule(std::vector<Phase> phases);

    DataKind kind_at(int episode) const; // outside the range: last phase's kind
    const std::vector<Phase>& phases() const { return phases_; }

private:
    std::vector<Phase> phases_;
};

inline DataKind schedule_kind(const PhaseSchedule& schedule, int episode) {
    return schedule.kind_at(episode);
}

// Three equal spans in a seeded random kind order (remainder to the last).
PhaseSchedule default_schedule(int episodes, std::mt19937_64& rng);

class SortingExecutor : public DomainExecutor {
public:
    SortingExecutor(PhaseSchedule schedule, std::uint64_t instance_seed);

    InstanceOutcome run_instance(const AlgorithmId& algo, int episode) override;

private:
    PhaseSchedule schedule_;
    std::uint64_t seed_;
};

} // namespace yielon::sorting
