#include "yielon/sorting.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "yielon/rng.hpp"

namespace yielon::sorting {

const char* to_string(DataKind kind) {
    switch (kind) {
        case DataKind::RandL: return "RandL";
        case DataKind::RandS: return "RandS";
        case DataKind::AlmoS: return "AlmoS";
    }
    return "RandL";
}

std::optional<DataKind> kind_from_string(const std::string& s) {
    if (s == "RandL") return DataKind::RandL;
    if (s == "RandS") return DataKind::RandS;
    if (s == "AlmoS") return DataKind::AlmoS;
    return std::nullopt;
}

int kind_value_max(DataKind kind) {
    return kind == DataKind::RandS ? 35 : 1'000'000;
}

std::vector<int> almost_sorted_values(std::mt19937_64& rng, int swaps) {
    std::uniform_int_distribution<int> value(0, 1'000'000);
    std::vector<int> v(kInstanceLength);
    for (auto& x : v) x = value(rng);
    std::sort(v.begin(), v.end());
    std::uniform_int_distribution<int> pos(0, kInstanceLength - 2);
    for (int s = 0; s < swaps; ++s) {
        int i = pos(rng);
        std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i) + 1]);
    }
    return v;
}

SortInstance generate_instance(DataKind kind, std::mt19937_64& rng) {
    SortInstance inst;
    inst.kind = kind;
    switch (kind) {
        case DataKind::RandL: {
            std::uniform_int_distribution<int> value(0, 1'000'000);
            inst.values.resize(kInstanceLength);
            for (auto& x : inst.values) x = value(rng);
            break;
        }
        case DataKind::RandS: {
            std::uniform_int_distribution<int> value(1, 35);
            inst.values.resize(kInstanceLength);
            for (auto& x : inst.values) x = value(rng);
            break;
        }
        case DataKind::AlmoS:
            inst.values = almost_sorted_values(rng, 2);
            break;
    }
    return inst;
}

SortInstance generate_instance(DataKind kind, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SortInstance inst = generate_instance(kind, rng);
    inst.seed = seed;
    return inst;
}

namespace {

// swap via temporary: two reads, two writes, three value moves
void counted_swap(std::vector<int>& a, std::size_t i, std::size_t j, InstrumentCounters& c) {
    c.reads += 2;
    c.writes += 2;
    c.moves += 3;
    std::swap(a[i], a[j]);
}

// reads both operands, one comparison
bool counted_less(const std::vector<int>& a, std::size_t i, std::size_t j, InstrumentCounters& c) {
    c.reads += 2;
    ++c.comparisons;
    return a[i] < a[j];
}

void quick_rec(std::vector<int>& a, int lo, int hi, InstrumentCounters& c) {
    if (hi <= lo) return;
    if (hi - lo == 1) {
        if (counted_less(a, static_cast<std::size_t>(hi), static_cast<std::size_t>(lo), c))
            counted_swap(a, static_cast<std::size_t>(lo), static_cast<std::size_t>(hi), c);
        return;
    }

    // median-of-three pivot, ordered in place
    const std::size_t l = static_cast<std::size_t>(lo);
    const std::size_t h = static_cast<std::size_t>(hi);
    const std::size_t m = l + (h - l) / 2;
    if (counted_less(a, m, l, c)) counted_swap(a, m, l, c);
    if (counted_less(a, h, l, c)) counted_swap(a, h, l, c);
    if (counted_less(a, h, m, c)) counted_swap(a, h, m, c);
    ++c.reads;
    ++c.moves;
    const int pivot = a[m];

    int i = lo - 1;
    int j = hi + 1;
    while (true) {
        do {
            ++i;
            ++c.reads;
            ++c.comparisons;
        } while (a[static_cast<std::size_t>(i)] < pivot);
        do {
            --j;
            ++c.reads;
            ++c.comparisons;
        } while (a[static_cast<std::size_t>(j)] > pivot);
        if (i >= j) break;
        counted_swap(a, static_cast<std::size_t>(i), static_cast<std::size_t>(j), c);
    }
    quick_rec(a, lo, j, c);
    quick_rec(a, j + 1, hi, c);
}

} // namespace

SortRun quick_sort(const std::vector<int>& input) {
    SortRun run{input, {}};
    if (!run.values.empty())
        quick_rec(run.values, 0, static_cast<int>(run.values.size()) - 1, run.counters);
    return run;
}

SortRun insertion_sort(const std::vector<int>& input) {
    SortRun run{input, {}};
    auto& a = run.values;
    auto& c = run.counters;
    for (std::size_t i = 1; i < a.size(); ++i) {
        ++c.reads;
        ++c.moves;
        const int key = a[i];
        std::size_t j = i;
        while (j > 0) {
            ++c.reads;
            ++c.comparisons;
            if (!(a[j - 1] > key)) break;
            ++c.reads;
            ++c.writes;
            ++c.moves;
            a[j] = a[j - 1];
            --j;
        }
        ++c.writes;
        ++c.moves;
        a[j] = key;
    }
    return run;
}

SortRun counting_sort(const std::vector<int>& input, int value_max) {
    if (value_max < 0) throw std::invalid_argument("counting sort needs a nonnegative value range");
    SortRun run{input, {}};
    auto& c = run.counters;
    const std::int64_t range = static_cast<std::int64_t>(value_max) + 1;
    const std::int64_t n = static_cast<std::int64_t>(input.size());

    // Dense-convention accounting: zero the count array, tally each key,
    // then scan the whole range emitting values.
    c.writes += range;              // zeroing
    c.reads += 2 * n;               // key read + counter read per element
    c.arithmetic += n;              // counter increments
    c.writes += n;                  // counter write-back
    c.reads += range;               // emit pass reads every counter
    c.writes += n;                  // emitted values
    c.moves += n;

    std::map<int, int> tally;
    for (int v : input) {
        if (v < 0 || v > value_max)
            throw std::invalid_argument("counting sort key outside [0, value_max]");
        ++tally[v];
    }
    auto out = run.values.begin();
    for (const auto& [value, count] : tally) out = std::fill_n(out, count, value);
    return run;
}

SortRun run_sort(const AlgorithmId& algo, const SortInstance& instance) {
    if (algo == kQuick) return quick_sort(instance.values);
    if (algo == kInsertion) return insertion_sort(instance.values);
    if (algo == kCounting) return counting_sort(instance.values, kind_value_max(instance.kind));
    throw std::invalid_argument("unknown sorting algorithm: " + algo.value);
}

PhaseSchedule::PhaseSchedule(std::vector<Phase> phases) : phases_(std::move(phases)) {
    if (phases_.empty()) throw std::invalid_argument("phase schedule must not be empty");
    for (std::size_t i = 0; i < phases_.size(); ++i) {
        if (phases_[i].begin >= phases_[i].end)
            throw std::invalid_argument("phase span must be non-empty");
        if (i > 0 && phases_[i].begin != phases_[i - 1].end)
            throw std::invalid_argument("phase spans must be contiguous");
    }
}

DataKind PhaseSchedule::kind_at(int episode) const {
    for (const auto& p : phases_)
        if (episode >= p.begin && episode < p.end) return p.kind;
    return phases_.back().kind;
}

PhaseSchedule default_schedule(int episodes, std::mt19937_64& rng) {
    std::vector<DataKind> kinds{DataKind::RandL, DataKind::RandS, DataKind::AlmoS};
    std::shuffle(kinds.begin(), kinds.end(), rng);
    if (episodes < 3) return PhaseSchedule({{kinds[0], 0, std::max(1, episodes)}});
    const int span = episodes / 3;
    return PhaseSchedule({{kinds[0], 0, span},
                          {kinds[1], span, 2 * span},
                          {kinds[2], 2 * span, episodes}});
}

SortingExecutor::SortingExecutor(PhaseSchedule schedule, std::uint64_t instance_seed)
    : schedule_(std::move(schedule)), seed_(instance_seed) {}

InstanceOutcome SortingExecutor::run_instance(const AlgorithmId& algo, int episode) {
    const DataKind kind = schedule_.kind_at(episode);
    const SortInstance instance =
        generate_instance(kind, derive_seed(seed_, static_cast<std::uint64_t>(episode)));
    const SortRun run = run_sort(algo, instance);
    return {raw_credit(run.counters), to_string(kind)};
}

} // namespace yielon::sorting
