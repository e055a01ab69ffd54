#pragma once

// Latent-yield switching core: credit normalization, squeezing factor,
// Yielon dynamics and the per-instance exploit/explore decision.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>

namespace yielon {

struct AlgorithmId {
    std::string value;

    friend bool operator==(const AlgorithmId& a, const AlgorithmId& b) { return a.value == b.value; }
    friend bool operator!=(const AlgorithmId& a, const AlgorithmId& b) { return a.value != b.value; }
    friend bool operator<(const AlgorithmId& a, const AlgorithmId& b) { return a.value < b.value; }
};

struct YieldParams {
    double upsilon_max = 100.0;      // Yielory capacity
    double upsilon_min = 30.0;       // switch threshold
    double upsilon_initial = 60.0;   // post-switch reset level
    int window_size = 5;             // credit window capacity W
    double saturation_top_up = 0.05; // p, added (scaled) when performance saturates high
    double min_norm_credit = 80.0;   // acceptable normalized credit floor
    double epsilon = 10.0;           // Yielon-count closeness threshold
    // |sigma| at or below this counts as "flat". Instance-to-instance credit
    // jitter of a steadily performing algorithm sits around two to three
    // points on the 0-100 scale; a tighter tolerance keeps the saturation
    // branch unreachable.
    double sigma_tol = 2.5;
    double g_island_gap = 10.0;      // delta: mean-vs-G Yielon gap for the special draw

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// Sliding window of recent normalized credits. Oldest entry is evicted
// once the window is full.
class CreditWindow {
public:
    explicit CreditWindow(int capacity);

    void push(double normalized_credit);
    void clear() { entries_.clear(); }

    int capacity() const { return capacity_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::deque<double>& entries() const { return entries_; }

private:
    int capacity_;
    std::deque<double> entries_;
};

// Bounded store of Yielons. Reads are counted so that regimes which must
// never consult the Yielory can be checked for it.
class Yielory {
public:
    Yielory() = default;
    explicit Yielory(double initial) : current_(initial) {}

    double value() const {
        ++reads_;
        return current_;
    }
    std::uint64_t reads() const { return reads_; }

    static Yielory with_value(const Yielory& from, double v) {
        Yielory y = from;
        y.current_ = v;
        return y;
    }

private:
    double current_ = 0.0;
    mutable std::uint64_t reads_ = 0;
};

// Per-algorithm running maximum of raw credit seen by one agent.
class NormalizationState {
public:
    // Updates the running maximum with `raw` and returns raw / max * 100.
    // The best instance so far maps to exactly 100. Throws on raw <= 0.
    double normalize(double raw, const AlgorithmId& algo);

    std::optional<double> running_max(const AlgorithmId& algo) const;

private:
    std::map<AlgorithmId, double> max_raw_;
};

inline double normalize_credit(double raw, NormalizationState& state, const AlgorithmId& algo) {
    return state.normalize(raw, algo);
}

// Mean of consecutive differences over the window contents; algebraically
// (last - first) / (n - 1). Undefined below two entries.
std::optional<double> squeezing_factor(const CreditWindow& window);

// One Yielon update, clamped to [0, upsilon_max]. The saturated branch adds
// the top-up p instead of sigma.
Yielory update_yielons(const Yielory& yielory, double sigma, const YieldParams& params,
                       bool saturated_branch);

inline double delta_test(double c_norm, const YieldParams& params) {
    return c_norm - params.min_norm_credit;
}

struct CiaBest {
    AlgorithmId algo;
    double yielons = 0.0;
};

enum class DecisionKind { Exploit, ExploitSaturated, IntrinsicExplore, ExtrinsicExplore };

const char* to_string(DecisionKind kind);

struct SwitchDecision {
    DecisionKind kind = DecisionKind::Exploit;
    std::optional<AlgorithmId> target; // set for ExtrinsicExplore, distinct from current
    bool reset = false;                // Yielory was reset to upsilon_initial
};

struct DecideResult {
    SwitchDecision decision;
    Yielory yielory;                  // post-decision state
    double yielons_before_reset = 0.0; // post-update value before any reset
    std::optional<double> sigma;
};

// Per-instance switch decision. `c_norm` must already be pushed into the
// window. Exploration outcomes reset the Yielory to upsilon_initial and
// clear the window. With fewer than two window entries the step is plain
// exploitation with no Yielon update.
DecideResult decide(CreditWindow& window, const Yielory& yielory, double c_norm,
                    const std::optional<CiaBest>& cia_best, const AlgorithmId& current_algo,
                    const YieldParams& params);

} // namespace yielon
