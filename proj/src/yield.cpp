#include "yielon/yield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace yielon {

void YieldParams::validate() const {
    auto fail = [](const char* field, const char* why) {
        throw std::invalid_argument(std::string("YieldParams.") + field + ": " + why);
    };
    if (!(upsilon_max > 0.0)) fail("upsilon_max", "must be positive");
    if (!(upsilon_min > 0.0)) fail("upsilon_min", "must be positive");
    if (!(upsilon_min < upsilon_initial)) fail("upsilon_min", "must be below upsilon_initial");
    if (!(upsilon_initial <= upsilon_max)) fail("upsilon_initial", "must not exceed upsilon_max");
    if (window_size < 2) fail("window_size", "must be at least 2");
    if (!(saturation_top_up > 0.0)) fail("saturation_top_up", "must be positive");
    if (min_norm_credit < 0.0 || min_norm_credit > 100.0) fail("min_norm_credit", "must lie in [0, 100]");
    if (!(epsilon > 0.0)) fail("epsilon", "must be positive");
    if (sigma_tol < 0.0) fail("sigma_tol", "must be nonnegative");
    if (!(g_island_gap > 0.0)) fail("g_island_gap", "must be positive");
}

CreditWindow::CreditWindow(int capacity) : capacity_(capacity) {
    if (capacity < 2) throw std::invalid_argument("CreditWindow capacity must be at least 2");
}

void CreditWindow::push(double normalized_credit) {
    if (normalized_credit < 0.0 || normalized_credit > 100.0)
        throw std::invalid_argument("normalized credit outside [0, 100]");
    entries_.push_back(normalized_credit);
    if (static_cast<int>(entries_.size()) > capacity_) entries_.pop_front();
}

double NormalizationState::normalize(double raw, const AlgorithmId& algo) {
    if (!(raw > 0.0)) throw std::invalid_argument("raw credit must be positive");
    auto it = max_raw_.find(algo);
    if (it == max_raw_.end()) {
        max_raw_.emplace(algo, raw);
        return 100.0;
    }
    if (raw > it->second) it->second = raw;
    return raw / it->second * 100.0;
}

std::optional<double> NormalizationState::running_max(const AlgorithmId& algo) const {
    auto it = max_raw_.find(algo);
    if (it == max_raw_.end()) return std::nullopt;
    return it->second;
}

std::optional<double> squeezing_factor(const CreditWindow& window) {
    const auto& e = window.entries();
    if (e.size() < 2) return std::nullopt;
    return (e.back() - e.front()) / static_cast<double>(e.size() - 1);
}

Yielory update_yielons(const Yielory& yielory, double sigma, const YieldParams& params,
                       bool saturated_branch) {
    const double current = yielory.value();
    const double torque = saturated_branch ? params.saturation_top_up : sigma;
    double next = current + torque * (current / params.upsilon_max);
    next = std::clamp(next, 0.0, params.upsilon_max);
    return Yielory::with_value(yielory, next);
}

const char* to_string(DecisionKind kind) {
    switch (kind) {
        case DecisionKind::Exploit: return "exploit";
        case DecisionKind::ExploitSaturated: return "exploit_saturated";
        case DecisionKind::IntrinsicExplore: return "intrinsic";
        case DecisionKind::ExtrinsicExplore: return "extrinsic";
    }
    return "exploit";
}

DecideResult decide(CreditWindow& window, const Yielory& yielory, double c_norm,
                    const std::optional<CiaBest>& cia_best, const AlgorithmId& current_algo,
                    const YieldParams& params) {
    DecideResult result;
    result.sigma = squeezing_factor(window);
    if (!result.sigma) {
        result.decision.kind = DecisionKind::Exploit;
        result.yielory = yielory;
        result.yielons_before_reset = yielory.value();
        return result;
    }

    const double sigma = *result.sigma;
    bool explored = false;

    if (std::abs(sigma) > params.sigma_tol) {
        result.decision.kind = DecisionKind::Exploit;
        result.yielory = update_yielons(yielory, sigma, params, false);
    } else if (delta_test(c_norm, params) >= 0.0) {
        result.decision.kind = DecisionKind::ExploitSaturated;
        result.yielory = update_yielons(yielory, sigma, params, true);
    } else {
        // Flat and unsatisfying: consult the registry's best. Without data,
        // or when the best is local in algorithm or Yielon terms, explore
        // intrinsically; otherwise adopt the archipelago best.
        const double current = yielory.value();
        if (!cia_best || cia_best->algo == current_algo ||
            std::abs(cia_best->yielons - current) < params.epsilon) {
            result.decision.kind = DecisionKind::IntrinsicExplore;
        } else {
            result.decision.kind = DecisionKind::ExtrinsicExplore;
            result.decision.target = cia_best->algo;
        }
        result.yielons_before_reset = current;
        result.decision.reset = true;
        result.yielory = Yielory::with_value(yielory, params.upsilon_initial);
        window.clear();
        explored = true;
    }

    if (!explored) {
        result.yielons_before_reset = result.yielory.value();
        if (result.yielons_before_reset < params.upsilon_min) {
            result.decision.kind = DecisionKind::IntrinsicExplore;
            result.decision.target.reset();
            result.decision.reset = true;
            result.yielory = Yielory::with_value(result.yielory, params.upsilon_initial);
            window.clear();
        }
    }
    return result;
}

} // namespace yielon
