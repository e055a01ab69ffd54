#pragma once

#include <stdexcept>
#include <string>

#include "yielon/yield.hpp"

namespace yielon {

struct InstanceOutcome {
    double raw_credit = 0.0; // nonnegative; zero is allowed and normalizes to zero
    std::string phase;       // data kind or world id, carried into the trace
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One executor per island. It owns whatever per-island state the task needs
// (randomizer schedule, world, learner tables) and runs the active algorithm
// on the next task instance. Throws DomainError on failure.
class DomainExecutor {
public:
    virtual ~DomainExecutor() = default;
    virtual InstanceOutcome run_instance(const AlgorithmId& algo, int episode) = 0;
};

} // namespace yielon
