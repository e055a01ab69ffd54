#pragma once

// Gridworld obstacle avoidance: battery-limited episodes over a static
// random obstacle field, learned by six tabular RL configurations.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "yielon/domain.hpp"
#include "yielon/yield.hpp"

namespace yielon::grid {

inline constexpr int kStates = 16; // 4-bit occupancy of the N/E/S/W neighbours
inline constexpr int kActions = 4; // 0=N 1=E 2=S 3=W

enum class LearnerRule { QLearning, Sarsa, DoubleQ };

struct LearnerSpec {
    LearnerRule rule = LearnerRule::QLearning;
    double alpha = 0.1;
};

// The six repertoire entries: each rule at learning rates 0.1 and 0.7.
std::vector<AlgorithmId> all_learners();
std::optional<LearnerSpec> learner_spec(const AlgorithmId& algo);
AlgorithmId learner_id(LearnerRule rule, double alpha);

struct WorldSpec {
    int width = 20;
    int height = 20;
    int obstacles = 30;

    friend bool operator==(const WorldSpec&, const WorldSpec&) = default;
};

class GridWorld {
public:
    GridWorld(const WorldSpec& spec, std::uint64_t seed);

    int width() const { return spec_.width; }
    int height() const { return spec_.height; }
    // Border cells count as obstacles.
    bool blocked(int x, int y) const;
    int robot_x() const { return robot_x_; }
    int robot_y() const { return robot_y_; }

    int perceive() const; // occupancy bitmask of the four neighbours
    // Attempts the move; on collision the position is unchanged.
    bool try_move(int action);
    // Returns the robot to the cell it was generated on.
    void reset_robot();

    std::string dump() const; // '#' obstacle, '.' free, 'R' robot

private:
    WorldSpec spec_;
    std::vector<std::uint8_t> obstacle_;
    int robot_x_ = 1;
    int robot_y_ = 1;
    int home_x_ = 1;
    int home_y_ = 1;
};

using QTable = std::array<std::array<double, kActions>, kStates>;

struct Learner {
    LearnerRule rule = LearnerRule::QLearning;
    double alpha = 0.1;
    QTable q1{}; // zero-initialized
    QTable q2{}; // second estimator, DoubleQ only
};

void q_update(QTable& q, int s, int a, double r, int s_next, double alpha, double gamma);
void sarsa_update(QTable& q, int s, int a, double r, int s_next, int a_next, double alpha,
                  double gamma);
// Updates `target` bootstrapping from `other`; the caller's coin flip picks
// which table plays which role.
void double_q_update(QTable& target, const QTable& other, int s, int a, double r, int s_next,
                     double alpha, double gamma);

struct EpisodeParams {
    int actions = 40;        // 100% battery / 2.5% per action
    int streak_length = 10;  // collision-free actions per credited streak
    double battery_drain = 2.5;
    double epsilon = 0.1;
    double gamma = 0.9;
    double reward_free = 1.0;
    double reward_collision = -10.0;
};

struct RobotState {
    double battery = 100.0;
    int streak = 0;
};

struct StepTrace {
    int action = 0;
    bool moved = false;
    int x = 0; // position after the step
    int y = 0;
};

struct EpisodeResult {
    double raw_credit = 0.0; // 10 per completed streak
    int completed_streaks = 0;
    int collisions = 0;
    double battery = 0.0; // at episode end
    std::vector<StepTrace> steps;
};

EpisodeResult run_episode(Learner& learner, GridWorld& world, std::mt19937_64& rng,
                          const EpisodeParams& params = {});

class GridworldExecutor : public DomainExecutor {
public:
    GridworldExecutor(const WorldSpec& spec, std::uint64_t world_seed, std::uint64_t episode_seed,
                      std::string label);

    InstanceOutcome run_instance(const AlgorithmId& algo, int episode) override;

    const GridWorld& world() const { return world_; }
    // nullptr until the algorithm has run here; tables persist while inactive
    const Learner* learner(const AlgorithmId& algo) const;

private:
    GridWorld world_;
    std::map<AlgorithmId, Learner> learners_; // tables persist while inactive
    std::mt19937_64 rng_;
    std::string label_;
};

} // namespace yielon::grid
