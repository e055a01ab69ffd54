#include "yielon/gridworld.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "yielon/rng.hpp"

namespace yielon::grid {

namespace {

const char* rule_tag(LearnerRule rule) {
    switch (rule) {
        case LearnerRule::QLearning: return "qlearning";
        case LearnerRule::Sarsa: return "sarsa";
        case LearnerRule::DoubleQ: return "doubleq";
    }
    return "qlearning";
}

std::string alpha_tag(double alpha) {
    // the two repertoire rates only
    return alpha == 0.7 ? "a0.7" : "a0.1";
}

} // namespace

AlgorithmId learner_id(LearnerRule rule, double alpha) {
    return AlgorithmId{std::string("rl/") + rule_tag(rule) + "/" + alpha_tag(alpha)};
}

std::vector<AlgorithmId> all_learners() {
    std::vector<AlgorithmId> ids;
    for (LearnerRule rule : {LearnerRule::QLearning, LearnerRule::Sarsa, LearnerRule::DoubleQ})
        for (double alpha : {0.1, 0.7}) ids.push_back(learner_id(rule, alpha));
    return ids;
}

std::optional<LearnerSpec> learner_spec(const AlgorithmId& algo) {
    for (LearnerRule rule : {LearnerRule::QLearning, LearnerRule::Sarsa, LearnerRule::DoubleQ})
        for (double alpha : {0.1, 0.7})
            if (learner_id(rule, alpha) == algo) return LearnerSpec{rule, alpha};
    return std::nullopt;
}

GridWorld::GridWorld(const WorldSpec& spec, std::uint64_t seed) : spec_(spec) {
    if (spec.width < 3 || spec.height < 3)
        throw std::invalid_argument("grid must be at least 3x3");
    obstacle_.assign(static_cast<std::size_t>(spec.width * spec.height), 0);

    std::vector<int> interior;
    for (int y = 1; y < spec.height - 1; ++y)
        for (int x = 1; x < spec.width - 1; ++x) interior.push_back(y * spec.width + x);
    std::mt19937_64 rng(seed);
    std::shuffle(interior.begin(), interior.end(), rng);

    const int count = std::min<int>(spec.obstacles, static_cast<int>(interior.size()) - 1);
    for (int i = 0; i < count; ++i) obstacle_[static_cast<std::size_t>(interior[i])] = 1;
    const int start = interior[static_cast<std::size_t>(count)]; // first unshaded cell
    home_x_ = robot_x_ = start % spec.width;
    home_y_ = robot_y_ = start / spec.width;
}

void GridWorld::reset_robot() {
    robot_x_ = home_x_;
    robot_y_ = home_y_;
}

bool GridWorld::blocked(int x, int y) const {
    if (x <= 0 || y <= 0 || x >= spec_.width - 1 || y >= spec_.height - 1) return true;
    return obstacle_[static_cast<std::size_t>(y * spec_.width + x)] != 0;
}

int GridWorld::perceive() const {
    int state = 0;
    if (blocked(robot_x_, robot_y_ - 1)) state |= 1; // N
    if (blocked(robot_x_ + 1, robot_y_)) state |= 2; // E
    if (blocked(robot_x_, robot_y_ + 1)) state |= 4; // S
    if (blocked(robot_x_ - 1, robot_y_)) state |= 8; // W
    return state;
}

bool GridWorld::try_move(int action) {
    static constexpr int dx[kActions] = {0, 1, 0, -1};
    static constexpr int dy[kActions] = {-1, 0, 1, 0};
    const int nx = robot_x_ + dx[action];
    const int ny = robot_y_ + dy[action];
    if (blocked(nx, ny)) return false;
    robot_x_ = nx;
    robot_y_ = ny;
    return true;
}

std::string GridWorld::dump() const {
    std::string out;
    out.reserve(static_cast<std::size_t>((spec_.width + 1) * spec_.height));
    for (int y = 0; y < spec_.height; ++y) {
        for (int x = 0; x < spec_.width; ++x) {
            if (x == robot_x_ && y == robot_y_) out += 'R';
            else if (blocked(x, y)) out += '#';
            else out += '.';
        }
        out += '\n';
    }
    return out;
}

namespace {

// deterministic argmax, ties to the lowest action index
int greedy_action(const QTable& q, int s) {
    int best = 0;
    for (int a = 1; a < kActions; ++a)
        if (q[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] >
            q[static_cast<std::size_t>(s)][static_cast<std::size_t>(best)])
            best = a;
    return best;
}

// behaviour-policy argmax with uniform tie-breaking, so untrained states
// start as a random walk instead of a fixed march
template <typename Value>
int greedy_tiebreak(Value&& value, std::mt19937_64& rng) {
    double best = value(0);
    int count = 1;
    int pick = 0;
    for (int a = 1; a < kActions; ++a) {
        const double v = value(a);
        if (v > best) {
            best = v;
            count = 1;
            pick = a;
        } else if (v == best) {
            std::uniform_int_distribution<int> keep(0, count);
            if (keep(rng) == 0) pick = a;
            ++count;
        }
    }
    return pick;
}

int select_action(const Learner& learner, int s, std::mt19937_64& rng, double epsilon) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < epsilon) {
        std::uniform_int_distribution<int> any(0, kActions - 1);
        return any(rng);
    }
    if (learner.rule == LearnerRule::DoubleQ)
        return greedy_tiebreak(
            [&](int a) {
                return learner.q1[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] +
                       learner.q2[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
            },
            rng);
    return greedy_tiebreak(
        [&](int a) {
            return learner.q1[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
        },
        rng);
}

} // namespace

void q_update(QTable& q, int s, int a, double r, int s_next, double alpha, double gamma) {
    const double best_next =
        q[static_cast<std::size_t>(s_next)][static_cast<std::size_t>(greedy_action(q, s_next))];
    double& cell = q[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
    cell += alpha * (r + gamma * best_next - cell);
}

void sarsa_update(QTable& q, int s, int a, double r, int s_next, int a_next, double alpha,
                  double gamma) {
    const double next = q[static_cast<std::size_t>(s_next)][static_cast<std::size_t>(a_next)];
    double& cell = q[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
    cell += alpha * (r + gamma * next - cell);
}

void double_q_update(QTable& target, const QTable& other, int s, int a, double r, int s_next,
                     double alpha, double gamma) {
    const int pick = greedy_action(target, s_next);
    const double next = other[static_cast<std::size_t>(s_next)][static_cast<std::size_t>(pick)];
    double& cell = target[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
    cell += alpha * (r + gamma * next - cell);
}

EpisodeResult run_episode(Learner& learner, GridWorld& world, std::mt19937_64& rng,
                          const EpisodeParams& params) {
    EpisodeResult result;
    result.steps.reserve(static_cast<std::size_t>(params.actions));
    RobotState robot;
    std::uniform_int_distribution<int> table_coin(0, 1);

    int s = world.perceive();
    int a = select_action(learner, s, rng, params.epsilon);
    for (int step = 0; step < params.actions; ++step) {
        const bool moved = world.try_move(a);
        const double r = moved ? params.reward_free : params.reward_collision;
        if (moved) {
            if (++robot.streak == params.streak_length) {
                ++result.completed_streaks;
                robot.streak = 0;
            }
        } else {
            ++result.collisions;
            robot.streak = 0;
        }
        result.steps.push_back({a, moved, world.robot_x(), world.robot_y()});
        const int s_next = world.perceive();
        robot.battery -= params.battery_drain;

        switch (learner.rule) {
            case LearnerRule::QLearning:
                q_update(learner.q1, s, a, r, s_next, learner.alpha, params.gamma);
                a = select_action(learner, s_next, rng, params.epsilon);
                break;
            case LearnerRule::Sarsa: {
                const int a_next = select_action(learner, s_next, rng, params.epsilon);
                sarsa_update(learner.q1, s, a, r, s_next, a_next, learner.alpha, params.gamma);
                a = a_next;
                break;
            }
            case LearnerRule::DoubleQ:
                if (table_coin(rng) == 0)
                    double_q_update(learner.q1, learner.q2, s, a, r, s_next, learner.alpha,
                                    params.gamma);
                else
                    double_q_update(learner.q2, learner.q1, s, a, r, s_next, learner.alpha,
                                    params.gamma);
                a = select_action(learner, s_next, rng, params.epsilon);
                break;
        }
        s = s_next;
    }
    result.battery = robot.battery;
    result.raw_credit = 10.0 * result.completed_streaks;
    return result;
}

GridworldExecutor::GridworldExecutor(const WorldSpec& spec, std::uint64_t world_seed,
                                     std::uint64_t episode_seed, std::string label)
    : world_(spec, world_seed), rng_(episode_seed), label_(std::move(label)) {}

const Learner* GridworldExecutor::learner(const AlgorithmId& algo) const {
    const auto it = learners_.find(algo);
    return it == learners_.end() ? nullptr : &it->second;
}

InstanceOutcome GridworldExecutor::run_instance(const AlgorithmId& algo, int /*episode*/) {
    auto it = learners_.find(algo);
    if (it == learners_.end()) {
        const auto spec = learner_spec(algo);
        if (!spec) throw DomainError("unknown learner: " + algo.value);
        Learner fresh;
        fresh.rule = spec->rule;
        fresh.alpha = spec->alpha;
        it = learners_.emplace(algo, fresh).first;
    }
    world_.reset_robot(); // each episode starts from the home cell, recharged
    const EpisodeResult result = run_episode(it->second, world_, rng_);
    return {result.raw_credit, label_};
}

} // namespace yielon::grid
