#pragma once

// Hazard search: uniform random episodes, fixed-root UCT (MCTS1) and
// committing UCT (MCTS2), all maximizing the accumulated safety reward.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "hazardforge/cell.hpp"
#include "hazardforge/uct_tree.hpp"
#include "hazardforge/world.hpp"

namespace hazardforge {

enum class Algorithm : std::uint8_t { Random, Mcts1, Mcts2 };

std::string_view to_string(Algorithm a);
/// Accepts "random", "mcts1", "mcts2"; throws std::invalid_argument otherwise.
Algorithm parse_algorithm(std::string_view text);

struct SearchConfig {
    Algorithm algorithm = Algorithm::Mcts1;
    std::uint64_t seed = 1;
    int max_episodes = 200;
    int episode_len = 8;
    double c_uct = std::sqrt(2.0);
    int commit_interval = 25;
    double terminal_bonus = 0.0;
};

/// Throws std::invalid_argument naming the violated bound.
void validate(const SearchConfig& cfg);

struct EpisodeResult {
    std::vector<Action> actions;
    std::vector<double> rewards;
    double ret = 0.0;
    bool found_unsafe = false;
    std::optional<int> unsafe_step;  // index into actions
};

struct EpisodeLogEntry {
    int episode = 0;
    double ret = 0.0;
    bool found_unsafe = false;
    friend bool operator==(const EpisodeLogEntry&, const EpisodeLogEntry&) = default;
};

struct SearchOutcome {
    bool found = false;
    std::vector<Action> hazard_actions;  // full sequence from s0
    int episodes_used = 0;
    std::vector<EpisodeLogEntry> episode_log;
    std::vector<Action> committed_prefix;  // MCTS2 only
    friend bool operator==(const SearchOutcome&, const SearchOutcome&) = default;
};

/// Chooses the next action given the current state.
using ActionPolicy = std::function<Action(const WorldState&)>;

/// Runs actions from `root` until an unsafe state or until the state has taken
/// `n` actions counted from s0.
EpisodeResult run_episode(const WorldState& root, const ActionPolicy& policy, const Scenario& scenario, int n,
                          double terminal_bonus = 0.0);

SearchOutcome random_search(const Scenario& scenario, const SearchConfig& cfg);
SearchOutcome mcts_search(const Scenario& scenario, const SearchConfig& cfg);
/// Dispatches on cfg.algorithm and confirms every reported hazard by replay.
SearchOutcome search(const Scenario& scenario, const SearchConfig& cfg);

/// Deterministic re-execution from s0. Rewards use an episode length of
/// max(episode_len, actions.size()). Throws SimulationError when an action
/// follows an unsafe state.
std::vector<StepInfo> replay(const Scenario& scenario, const std::vector<Action>& actions, int episode_len = 8);

/// Adapts the simulator to the UctTree environment interface.
class WorldEnv {
public:
    using State = WorldState;
    struct Step {
        WorldState state;
        double reward = 0.0;
        bool unsafe = false;
    };

    WorldEnv(const Scenario& scenario, RewardConfig reward) : scenario_(&scenario), reward_(reward) {}

    Step step(const WorldState& s, int action) const;
    int action_count() const { return kActionCount; }
    int horizon() const { return reward_.episode_len; }

private:
    const Scenario* scenario_;
    RewardConfig reward_;
};

/// Step-wise MCTS driver, exposed for inspection of the tree between episodes.
class MctsRunner {
public:
    MctsRunner(const Scenario& scenario, const SearchConfig& cfg);
    MctsRunner(const MctsRunner&) = delete;
    MctsRunner& operator=(const MctsRunner&) = delete;

    /// Runs one episode (and an MCTS2 commitment when due).
    EpisodeResult run_one();

    const UctTree<WorldEnv>& tree() const { return tree_; }
    UctTree<WorldEnv>& tree() { return tree_; }
    const std::vector<Action>& committed_prefix() const { return committed_; }
    int episodes() const { return episodes_; }

private:
    SearchConfig cfg_;
    WorldEnv env_;
    Rng rng_;
    UctTree<WorldEnv> tree_;
    std::vector<Action> committed_;
    int episodes_ = 0;
};

}  // namespace hazardforge
