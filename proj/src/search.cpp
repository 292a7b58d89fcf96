#include "hazardforge/search.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hazardforge {

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Random: return "random";
        case Algorithm::Mcts1: return "mcts1";
        case Algorithm::Mcts2: return "mcts2";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view text) {
    if (text == "random") {
        return Algorithm::Random;
    }
    if (text == "mcts1") {
        return Algorithm::Mcts1;
    }
    if (text == "mcts2") {
        return Algorithm::Mcts2;
    }
    throw std::invalid_argument("unknown algorithm \"" + std::string(text) + "\" (random|mcts1|mcts2)");
}

void validate(const SearchConfig& cfg) {
    if (cfg.max_episodes < 1) {
        throw std::invalid_argument("max_episodes must be at least 1");
    }
    if (cfg.episode_len < 1) {
        throw std::invalid_argument("episode_len must be at least 1");
    }
    if (!(cfg.c_uct >= 0.0) || !std::isfinite(cfg.c_uct)) {
        throw std::invalid_argument("c_uct must be finite and non-negative");
    }
    if (cfg.commit_interval < 1) {
        throw std::invalid_argument("commit_interval must be at least 1");
    }
    if (!std::isfinite(cfg.terminal_bonus)) {
        throw std::invalid_argument("terminal_bonus must be finite");
    }
}

EpisodeResult run_episode(const WorldState& root, const ActionPolicy& policy, const Scenario& scenario, int n,
                          double terminal_bonus) {
    if (root.terminal_unsafe) {
        throw SimulationError("episode root is terminal");
    }
    const RewardConfig reward{n, terminal_bonus};
    EpisodeResult ep;
    WorldState state = root;
    while (state.step_count < n) {
        const Action a = policy(state);
        auto [next, info] = step_action(state, a, scenario, reward);
        ep.actions.push_back(a);
        ep.rewards.push_back(info.reward);
        ep.ret += info.reward;
        state = std::move(next);
        if (info.unsafe_hit) {
            ep.found_unsafe = true;
            ep.unsafe_step = static_cast<int>(ep.actions.size()) - 1;
            break;
        }
    }
    return ep;
}

SearchOutcome random_search(const Scenario& scenario, const SearchConfig& cfg) {
    validate(cfg);
    Rng rng(cfg.seed);
    const WorldState s0 = init(scenario);
    const ActionPolicy uniform = [&rng](const WorldState&) { return Action::from_index(rng.uniform_int(kActionCount)); };
    SearchOutcome out;
    for (int e = 0; e < cfg.max_episodes; ++e) {
        auto ep = run_episode(s0, uniform, scenario, cfg.episode_len, cfg.terminal_bonus);
        out.episodes_used = e + 1;
        out.episode_log.push_back({e, ep.ret, ep.found_unsafe});
        if (ep.found_unsafe) {
            out.found = true;
            out.hazard_actions = std::move(ep.actions);
            break;
        }
    }
    return out;
}

WorldEnv::Step WorldEnv::step(const WorldState& s, int action) const {
    auto [next, info] = step_action(s, Action::from_index(action), *scenario_, reward_);
    return {std::move(next), info.reward, info.unsafe_hit};
}

MctsRunner::MctsRunner(const Scenario& scenario, const SearchConfig& cfg)
    : cfg_(cfg),
      env_(scenario, RewardConfig{cfg.episode_len, cfg.terminal_bonus}),
      rng_(cfg.seed),
      tree_(env_, init(scenario), 0, cfg.c_uct) {
    validate(cfg_);
}

EpisodeResult MctsRunner::run_one() {
    auto raw = tree_.run_episode(rng_);
    ++episodes_;
    EpisodeResult ep;
    ep.actions.reserve(raw.actions.size());
    for (int a : raw.actions) {
        ep.actions.push_back(Action::from_index(a));
    }
    ep.rewards = std::move(raw.rewards);
    ep.ret = raw.ret;
    ep.found_unsafe = raw.found_unsafe;
    if (ep.found_unsafe) {
        ep.unsafe_step = static_cast<int>(ep.actions.size()) - 1;
    }
    if (cfg_.algorithm == Algorithm::Mcts2 && episodes_ % cfg_.commit_interval == 0 &&
        tree_.root().depth < cfg_.episode_len - 1) {
        const int committed = tree_.commit();
        if (committed >= 0) {
            committed_.push_back(Action::from_index(committed));
        }
    }
    return ep;
}

SearchOutcome mcts_search(const Scenario& scenario, const SearchConfig& cfg) {
    validate(cfg);
    if (cfg.algorithm == Algorithm::Random) {
        throw std::invalid_argument("mcts_search requires mcts1 or mcts2");
    }
    MctsRunner runner(scenario, cfg);
    SearchOutcome out;
    for (int e = 0; e < cfg.max_episodes; ++e) {
        // The prefix in force while this episode runs.
        const std::vector<Action> prefix = runner.committed_prefix();
        auto ep = runner.run_one();
        out.episodes_used = e + 1;
        out.episode_log.push_back({e, ep.ret, ep.found_unsafe});
        if (ep.found_unsafe) {
            out.found = true;
            out.hazard_actions = prefix;
            out.hazard_actions.insert(out.hazard_actions.end(), ep.actions.begin(), ep.actions.end());
            break;
        }
    }
    out.committed_prefix = runner.committed_prefix();
    return out;
}

SearchOutcome search(const Scenario& scenario, const SearchConfig& cfg) {
    SearchOutcome out = cfg.algorithm == Algorithm::Random ? random_search(scenario, cfg) : mcts_search(scenario, cfg);
    if (out.found) {
        const auto steps = replay(scenario, out.hazard_actions, cfg.episode_len);
        if (steps.empty() || !steps.back().unsafe_hit) {
            throw std::logic_error("reported hazard did not replay to an unsafe state");
        }
    }
    return out;
}

std::vector<StepInfo> replay(const Scenario& scenario, const std::vector<Action>& actions, int episode_len) {
    if (actions.empty()) {
        throw std::invalid_argument("replay needs at least one action");
    }
    const RewardConfig reward{std::max(episode_len, static_cast<int>(actions.size())), 0.0};
    std::vector<StepInfo> out;
    out.reserve(actions.size());
    WorldState state = init(scenario);
    for (const auto& a : actions) {
        auto [next, info] = step_action(state, a, scenario, reward);
        state = std::move(next);
        out.push_back(std::move(info));
    }
    return out;
}

}  // namespace hazardforge
