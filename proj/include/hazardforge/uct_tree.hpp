#pragma once

// Discrete UCT over a deterministic episodic environment.
//
// An Env provides:
//   using State = ...;                       // value type
//   struct Step { State state; double reward; bool unsafe; };
//   Step step(const State&, int action) const;
//   int action_count() const;
//   int horizon() const;                     // absolute episode length n
//
// Node depth is absolute (counted from the initial state), so a tree whose root
// has been committed forward keeps valid per-edge rewards.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "hazardforge/rng.hpp"

namespace hazardforge {

template <class Env>
class UctTree {
public:
    using State = typename Env::State;

    struct Node;

    struct Edge {
        int action = 0;
        int visits = 0;
        double mean = 0.0;    // running mean of backed-up returns
        double reward = 0.0;  // immediate reward of taking the action
        std::unique_ptr<Node> child;
    };

    struct Node {
        State state;
        int depth = 0;
        int visits = 0;
        bool terminal = false;  // unsafe state reached
        std::vector<Edge> edges;
        std::vector<int> untried;

        const Edge* find(int action) const {
            for (const auto& e : edges) {
                if (e.action == action) {
                    return &e;
                }
            }
            return nullptr;
        }
    };

    struct Episode {
        std::vector<int> actions;
        std::vector<double> rewards;
        double ret = 0.0;
        bool found_unsafe = false;
    };

    /// Called after each backup with the traversed edges (root first) and the return.
    using BackupObserver = std::function<void(const std::vector<const Edge*>&, double)>;

    UctTree(const Env& env, State root_state, int root_depth, double c_uct)
        : env_(&env), c_uct_(c_uct), root_(make_node(std::move(root_state), root_depth, false)) {}

    const Node& root() const { return *root_; }
    double min_return() const { return min_return_; }
    double max_return() const { return max_return_; }
    void set_backup_observer(BackupObserver obs) { observer_ = std::move(obs); }

    double normalized(double q) const {
        const double span = max_return_ - min_return_;
        if (!(span > 0.0)) {
            return 0.5;
        }
        return (q - min_return_) / span;
    }

    double ucb(const Node& parent, const Edge& e) const {
        return normalized(e.mean) +
               c_uct_ * std::sqrt(std::log(static_cast<double>(parent.visits)) / static_cast<double>(e.visits));
    }

    Episode run_episode(Rng& rng) {
        Episode ep;
        std::vector<Edge*> path;
        Node* node = root_.get();
        bool expanded = false;
        while (!node->terminal && node->depth < env_->horizon()) {
            if (!node->untried.empty()) {
                const auto pick = static_cast<std::size_t>(rng.uniform_int(static_cast<int>(node->untried.size())));
                const int action = node->untried[pick];
                node->untried.erase(node->untried.begin() + static_cast<std::ptrdiff_t>(pick));
                auto step = env_->step(node->state, action);
                Edge edge;
                edge.action = action;
                edge.reward = step.reward;
                edge.child = make_node(std::move(step.state), node->depth + 1, step.unsafe);
                node->edges.push_back(std::move(edge));
                Edge* e = &node->edges.back();
                path.push_back(e);
                ep.actions.push_back(action);
                ep.rewards.push_back(e->reward);
                ep.found_unsafe = e->child->terminal;
                node = e->child.get();
                expanded = true;
                break;
            }
            Edge* best = select(*node);
            path.push_back(best);
            ep.actions.push_back(best->action);
            ep.rewards.push_back(best->reward);
            ep.found_unsafe = best->child->terminal;
            node = best->child.get();
        }
        if (expanded && !node->terminal && node->depth < env_->horizon()) {
            State state = node->state;
            for (int depth = node->depth; depth < env_->horizon(); ++depth) {
                const int action = rng.uniform_int(env_->action_count());
                auto step = env_->step(state, action);
                ep.actions.push_back(action);
                ep.rewards.push_back(step.reward);
                state = std::move(step.state);
                if (step.unsafe) {
                    ep.found_unsafe = true;
                    break;
                }
            }
        }
        for (double r : ep.rewards) {
            ep.ret += r;
        }
        backup(path, ep.ret);
        return ep;
    }

    /// Replaces the root by its most visited child (ties: higher mean, then lower
    /// action index). Returns the committed action, or -1 if the root has no child.
    int commit() {
        Edge* best = nullptr;
        for (auto& e : root_->edges) {
            if (e.child->terminal) {
                continue;
            }
            if (best == nullptr || e.visits > best->visits ||
                (e.visits == best->visits &&
                 (e.mean > best->mean || (e.mean == best->mean && e.action < best->action)))) {
                best = &e;
            }
        }
        if (best == nullptr) {
            return -1;
        }
        const int action = best->action;
        std::unique_ptr<Node> child = std::move(best->child);
        root_ = std::move(child);
        return action;
    }

private:
    std::unique_ptr<Node> make_node(State state, int depth, bool terminal) const {
        auto n = std::make_unique<Node>();
        n->state = std::move(state);
        n->depth = depth;
        n->terminal = terminal;
        if (!terminal && depth < env_->horizon()) {
            n->untried.resize(static_cast<std::size_t>(env_->action_count()));
            for (int a = 0; a < env_->action_count(); ++a) {
                n->untried[static_cast<std::size_t>(a)] = a;
            }
            n->edges.reserve(static_cast<std::size_t>(env_->action_count()));
        }
        return n;
    }

    Edge* select(Node& node) {
        Edge* best = nullptr;
        double best_score = -std::numeric_limits<double>::infinity();
        for (auto& e : node.edges) {
            const double score = ucb(node, e);
            if (best == nullptr || score > best_score || (score == best_score && e.action < best->action)) {
                best = &e;
                best_score = score;
            }
        }
        return best;
    }

    void backup(const std::vector<Edge*>& path, double ret) {
        min_return_ = std::min(min_return_, ret);
        max_return_ = std::max(max_return_, ret);
        root_->visits += 1;
        for (Edge* e : path) {
            e->visits += 1;
            e->mean += (ret - e->mean) / static_cast<double>(e->visits);
            e->child->visits += 1;
        }
        if (observer_) {
            observer_(std::vector<const Edge*>(path.begin(), path.end()), ret);
        }
    }

    const Env* env_;
    double c_uct_;
    std::unique_ptr<Node> root_;
    double min_return_ = std::numeric_limits<double>::infinity();
    double max_return_ = -std::numeric_limits<double>::infinity();
    BackupObserver observer_;
};

}  // namespace hazardforge
