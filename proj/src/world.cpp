#include "hazardforge/world.hpp"

#include <algorithm>
#include <cmath>

namespace hazardforge {

namespace {

std::int64_t response_ticks(double response_time, double dt) {
    return static_cast<std::int64_t>(std::ceil(response_time / dt - kGeomEps));
}

}  // namespace

WorldState init(const Scenario& scenario) {
    WorldState s;
    s.human = scenario.human_start();
    return s;
}

SafetyObservation observe_state(const WorldState& s, const Scenario& scenario) {
    return observe(s.human, s.robot, scenario);
}

std::pair<WorldState, StepInfo> step_action(const WorldState& s, Action a, const Scenario& scenario,
                                            const RewardConfig& reward) {
    if (s.terminal_unsafe) {
        throw SimulationError("cannot step a terminal (unsafe) state; restore a snapshot first");
    }
    const int k = s.step_count + 1;
    if (k > reward.episode_len) {
        throw SimulationError("action " + std::to_string(k) + " exceeds the episode length");
    }
    const double dt = scenario.dt();
    const int substeps = scenario.substeps_per_action();
    const auto& params = scenario.human_params();

    WorldState next = s;
    StepInfo info;
    info.substep_trace.reserve(static_cast<std::size_t>(substeps));
    bool frozen = false;

    for (int sub = 0; sub < substeps; ++sub) {
        const std::int64_t tick_before = next.tick;
        next.tick += 1;
        next.t = static_cast<double>(next.tick) * dt;
        if (frozen) {
            SubstepRecord rec = info.substep_trace.back();
            rec.t = next.t;
            rec.substep = sub;
            info.substep_trace.push_back(std::move(rec));
            continue;
        }

        // (1) human kinematics
        const HumanState prev = next.human;
        next.human = substep_human(prev, a, dt, scenario.walk_blockers(), sub, substeps, params);

        // (2) sensing and signal scheduling
        SubstepRecord rec;
        rec.detections = sense(scenario.sensors(), prev, next.human, params);
        for (std::size_t i = 0; i < rec.detections.size(); ++i) {
            if (!rec.detections[i]) {
                continue;
            }
            const auto arrival = next.tick + response_ticks(scenario.sensors()[i].response_time, dt);
            next.pending_signals.insert(
                std::upper_bound(next.pending_signals.begin(), next.pending_signals.end(), arrival), arrival);
            next.last_detection_tick = next.tick;
        }
        if (next.robot.mode == RobotMode::Running && !next.pending_signals.empty()) {
            next.robot.mode = RobotMode::StoppingPending;
            next.robot.pending_arrival = static_cast<double>(next.pending_signals.front()) * dt;
        }

        // (3) robot, consuming signals that arrived by the start of this substep
        const auto first_unarrived =
            std::upper_bound(next.pending_signals.begin(), next.pending_signals.end(), tick_before);
        const bool arrived = first_unarrived != next.pending_signals.begin();
        next.pending_signals.erase(next.pending_signals.begin(), first_unarrived);
        next.robot = step_robot(next.robot, scenario.robot(), dt, arrived);
        if (const auto* resume = std::get_if<AutoResume>(&scenario.resume_policy());
            resume != nullptr && next.robot.mode == RobotMode::Stopped && next.pending_signals.empty() &&
            static_cast<double>(next.tick - next.last_detection_tick) * dt >= resume->clear_delay - kGeomEps) {
            next.robot.mode = RobotMode::Running;
            next.robot.speed_factor = 1.0;
            next.robot.decel_elapsed = 0.0;
        }

        // (4) observation
        rec.obs = observe(next.human, next.robot, scenario);
        rec.t = next.t;
        rec.step = s.step_count;
        rec.substep = sub;
        rec.human = next.human;
        rec.robot = next.robot;
        rec.points = robot_points(next.robot, scenario.robot());
        rec.c_s = safety_index(rec.obs.d_hr, rec.obs.v_r);
        if (rec.obs.unsafe) {
            next.terminal_unsafe = true;
            info.unsafe_hit = true;
            frozen = true;
        }
        info.substep_trace.push_back(std::move(rec));
    }

    next.step_count = k;
    info.obs = info.substep_trace.back().obs;
    info.reward = step_reward(info.obs, k, reward.episode_len, reward.terminal_bonus);
    return {std::move(next), std::move(info)};
}

}  // namespace hazardforge
