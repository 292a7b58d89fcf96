#pragma once

// Deterministic action-level transition of the whole cell: human, sensors,
// stop chain and robot, observed after every substep.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hazardforge/cell.hpp"
#include "hazardforge/human_model.hpp"
#include "hazardforge/safety.hpp"

namespace hazardforge {

class SimulationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct WorldState {
    std::int64_t tick = 0;  // substeps since s0
    double t = 0.0;         // tick * dt
    HumanState human;
    RobotState robot;
    std::vector<std::int64_t> pending_signals;  // arrival ticks, ascending
    std::int64_t last_detection_tick = -1;
    int step_count = 0;
    bool terminal_unsafe = false;

    friend bool operator==(const WorldState&, const WorldState&) = default;
};

struct SubstepRecord {
    double t = 0.0;
    int step = 0;     // 0-based position of the action in the sequence
    int substep = 0;  // 0 .. substeps_per_action-1
    HumanState human;
    RobotState robot;
    std::vector<RobotPoint> points;
    std::vector<bool> detections;
    SafetyObservation obs;
    double c_s = 0.0;

    friend bool operator==(const SubstepRecord&, const SubstepRecord&) = default;
};

struct StepInfo {
    SafetyObservation obs;  // at action end
    double reward = 0.0;
    bool unsafe_hit = false;
    std::vector<SubstepRecord> substep_trace;

    friend bool operator==(const StepInfo&, const StepInfo&) = default;
};

struct RewardConfig {
    int episode_len = 8;
    double terminal_bonus = 0.0;
};

WorldState init(const Scenario& scenario);

/// Executes one action. k for the reward is step_count + 1, counted from s0.
/// Throws SimulationError when `s` is already terminal or k exceeds the episode length.
std::pair<WorldState, StepInfo> step_action(const WorldState& s, Action a, const Scenario& scenario,
                                            const RewardConfig& reward = {});

inline WorldState snapshot(const WorldState& s) { return s; }
inline WorldState restore(const WorldState& snap) { return snap; }

/// Observation of the initial state, useful before any action is taken.
SafetyObservation observe_state(const WorldState& s, const Scenario& scenario);

}  // namespace hazardforge
