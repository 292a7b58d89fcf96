#pragma once

// Risk metric, per-action reward and the unsafe-state predicate.

#include "hazardforge/cell.hpp"
#include "hazardforge/human_model.hpp"

namespace hazardforge {

struct SafetyObservation {
    double d_hr = 0.0;     // reach-to-robot gap, occlusion ignored (m)
    double v_r = 0.0;      // fastest robot point speed (m/s)
    bool contact = false;  // some robot point inside the occlusion-aware reach
    bool unsafe = false;   // contact while the robot moves

    friend bool operator==(const SafetyObservation&, const SafetyObservation&) = default;
};

SafetyObservation observe(const HumanState& h, const RobotState& r, const Scenario& scenario);

/// c_S = (d^2 + 1) * exp(-v), in SI numbers.
double safety_index(double d_hr, double v_r);

/// Reward of the k-th action (1-based) of an episode of length n:
///   1/c_S for k < n; -c_S at k = n when safe; 1/c_S at k = n when unsafe.
/// `terminal_bonus` is added whenever the observation is unsafe.
double step_reward(const SafetyObservation& obs, int k, int n, double terminal_bonus = 0.0);

}  // namespace hazardforge
