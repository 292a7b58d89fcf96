#include "hazardforge/safety.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hazardforge {

SafetyObservation observe(const HumanState& h, const RobotState& r, const Scenario& scenario) {
    SafetyObservation obs;
    obs.d_hr = std::numeric_limits<double>::infinity();
    const auto& params = scenario.human_params();
    for (const auto& point : robot_points(r, scenario.robot())) {
        obs.d_hr = std::min(obs.d_hr, reach_distance(h, point.position, params));
        obs.v_r = std::max(obs.v_r, point.speed);
        if (!obs.contact && reach_contains(h, point.position, scenario.walls(), params)) {
            obs.contact = true;
        }
    }
    obs.unsafe = obs.contact && obs.v_r > 0.0;
    return obs;
}

double safety_index(double d_hr, double v_r) { return (d_hr * d_hr + 1.0) * std::exp(-v_r); }

double step_reward(const SafetyObservation& obs, int k, int n, double terminal_bonus) {
    if (k < 1 || k > n) {
        throw std::invalid_argument("step index must lie in [1, n]");
    }
    const double c_s = safety_index(obs.d_hr, obs.v_r);
    double reward = (k < n || obs.unsafe) ? 1.0 / c_s : -c_s;
    if (obs.unsafe) {
        reward += terminal_bonus;
    }
    return reward;
}

}  // namespace hazardforge
