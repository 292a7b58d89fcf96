#include "hazardforge/human_model.hpp"

#include <stdexcept>
#include <string>

namespace hazardforge {

namespace {

constexpr double kDegToRad = kPi / 180.0;

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(name) + " must be a positive finite number");
    }
}

}  // namespace

void validate(const HumanParams& p) {
    require_positive(p.body_height, "body_height");
    require_positive(p.upper_arm, "upper_arm");
    require_positive(p.lower_arm, "lower_arm");
    require_positive(p.hand, "hand");
    require_positive(p.walk_speed, "walk_speed");
    require_positive(p.max_forward_flexion, "max_forward_flexion");
    require_positive(p.max_lateral_flexion, "max_lateral_flexion");
    require_positive(p.footprint_radius, "footprint_radius");
    require_positive(p.torso_length, "torso_length");
    if (p.max_forward_flexion > 90.0) {
        throw std::invalid_argument("max_forward_flexion must not exceed 90 degrees");
    }
    if (p.max_lateral_flexion > 90.0) {
        throw std::invalid_argument("max_lateral_flexion must not exceed 90 degrees");
    }
}

std::array<Action, kActionCount> enumerate_actions() {
    std::array<Action, kActionCount> out{};
    for (int i = 0; i < kActionCount; ++i) {
        out[static_cast<std::size_t>(i)] = Action::from_index(i);
    }
    return out;
}

Action action_from_index(int index) {
    if (index < 0 || index >= kActionCount) {
        throw std::out_of_range("action index " + std::to_string(index) + " outside [0,30)");
    }
    return Action::from_index(index);
}

std::string_view to_string(WalkPrimitive w) {
    switch (w) {
        case WalkPrimitive::WalkForward: return "walk_forward";
        case WalkPrimitive::TurnLeft45: return "turn_left_45";
        case WalkPrimitive::TurnLeft90: return "turn_left_90";
        case WalkPrimitive::TurnRight45: return "turn_right_45";
        case WalkPrimitive::TurnRight90: return "turn_right_90";
    }
    return "?";
}

std::string_view to_string(BendTarget b) {
    switch (b) {
        case BendTarget::Upright: return "upright";
        case BendTarget::Forward: return "forward";
        case BendTarget::Left: return "left";
        case BendTarget::Right: return "right";
        case BendTarget::ForwardRight: return "forward_right";
        case BendTarget::ForwardLeft: return "forward_left";
    }
    return "?";
}

double turn_angle(WalkPrimitive w) {
    switch (w) {
        case WalkPrimitive::WalkForward: return 0.0;
        case WalkPrimitive::TurnLeft45: return kPi / 4.0;
        case WalkPrimitive::TurnLeft90: return kPi / 2.0;
        case WalkPrimitive::TurnRight45: return -kPi / 4.0;
        case WalkPrimitive::TurnRight90: return -kPi / 2.0;
    }
    return 0.0;
}

std::array<double, 2> bend_target_angles(BendTarget b, const HumanParams& p) {
    const double fwd = p.max_forward_flexion;
    const double lat = p.max_lateral_flexion;
    switch (b) {
        case BendTarget::Upright: return {0.0, 0.0};
        case BendTarget::Forward: return {fwd, 0.0};
        case BendTarget::Left: return {0.0, -lat};
        case BendTarget::Right: return {0.0, lat};
        case BendTarget::ForwardRight: return {fwd, lat};
        case BendTarget::ForwardLeft: return {fwd, -lat};
    }
    return {0.0, 0.0};
}

double normalize_angle(double radians) {
    double a = std::remainder(radians, 2.0 * kPi);  // [-pi, pi]
    if (a <= -kPi) {
        a += 2.0 * kPi;
    }
    return a;
}

HumanState substep_human(const HumanState& h, Action a, double dt, std::span<const Segment> obstacles,
                         int substep_index, int substeps_per_action, const HumanParams& params) {
    HumanState next = h;
    const int remaining = substeps_per_action - substep_index;
    if (remaining <= 0) {
        throw std::invalid_argument("substep index beyond the action");
    }
    if (a.walk == WalkPrimitive::WalkForward) {
        const Vec2 target = h.position + (params.walk_speed * dt) * forward_dir(h);
        next.position = clip_disc_motion(h.position, target, params.footprint_radius, obstacles);
    } else {
        next.heading = normalize_angle(h.heading + turn_angle(a.walk) / substeps_per_action);
    }
    // Equal increments toward the target over the remaining substeps: constant rate
    // from the action-start posture, exact arrival on the final substep.
    const auto [fwd_target, lat_target] = bend_target_angles(a.bend, params);
    if (remaining == 1) {
        next.bend_forward = fwd_target;
        next.bend_lateral = lat_target;
    } else {
        next.bend_forward = h.bend_forward + (fwd_target - h.bend_forward) / remaining;
        next.bend_lateral = h.bend_lateral + (lat_target - h.bend_lateral) / remaining;
    }
    return next;
}

Vec2 forward_dir(const HumanState& h) { return {std::cos(h.heading), std::sin(h.heading)}; }

Vec2 right_dir(const HumanState& h) { return {std::sin(h.heading), -std::cos(h.heading)}; }

Vec2 shoulder_center(const HumanState& h, const HumanParams& params) {
    Vec2 offset = params.torso_length * (std::sin(h.bend_forward * kDegToRad) * forward_dir(h) +
                                         std::sin(h.bend_lateral * kDegToRad) * right_dir(h));
    const double len = norm(offset);
    if (len > params.torso_length) {
        offset = (params.torso_length / len) * offset;
    }
    return h.position + offset;
}

double reach_distance(const HumanState& h, Vec2 target, const HumanParams& params) {
    const double gap = distance(target, shoulder_center(h, params)) - params.reach_radius();
    return gap <= kGeomEps ? 0.0 : gap;
}

bool reach_contains(const HumanState& h, Vec2 target, std::span<const Segment> occluders,
                    const HumanParams& params) {
    const Vec2 shoulder = shoulder_center(h, params);
    if (distance(target, shoulder) - params.reach_radius() > kGeomEps) {
        return false;
    }
    if (segment_hits_any({shoulder, target}, occluders)) {
        return false;
    }
    if (distance(h.position, shoulder) > kGeomEps && segment_hits_any({h.position, shoulder}, occluders)) {
        return false;
    }
    return true;
}

}  // namespace hazardforge
