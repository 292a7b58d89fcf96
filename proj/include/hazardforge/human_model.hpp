#pragma once

// Virtual human: the 30-action alphabet, walk/turn/bend kinematics and the
// shoulder-anchored reach disc.

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "hazardforge/geometry.hpp"

namespace hazardforge {

struct HumanParams {
    double body_height = 1.78;
    double upper_arm = 0.30;
    double lower_arm = 0.31;
    double hand = 0.18;
    double walk_speed = 1.6;           // m/s
    double max_forward_flexion = 55.0;  // degrees
    double max_lateral_flexion = 35.0;  // degrees
    double footprint_radius = 0.20;
    double torso_length = 0.50;

    double reach_radius() const { return upper_arm + lower_arm + hand; }
    friend bool operator==(const HumanParams&, const HumanParams&) = default;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const HumanParams& params);

enum class WalkPrimitive : std::uint8_t { WalkForward, TurnLeft45, TurnLeft90, TurnRight45, TurnRight90 };
enum class BendTarget : std::uint8_t { Upright, Forward, Left, Right, ForwardRight, ForwardLeft };

inline constexpr int kWalkCount = 5;
inline constexpr int kBendCount = 6;
inline constexpr int kActionCount = kWalkCount * kBendCount;

struct Action {
    WalkPrimitive walk = WalkPrimitive::WalkForward;
    BendTarget bend = BendTarget::Upright;

    constexpr int index() const { return static_cast<int>(walk) * kBendCount + static_cast<int>(bend); }
    static constexpr Action from_index(int i) {
        return {static_cast<WalkPrimitive>(i / kBendCount), static_cast<BendTarget>(i % kBendCount)};
    }
    friend constexpr bool operator==(Action, Action) = default;
};

std::array<Action, kActionCount> enumerate_actions();
/// Throws std::out_of_range for indices outside [0,30).
Action action_from_index(int index);
std::string_view to_string(WalkPrimitive w);
std::string_view to_string(BendTarget b);

/// Total heading change of a walk primitive in radians (positive = left / CCW).
double turn_angle(WalkPrimitive w);
/// Target (forward, lateral) flexion in degrees; lateral positive = right.
std::array<double, 2> bend_target_angles(BendTarget b, const HumanParams& params);

double normalize_angle(double radians);

struct HumanState {
    Vec2 position;
    double heading = 0.0;        // radians, (-pi, pi]
    double bend_forward = 0.0;   // degrees
    double bend_lateral = 0.0;   // degrees, positive = right

    friend bool operator==(const HumanState&, const HumanState&) = default;
};

/// Advances the human by one simulation substep of an action. Bend angles move
/// at a constant rate fixed by the posture at action start, so the target
/// posture is reached exactly on the last substep.
HumanState substep_human(const HumanState& h, Action a, double dt, std::span<const Segment> obstacles,
                         int substep_index, int substeps_per_action, const HumanParams& params);

Vec2 forward_dir(const HumanState& h);
Vec2 right_dir(const HumanState& h);
Vec2 shoulder_center(const HumanState& h, const HumanParams& params);

/// Gap between the reach disc and the target; 0 when the target is reachable
/// ignoring occlusion.
double reach_distance(const HumanState& h, Vec2 target, const HumanParams& params);

/// Reach containment with fence occlusion. The arm line from the shoulder and
/// the torso line from the feet to the shoulder must both be unobstructed.
bool reach_contains(const HumanState& h, Vec2 target, std::span<const Segment> occluders,
                    const HumanParams& params);

}  // namespace hazardforge
