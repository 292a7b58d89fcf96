#pragma once

// Static robot-cell description, robot path kinematics with the stop chain,
// floor scanner / light curtain sensing, scenario files and built-in cells.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hazardforge/geometry.hpp"
#include "hazardforge/human_model.hpp"

namespace hazardforge {

/// Malformed scenario document (not JSON, wrong types).
class ScenarioParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed document violating a declared invariant; `field()` is a dotted path.
class ScenarioValidationError : public std::runtime_error {
public:
    ScenarioValidationError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct RobotPath {
    std::string name;
    Polyline path;
    friend bool operator==(const RobotPath&, const RobotPath&) = default;
};

struct RobotSpec {
    std::vector<RobotPath> paths;
    double nominal_speed = 1.5;  // m/s of the fastest point while running
    double stopping_time = 0.5;  // s from signal arrival to standstill

    double longest_path() const;
    friend bool operator==(const RobotSpec&, const RobotSpec&) = default;
};

struct ScannerZone {
    Polygon zone;
    friend bool operator==(const ScannerZone&, const ScannerZone&) = default;
};

struct LightCurtain {
    Segment line;
    friend bool operator==(const LightCurtain&, const LightCurtain&) = default;
};

struct SensorSpec {
    std::variant<ScannerZone, LightCurtain> kind;
    double response_time = 0.1;

    std::string_view kind_name() const;
    friend bool operator==(const SensorSpec&, const SensorSpec&) = default;
};

struct Latched {
    friend bool operator==(Latched, Latched) = default;
};
struct AutoResume {
    double clear_delay = 1.0;
    friend bool operator==(AutoResume, AutoResume) = default;
};
using ResumePolicy = std::variant<Latched, AutoResume>;

/// Plain, unvalidated description of a cell. Turned into a Scenario by
/// Scenario::from_spec, which checks every invariant.
struct ScenarioSpec {
    std::string name;
    std::vector<Segment> walls;
    Polygon table;
    std::vector<SensorSpec> sensors;
    RobotSpec robot;
    Vec2 human_start;
    double human_heading_deg = 0.0;
    HumanParams human_params;
    double dt = 0.05;
    int substeps_per_action = 4;
    ResumePolicy resume_policy = Latched{};

    friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// Validated, immutable cell. Shareable across concurrent searches.
class Scenario {
public:
    static Scenario from_spec(ScenarioSpec spec);

    const ScenarioSpec& spec() const { return spec_; }
    const std::string& name() const { return spec_.name; }
    const std::vector<Segment>& walls() const { return spec_.walls; }
    const Polygon& table() const { return spec_.table; }
    const std::vector<SensorSpec>& sensors() const { return spec_.sensors; }
    const RobotSpec& robot() const { return spec_.robot; }
    const HumanParams& human_params() const { return spec_.human_params; }
    const HumanState& human_start() const { return human_start_; }
    double dt() const { return spec_.dt; }
    int substeps_per_action() const { return spec_.substeps_per_action; }
    const ResumePolicy& resume_policy() const { return spec_.resume_policy; }
    /// Walls plus table edges: everything the footprint may not cross.
    const std::vector<Segment>& walk_blockers() const { return walk_blockers_; }

    friend bool operator==(const Scenario& a, const Scenario& b) { return a.spec_ == b.spec_; }

private:
    explicit Scenario(ScenarioSpec spec);

    ScenarioSpec spec_;
    HumanState human_start_;
    std::vector<Segment> walk_blockers_;
};

Scenario load_scenario(std::string_view document);
std::string serialize_scenario(const Scenario& scenario);

inline constexpr std::string_view kBuiltinNames[] = {"s1-scanner-width", "s2-elbow-bay", "s3-fence-gap",
                                                     "safe-baseline", "mini-reach"};
/// Throws std::invalid_argument for unknown names.
Scenario builtin_scenario(std::string_view name);
std::string_view builtin_scenario_document(std::string_view name);

// ---------------------------------------------------------------- robot

enum class RobotMode : std::uint8_t { Running, StoppingPending, Decelerating, Stopped };
std::string_view to_string(RobotMode mode);

struct RobotState {
    double phase = 0.0;         // u in [0,1)
    double speed_factor = 1.0;  // lambda in [0,1]
    RobotMode mode = RobotMode::Running;
    double pending_arrival = 0.0;  // seconds, meaningful in StoppingPending
    double decel_elapsed = 0.0;    // seconds since deceleration began

    friend bool operator==(const RobotState&, const RobotState&) = default;
};

RobotState step_robot(const RobotState& r, const RobotSpec& spec, double dt, bool stop_signal_arrived);

struct RobotPoint {
    std::string_view name;
    Vec2 position;
    double speed = 0.0;
    friend bool operator==(const RobotPoint&, const RobotPoint&) = default;
};

std::vector<RobotPoint> robot_points(const RobotState& r, const RobotSpec& spec);

// ---------------------------------------------------------------- sensing

/// One flag per sensor, in declaration order.
std::vector<bool> sense(std::span<const SensorSpec> sensors, const HumanState& prev, const HumanState& now,
                        const HumanParams& params);

// ---------------------------------------------------------------- separation check

struct SeparationReport {
    double min_time_to_contact = 0.0;  // seconds; 0 when contact is possible undetected
    double required_time = 0.0;        // min over sensors of t_resp, plus t_stop
    Vec2 worst_point;                  // undetected footprint position achieving the minimum
    bool reachable_undetected_contact = false;
    std::size_t undetected_cells = 0;
    std::size_t contact_cells = 0;
};

/// Conservative grid check of the separation-distance argument: the shortest
/// walking time from any footprint position reachable from the start without
/// detection to any position from which a robot path point can be touched.
SeparationReport certify_separation(const Scenario& scenario, double grid = 0.05);

}  // namespace hazardforge
