#include "hazardforge/cell.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <sstream>

#include "embedded_scenarios.hpp"
#include "json.hpp"

namespace hazardforge {

using ojson = nlohmann::ordered_json;

namespace {

constexpr double kRadPerDeg = kPi / 180.0;

[[noreturn]] void invalid(const std::string& field, const std::string& message) {
    throw ScenarioValidationError(field, message);
}

void require_finite_positive(double v, const std::string& field) {
    if (!std::isfinite(v) || !(v > 0.0)) {
        invalid(field, "must be a positive finite number");
    }
}

double footprint_clearance(Vec2 p, const std::vector<Segment>& blockers) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : blockers) {
        best = std::min(best, distance_point_segment(p, s));
    }
    return best;
}

bool scanner_detects(const Polygon& zone, Vec2 footprint, double radius) {
    return point_in_polygon(footprint, zone) || distance_point_polygon_boundary(footprint, zone) <= radius;
}

}  // namespace

// ---------------------------------------------------------------- scenario

double RobotSpec::longest_path() const {
    double best = 0.0;
    for (const auto& p : paths) {
        best = std::max(best, p.path.length());
    }
    return best;
}

std::string_view SensorSpec::kind_name() const {
    return std::holds_alternative<ScannerZone>(kind) ? "scanner_zone" : "light_curtain";
}

Scenario Scenario::from_spec(ScenarioSpec spec) { return Scenario(std::move(spec)); }

Scenario::Scenario(ScenarioSpec spec) : spec_(std::move(spec)) {
    if (spec_.name.empty()) {
        invalid("name", "must not be empty");
    }
    for (std::size_t i = 0; i < spec_.walls.size(); ++i) {
        const auto& w = spec_.walls[i];
        const std::string field = "walls[" + std::to_string(i) + "]";
        if (!is_finite(w.a) || !is_finite(w.b)) {
            invalid(field, "coordinates must be finite");
        }
        if (w.length() <= kGeomEps) {
            invalid(field, "segment endpoints coincide");
        }
    }
    if (spec_.table.size() < 3) {
        invalid("table", "polygon needs at least 3 vertices");
    }
    for (std::size_t i = 0; i < spec_.sensors.size(); ++i) {
        const auto& s = spec_.sensors[i];
        const std::string field = "sensors[" + std::to_string(i) + "]";
        if (!std::isfinite(s.response_time) || s.response_time < 0.0) {
            invalid(field + ".response_time", "must be finite and non-negative");
        }
        if (const auto* zone = std::get_if<ScannerZone>(&s.kind); zone != nullptr && zone->zone.size() < 3) {
            invalid(field + ".polygon", "polygon needs at least 3 vertices");
        }
        if (const auto* curtain = std::get_if<LightCurtain>(&s.kind)) {
            if (!is_finite(curtain->line.a) || !is_finite(curtain->line.b) || curtain->line.length() <= kGeomEps) {
                invalid(field + ".segment", "curtain segment is degenerate");
            }
        }
    }
    auto& robot = spec_.robot;
    if (robot.paths.empty()) {
        invalid("robot.point_paths", "at least one path is required");
    }
    bool has_tcp = false;
    for (const auto& p : robot.paths) {
        const std::string field = "robot.point_paths." + p.name;
        if (p.name.empty()) {
            invalid("robot.point_paths", "path name must not be empty");
        }
        if (p.path.vertices().size() < 2) {
            invalid(field, "path needs at least 2 vertices");
        }
        if (!p.path.closed()) {
            invalid(field, "robot paths must be closed loops");
        }
        has_tcp = has_tcp || p.name == "tcp";
    }
    if (!has_tcp) {
        invalid("robot.point_paths", "a path named \"tcp\" is required");
    }
    require_finite_positive(robot.nominal_speed, "robot.nominal_speed");
    require_finite_positive(robot.stopping_time, "robot.stopping_time");
    try {
        validate(spec_.human_params);
    } catch (const std::invalid_argument& e) {
        invalid("human.params", e.what());
    }
    require_finite_positive(spec_.dt, "sim.dt");
    if (spec_.substeps_per_action < 1) {
        invalid("sim.substeps_per_action", "must be at least 1");
    }
    if (const auto* resume = std::get_if<AutoResume>(&spec_.resume_policy)) {
        if (!std::isfinite(resume->clear_delay) || resume->clear_delay < 0.0) {
            invalid("resume_policy.clear_delay", "must be finite and non-negative");
        }
    }

    walk_blockers_ = spec_.walls;
    for (const auto& e : spec_.table.edges()) {
        walk_blockers_.push_back(e);
    }

    if (!is_finite(spec_.human_start) || !std::isfinite(spec_.human_heading_deg)) {
        invalid("human_start", "start pose must be finite");
    }
    const double radius = spec_.human_params.footprint_radius;
    if (footprint_clearance(spec_.human_start, walk_blockers_) < radius - kGeomEps ||
        point_in_polygon(spec_.human_start, spec_.table)) {
        invalid("human_start", "footprint penetrates a wall or the table");
    }
    for (const auto& s : spec_.sensors) {
        if (const auto* zone = std::get_if<ScannerZone>(&s.kind)) {
            if (scanner_detects(zone->zone, spec_.human_start, radius)) {
                invalid("human_start", "start lies inside a scanner zone");
            }
        }
    }
    human_start_.position = spec_.human_start;
    human_start_.heading = normalize_angle(spec_.human_heading_deg * kRadPerDeg);
}

// ---------------------------------------------------------------- file format

namespace {

class Reader {
public:
    static double number(const ojson& j, const std::string& field) {
        if (!j.is_number()) {
            invalid(field, "expected a number");
        }
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            invalid(field, "must be finite");
        }
        return v;
    }

    static Vec2 point(const ojson& j, const std::string& field) {
        if (!j.is_array() || j.size() != 2) {
            invalid(field, "expected [x, y]");
        }
        return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
    }

    static Segment segment(const ojson& j, const std::string& field) {
        if (!j.is_array() || j.size() != 4) {
            invalid(field, "expected [x1, y1, x2, y2]");
        }
        return {{number(j[0], field), number(j[1], field)}, {number(j[2], field), number(j[3], field)}};
    }

    static std::vector<Vec2> points(const ojson& j, const std::string& field) {
        if (!j.is_array()) {
            invalid(field, "expected a list of [x, y]");
        }
        std::vector<Vec2> out;
        for (std::size_t i = 0; i < j.size(); ++i) {
            out.push_back(point(j[i], field + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    static Polygon polygon(const ojson& j, const std::string& field) {
        try {
            return Polygon(points(j, field));
        } catch (const GeometryError& e) {
            invalid(field, e.what());
        }
    }

    static const ojson& object(const ojson& j, const std::string& field, std::initializer_list<std::string_view> allowed) {
        if (!j.is_object()) {
            invalid(field, "expected an object");
        }
        for (const auto& [key, value] : j.items()) {
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                invalid(field.empty() ? key : field + "." + key, "unknown field");
            }
        }
        return j;
    }

    static const ojson& required(const ojson& obj, const std::string& parent, const char* key) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            invalid(parent.empty() ? key : parent + "." + key, "missing required field");
        }
        return *it;
    }
};

SensorSpec read_sensor(const ojson& j, const std::string& field) {
    Reader::object(j, field, {"kind", "polygon", "segment", "response_time"});
    const auto& kind = Reader::required(j, field, "kind");
    if (!kind.is_string()) {
        invalid(field + ".kind", "expected a string");
    }
    SensorSpec s;
    if (auto it = j.find("response_time"); it != j.end()) {
        s.response_time = Reader::number(*it, field + ".response_time");
    }
    const auto k = kind.get<std::string>();
    if (k == "scanner_zone") {
        if (j.contains("segment")) {
            invalid(field + ".segment", "not allowed for scanner_zone");
        }
        s.kind = ScannerZone{Reader::polygon(Reader::required(j, field, "polygon"), field + ".polygon")};
    } else if (k == "light_curtain") {
        if (j.contains("polygon")) {
            invalid(field + ".polygon", "not allowed for light_curtain");
        }
        s.kind = LightCurtain{Reader::segment(Reader::required(j, field, "segment"), field + ".segment")};
    } else {
        invalid(field + ".kind", "unknown sensor kind \"" + k + "\"");
    }
    return s;
}

RobotSpec read_robot(const ojson& j) {
    Reader::object(j, "robot", {"paths", "nominal_speed", "stopping_time"});
    RobotSpec r;
    const auto& paths = Reader::required(j, "robot", "paths");
    if (!paths.is_object() || paths.empty()) {
        invalid("robot.point_paths", "expected a non-empty object of named paths");
    }
    for (const auto& [name, value] : paths.items()) {
        const std::string field = "robot.point_paths." + name;
        auto pts = Reader::points(value, field);
        if (pts.size() < 3 || !(pts.front() == pts.back())) {
            invalid(field, "robot paths must be closed loops (last vertex repeats the first)");
        }
        pts.pop_back();
        try {
            r.paths.push_back({name, Polyline(std::move(pts), true)});
        } catch (const GeometryError& e) {
            invalid(field, e.what());
        }
    }
    if (auto it = j.find("nominal_speed"); it != j.end()) {
        r.nominal_speed = Reader::number(*it, "robot.nominal_speed");
    }
    if (auto it = j.find("stopping_time"); it != j.end()) {
        r.stopping_time = Reader::number(*it, "robot.stopping_time");
    }
    return r;
}

HumanParams read_params(const ojson& j) {
    Reader::object(j, "human.params",
                   {"body_height", "upper_arm", "lower_arm", "hand", "walk_speed", "max_forward_flexion",
                    "max_lateral_flexion", "footprint_radius", "torso_length"});
    HumanParams p;
    const auto set = [&](const char* key, double& out) {
        if (auto it = j.find(key); it != j.end()) {
            out = Reader::number(*it, std::string("human.params.") + key);
        }
    };
    set("body_height", p.body_height);
    set("upper_arm", p.upper_arm);
    set("lower_arm", p.lower_arm);
    set("hand", p.hand);
    set("walk_speed", p.walk_speed);
    set("max_forward_flexion", p.max_forward_flexion);
    set("max_lateral_flexion", p.max_lateral_flexion);
    set("footprint_radius", p.footprint_radius);
    set("torso_length", p.torso_length);
    return p;
}

ResumePolicy read_resume(const ojson& j) {
    if (j.is_string() && j.get<std::string>() == "latched") {
        return Latched{};
    }
    if (j.is_object()) {
        Reader::object(j, "resume_policy", {"kind", "clear_delay"});
        const auto& kind = Reader::required(j, "resume_policy", "kind");
        if (kind.is_string() && kind.get<std::string>() == "auto_resume") {
            return AutoResume{Reader::number(Reader::required(j, "resume_policy", "clear_delay"),
                                             "resume_policy.clear_delay")};
        }
    }
    invalid("resume_policy", "expected \"latched\" or {\"kind\": \"auto_resume\", \"clear_delay\": s}");
}

ScenarioSpec read_spec(const ojson& doc) {
    Reader::object(doc, "", {"format_version", "name", "walls", "table", "sensors", "robot", "human", "sim",
                             "resume_policy"});
    const auto& version = Reader::required(doc, "", "format_version");
    if (!version.is_number_integer() || version.get<int>() != 1) {
        invalid("format_version", "unsupported format version (expected 1)");
    }
    ScenarioSpec spec;
    const auto& name = Reader::required(doc, "", "name");
    if (!name.is_string()) {
        invalid("name", "expected a string");
    }
    spec.name = name.get<std::string>();

    const auto& walls = Reader::required(doc, "", "walls");
    if (!walls.is_array()) {
        invalid("walls", "expected a list of [x1, y1, x2, y2]");
    }
    for (std::size_t i = 0; i < walls.size(); ++i) {
        spec.walls.push_back(Reader::segment(walls[i], "walls[" + std::to_string(i) + "]"));
    }
    spec.table = Reader::polygon(Reader::required(doc, "", "table"), "table");

    if (auto it = doc.find("sensors"); it != doc.end()) {
        if (!it->is_array()) {
            invalid("sensors", "expected a list");
        }
        for (std::size_t i = 0; i < it->size(); ++i) {
            spec.sensors.push_back(read_sensor((*it)[i], "sensors[" + std::to_string(i) + "]"));
        }
    }
    spec.robot = read_robot(Reader::required(doc, "", "robot"));

    const auto& human = Reader::object(Reader::required(doc, "", "human"), "human", {"start", "heading_deg", "params"});
    spec.human_start = Reader::point(Reader::required(human, "human", "start"), "human_start");
    if (auto it = human.find("heading_deg"); it != human.end()) {
        spec.human_heading_deg = Reader::number(*it, "human.heading_deg");
    }
    if (auto it = human.find("params"); it != human.end()) {
        spec.human_params = read_params(*it);
    }

    if (auto it = doc.find("sim"); it != doc.end()) {
        Reader::object(*it, "sim", {"dt", "substeps_per_action"});
        if (auto dt = it->find("dt"); dt != it->end()) {
            spec.dt = Reader::number(*dt, "sim.dt");
        }
        if (auto sub = it->find("substeps_per_action"); sub != it->end()) {
            if (!sub->is_number_integer()) {
                invalid("sim.substeps_per_action", "expected an integer");
            }
            spec.substeps_per_action = sub->get<int>();
        }
    }
    if (auto it = doc.find("resume_policy"); it != doc.end()) {
        spec.resume_policy = read_resume(*it);
    }
    return spec;
}

// Shortest round-trip formatting keeps serialization lossless.
std::string num(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string pt(Vec2 p) { return "[" + num(p.x) + ", " + num(p.y) + "]"; }

std::string pts(const std::vector<Vec2>& v, bool repeat_first) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? ", " : "") + pt(v[i]);
    }
    if (repeat_first && !v.empty()) {
        out += ", " + pt(v.front());
    }
    return out + "]";
}

std::string seg(const Segment& s) {
    return "[" + num(s.a.x) + ", " + num(s.a.y) + ", " + num(s.b.x) + ", " + num(s.b.y) + "]";
}

}  // namespace

Scenario load_scenario(std::string_view document) {
    ojson doc;
    try {
        doc = ojson::parse(document.begin(), document.end());
    } catch (const ojson::parse_error& e) {
        throw ScenarioParseError(std::string("malformed scenario document: ") + e.what());
    }
    return Scenario::from_spec(read_spec(doc));
}

std::string serialize_scenario(const Scenario& scenario) {
    const auto& s = scenario.spec();
    std::ostringstream out;
    out << "{\n  \"format_version\": 1,\n";
    out << "  \"name\": " << ojson(s.name).dump() << ",\n";
    out << "  \"walls\": [";
    for (std::size_t i = 0; i < s.walls.size(); ++i) {
        out << (i ? ",\n    " : "\n    ") << seg(s.walls[i]);
    }
    out << (s.walls.empty() ? "],\n" : "\n  ],\n");
    out << "  \"table\": " << pts(s.table.vertices(), false) << ",\n";
    out << "  \"sensors\": [";
    for (std::size_t i = 0; i < s.sensors.size(); ++i) {
        const auto& sensor = s.sensors[i];
        out << (i ? ",\n    " : "\n    ") << "{\"kind\": \"" << sensor.kind_name() << "\", ";
        if (const auto* zone = std::get_if<ScannerZone>(&sensor.kind)) {
            out << "\"polygon\": " << pts(zone->zone.vertices(), false);
        } else {
            out << "\"segment\": " << seg(std::get<LightCurtain>(sensor.kind).line);
        }
        out << ", \"response_time\": " << num(sensor.response_time) << "}";
    }
    out << (s.sensors.empty() ? "],\n" : "\n  ],\n");
    out << "  \"robot\": {\n    \"paths\": {";
    for (std::size_t i = 0; i < s.robot.paths.size(); ++i) {
        const auto& p = s.robot.paths[i];
        out << (i ? ",\n      " : "\n      ") << ojson(p.name).dump() << ": " << pts(p.path.vertices(), true);
    }
    out << "\n    },\n";
    out << "    \"nominal_speed\": " << num(s.robot.nominal_speed) << ",\n";
    out << "    \"stopping_time\": " << num(s.robot.stopping_time) << "\n  },\n";
    const auto& hp = s.human_params;
    out << "  \"human\": {\n    \"start\": " << pt(s.human_start) << ",\n";
    out << "    \"heading_deg\": " << num(s.human_heading_deg) << ",\n";
    out << "    \"params\": {\"body_height\": " << num(hp.body_height) << ", \"upper_arm\": " << num(hp.upper_arm)
        << ", \"lower_arm\": " << num(hp.lower_arm) << ", \"hand\": " << num(hp.hand)
        << ", \"walk_speed\": " << num(hp.walk_speed) << ", \"max_forward_flexion\": " << num(hp.max_forward_flexion)
        << ", \"max_lateral_flexion\": " << num(hp.max_lateral_flexion)
        << ", \"footprint_radius\": " << num(hp.footprint_radius) << ", \"torso_length\": " << num(hp.torso_length)
        << "}\n  },\n";
    out << "  \"sim\": {\"dt\": " << num(s.dt) << ", \"substeps_per_action\": " << s.substeps_per_action << "},\n";
    if (const auto* resume = std::get_if<AutoResume>(&s.resume_policy)) {
        out << "  \"resume_policy\": {\"kind\": \"auto_resume\", \"clear_delay\": " << num(resume->clear_delay) << "}\n";
    } else {
        out << "  \"resume_policy\": \"latched\"\n";
    }
    out << "}\n";
    return out.str();
}

std::string_view builtin_scenario_document(std::string_view name) {
    for (std::size_t i = 0; i < detail::kEmbeddedScenarioCount; ++i) {
        if (detail::kEmbeddedScenarios[i].name == name) {
            return detail::kEmbeddedScenarios[i].text;
        }
    }
    throw std::invalid_argument("unknown builtin scenario \"" + std::string(name) + "\"");
}

Scenario builtin_scenario(std::string_view name) { return load_scenario(builtin_scenario_document(name)); }

// ---------------------------------------------------------------- robot

std::string_view to_string(RobotMode mode) {
    switch (mode) {
        case RobotMode::Running: return "running";
        case RobotMode::StoppingPending: return "stopping_pending";
        case RobotMode::Decelerating: return "decelerating";
        case RobotMode::Stopped: return "stopped";
    }
    return "?";
}

RobotState step_robot(const RobotState& r, const RobotSpec& spec, double dt, bool stop_signal_arrived) {
    RobotState next = r;
    if (r.mode == RobotMode::Stopped) {
        return next;
    }
    if (stop_signal_arrived && (r.mode == RobotMode::Running || r.mode == RobotMode::StoppingPending)) {
        next.mode = RobotMode::Decelerating;
        next.decel_elapsed = 0.0;
    }
    if (next.mode == RobotMode::Decelerating) {
        next.decel_elapsed += dt;
        if (next.decel_elapsed >= spec.stopping_time - kGeomEps) {
            next.speed_factor = 0.0;
        } else {
            next.speed_factor = std::min(r.speed_factor, 1.0 - next.decel_elapsed / spec.stopping_time);
        }
    }
    // Trapezoidal arc length over the substep; exact for the linear ramp.
    const double mean_lambda = 0.5 * (r.speed_factor + next.speed_factor);
    next.phase += mean_lambda * spec.nominal_speed * dt / spec.longest_path();
    next.phase -= std::floor(next.phase);
    if (next.phase >= 1.0) {
        next.phase = 0.0;
    }
    if (next.mode == RobotMode::Decelerating && next.speed_factor == 0.0) {
        next.mode = RobotMode::Stopped;
    }
    return next;
}

std::vector<RobotPoint> robot_points(const RobotState& r, const RobotSpec& spec) {
    std::vector<RobotPoint> out;
    out.reserve(spec.paths.size());
    const double longest = spec.longest_path();
    for (const auto& p : spec.paths) {
        out.push_back({p.name, polyline_point_at(p.path, r.phase),
                       r.speed_factor * spec.nominal_speed * p.path.length() / longest});
    }
    return out;
}

// ---------------------------------------------------------------- sensing

std::vector<bool> sense(std::span<const SensorSpec> sensors, const HumanState& prev, const HumanState& now,
                        const HumanParams& params) {
    std::vector<bool> out;
    out.reserve(sensors.size());
    for (const auto& s : sensors) {
        if (const auto* zone = std::get_if<ScannerZone>(&s.kind)) {
            out.push_back(scanner_detects(zone->zone, now.position, params.footprint_radius));
        } else {
            const auto& line = std::get<LightCurtain>(s.kind).line;
            const bool feet = segments_intersect({prev.position, now.position}, line);
            const bool torso = segments_intersect({shoulder_center(prev, params), shoulder_center(now, params)}, line);
            out.push_back(feet || torso);
        }
    }
    return out;
}

// ---------------------------------------------------------------- separation check

namespace {

struct Grid {
    double x0 = 0.0;
    double y0 = 0.0;
    double h = 0.05;
    int nx = 0;
    int ny = 0;

    Vec2 at(int i, int j) const { return {x0 + i * h, y0 + j * h}; }
    int index(int i, int j) const { return j * nx + i; }
    bool inside(int i, int j) const { return i >= 0 && j >= 0 && i < nx && j < ny; }
};

struct Bounds {
    double lo_x = std::numeric_limits<double>::infinity();
    double lo_y = std::numeric_limits<double>::infinity();
    double hi_x = -std::numeric_limits<double>::infinity();
    double hi_y = -std::numeric_limits<double>::infinity();
    void add(Vec2 p) {
        lo_x = std::min(lo_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_x = std::max(hi_x, p.x);
        hi_y = std::max(hi_y, p.y);
    }
};

Grid make_grid(const Bounds& b, double h, double margin) {
    Grid g;
    g.h = h;
    g.x0 = std::floor((b.lo_x - margin) / h) * h;
    g.y0 = std::floor((b.lo_y - margin) / h) * h;
    g.nx = static_cast<int>(std::ceil((b.hi_x + margin - g.x0) / h)) + 1;
    g.ny = static_cast<int>(std::ceil((b.hi_y + margin - g.y0) / h)) + 1;
    return g;
}

}  // namespace

SeparationReport certify_separation(const Scenario& scenario, double grid_step) {
    const auto& params = scenario.human_params();
    const double radius = params.footprint_radius;
    const double reach = params.reach_radius();
    const double torso = params.torso_length;
    const auto& blockers = scenario.walk_blockers();
    const auto& walls = scenario.walls();

    SeparationReport report;
    report.required_time = std::numeric_limits<double>::infinity();
    for (const auto& s : scenario.sensors()) {
        report.required_time = std::min(report.required_time, s.response_time);
    }
    if (scenario.sensors().empty()) {
        report.required_time = 0.0;
    }
    report.required_time += scenario.robot().stopping_time;

    Bounds bounds;
    for (const auto& w : walls) {
        bounds.add(w.a);
        bounds.add(w.b);
    }
    for (const auto& v : scenario.table().vertices()) {
        bounds.add(v);
    }
    for (const auto& p : scenario.robot().paths) {
        for (const auto& v : p.path.vertices()) {
            bounds.add(v);
        }
    }
    bounds.add(scenario.spec().human_start);
    const Grid g = make_grid(bounds, grid_step, 0.5);
    const auto cells = static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny);

    std::vector<char> free(cells, 0);
    std::vector<char> detected(cells, 0);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const Vec2 p = g.at(i, j);
            const auto k = static_cast<std::size_t>(g.index(i, j));
            free[k] = footprint_clearance(p, blockers) >= radius - kGeomEps && !point_in_polygon(p, scenario.table());
            for (const auto& s : scenario.sensors()) {
                if (const auto* zone = std::get_if<ScannerZone>(&s.kind)) {
                    detected[k] = detected[k] || scanner_detects(zone->zone, p, radius);
                }
            }
        }
    }

    // Robot path samples at 1 cm.
    std::vector<Vec2> samples;
    for (const auto& p : scenario.robot().paths) {
        const auto n = static_cast<int>(std::ceil(p.path.length() / 0.01));
        for (int k = 0; k < n; ++k) {
            samples.push_back(polyline_point_at(p.path, static_cast<double>(k) / n));
        }
    }

    // Shoulder positions from which a path sample is touchable with a clear arm line.
    const double sh = grid_step / 2.0;
    const double tol = sh * std::sqrt(2.0) / 2.0 + 0.005;
    Bounds path_bounds;
    for (const auto& s : samples) {
        path_bounds.add(s);
    }
    const Grid sg = make_grid(path_bounds, sh, reach + tol);
    std::vector<char> shoulder_ok(static_cast<std::size_t>(sg.nx) * static_cast<std::size_t>(sg.ny), 0);
    for (int j = 0; j < sg.ny; ++j) {
        for (int i = 0; i < sg.nx; ++i) {
            const Vec2 s = sg.at(i, j);
            for (const auto& t : samples) {
                if (distance(s, t) <= reach + tol && !segment_hits_any({s, t}, walls)) {
                    shoulder_ok[static_cast<std::size_t>(sg.index(i, j))] = 1;
                    break;
                }
            }
        }
    }

    // Footprint positions with some admissible lean onto such a shoulder position.
    std::vector<char> contact(cells, 0);
    const int span = static_cast<int>(std::ceil((torso + tol) / sh));
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const auto k = static_cast<std::size_t>(g.index(i, j));
            if (!free[k]) {
                continue;
            }
            const Vec2 q = g.at(i, j);
            const int ci = static_cast<int>(std::lround((q.x - sg.x0) / sh));
            const int cj = static_cast<int>(std::lround((q.y - sg.y0) / sh));
            for (int dj = -span; dj <= span && !contact[k]; ++dj) {
                for (int di = -span; di <= span; ++di) {
                    if (!sg.inside(ci + di, cj + dj) || !shoulder_ok[static_cast<std::size_t>(sg.index(ci + di, cj + dj))]) {
                        continue;
                    }
                    const Vec2 s = sg.at(ci + di, cj + dj);
                    if (distance(q, s) <= torso + tol && !segment_hits_any({q, s}, walls)) {
                        contact[k] = 1;
                        break;
                    }
                }
            }
            report.contact_cells += contact[k] ? 1u : 0u;
        }
    }

    const auto passable = [&](Vec2 a, Vec2 b) { return !segment_hits_any({a, b}, blockers); };
    const auto crosses_curtain = [&](Vec2 a, Vec2 b) {
        for (const auto& s : scenario.sensors()) {
            if (const auto* c = std::get_if<LightCurtain>(&s.kind); c != nullptr && segments_intersect({a, b}, c->line)) {
                return true;
            }
        }
        return false;
    };
    constexpr int kDi[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    constexpr int kDj[8] = {0, 0, 1, -1, 1, -1, 1, -1};

    // Undetected region reachable from the start.
    std::vector<char> undetected(cells, 0);
    {
        const Vec2 start = scenario.spec().human_start;
        const int si = static_cast<int>(std::lround((start.x - g.x0) / g.h));
        const int sj = static_cast<int>(std::lround((start.y - g.y0) / g.h));
        std::deque<std::pair<int, int>> queue;
        // The start need not sit on a node; seed from every nearby node it can step to unseen.
        for (int dj = -1; dj <= 1; ++dj) {
            for (int di = -1; di <= 1; ++di) {
                const int i = si + di;
                const int j = sj + dj;
                if (!g.inside(i, j)) {
                    continue;
                }
                const auto k = static_cast<std::size_t>(g.index(i, j));
                const Vec2 p = g.at(i, j);
                if (free[k] && !detected[k] && distance(p, start) <= 1.5 * g.h && passable(start, p) &&
                    !crosses_curtain(start, p)) {
                    undetected[k] = 1;
                    queue.emplace_back(i, j);
                }
            }
        }
        while (!queue.empty()) {
            const auto [i, j] = queue.front();
            queue.pop_front();
            for (int d = 0; d < 8; ++d) {
                const int ni = i + kDi[d];
                const int nj = j + kDj[d];
                if (!g.inside(ni, nj)) {
                    continue;
                }
                const auto nk = static_cast<std::size_t>(g.index(ni, nj));
                if (undetected[nk] || !free[nk] || detected[nk]) {
                    continue;
                }
                if (!passable(g.at(i, j), g.at(ni, nj)) || crosses_curtain(g.at(i, j), g.at(ni, nj))) {
                    continue;
                }
                undetected[nk] = 1;
                queue.emplace_back(ni, nj);
            }
        }
    }

    // Walking distance to the contact set (multi-source Dijkstra).
    std::vector<double> dist(cells, std::numeric_limits<double>::infinity());
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (std::size_t k = 0; k < cells; ++k) {
        if (contact[k]) {
            dist[k] = 0.0;
            heap.emplace(0.0, static_cast<int>(k));
        }
    }
    while (!heap.empty()) {
        const auto [d, k] = heap.top();
        heap.pop();
        if (d > dist[static_cast<std::size_t>(k)]) {
            continue;
        }
        const int i = k % g.nx;
        const int j = k / g.nx;
        for (int n = 0; n < 8; ++n) {
            const int ni = i + kDi[n];
            const int nj = j + kDj[n];
            if (!g.inside(ni, nj)) {
                continue;
            }
            const auto nk = static_cast<std::size_t>(g.index(ni, nj));
            if (!free[nk] || !passable(g.at(i, j), g.at(ni, nj))) {
                continue;
            }
            const double nd = d + g.h * ((kDi[n] != 0 && kDj[n] != 0) ? std::sqrt(2.0) : 1.0);
            if (nd < dist[nk]) {
                dist[nk] = nd;
                heap.emplace(nd, static_cast<int>(nk));
            }
        }
    }

    report.min_time_to_contact = std::numeric_limits<double>::infinity();
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const auto k = static_cast<std::size_t>(g.index(i, j));
            if (!undetected[k]) {
                continue;
            }
            ++report.undetected_cells;
            // One grid step of slack keeps the bound conservative for off-grid positions.
            const double t = std::max(0.0, dist[k] - g.h) / params.walk_speed;
            if (contact[k]) {
                report.reachable_undetected_contact = true;
            }
            if (t < report.min_time_to_contact) {
                report.min_time_to_contact = contact[k] ? 0.0 : t;
                report.worst_point = g.at(i, j);
            }
        }
    }
    return report;
}

}  // namespace hazardforge
