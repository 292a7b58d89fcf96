#include <string>

#include "doctest.h"
#include "hazardforge/cell.hpp"
#include "json.hpp"

using namespace hazardforge;
using json = nlohmann::ordered_json;

namespace {

json builtin_doc(std::string_view name) { return json::parse(builtin_scenario_document(name)); }

std::string validation_field(const json& doc) {
    try {
        load_scenario(doc.dump());
    } catch (const ScenarioValidationError& e) {
        return e.field();
    }
    return "";
}

RobotSpec rect_robot() {
    // 2 x 1 rectangle (length 6) and a 1.5 x 0 shuttle (length 3)
    RobotSpec spec;
    spec.paths.push_back({"tcp", Polyline({{0, 0}, {2, 0}, {2, 1}, {0, 1}}, true)});
    spec.paths.push_back({"elbow", Polyline({{0, 0}, {1.5, 0}}, true)});
    spec.nominal_speed = 1.5;
    spec.stopping_time = 0.5;
    return spec;
}

}  // namespace

TEST_CASE("every builtin loads and round-trips through serialization") {
    for (auto name : kBuiltinNames) {
        CAPTURE(name);
        const Scenario sc = builtin_scenario(name);
        CHECK(sc.name() == name);
        const Scenario again = load_scenario(serialize_scenario(sc));
        CHECK(again == sc);
        CHECK(serialize_scenario(again) == serialize_scenario(sc));
    }
    CHECK_THROWS_AS(builtin_scenario("s4-nonexistent"), std::invalid_argument);
}

TEST_CASE("builtin cells share the U-shaped table") {
    const Scenario base = builtin_scenario("safe-baseline");
    const auto& table = base.table();
    double min_x = 1e9, max_x = -1e9, min_y = 1e9, max_y = -1e9;
    for (const auto& v : table.vertices()) {
        min_x = std::min(min_x, v.x);
        max_x = std::max(max_x, v.x);
        min_y = std::min(min_y, v.y);
        max_y = std::max(max_y, v.y);
    }
    CHECK(max_x - min_x == doctest::Approx(2.4));
    CHECK(max_y - min_y == doctest::Approx(1.6));
    CHECK(min_x + max_x == doctest::Approx(0.0));
    CHECK(min_y + max_y == doctest::Approx(0.0));
    for (auto name : {"s1-scanner-width", "s2-elbow-bay", "s3-fence-gap"}) {
        CHECK(builtin_scenario(name).table() == table);
    }
}

TEST_CASE("scenario validation names the offending field") {
    SUBCASE("start inside a scanner zone") {
        json doc = builtin_doc("s1-scanner-width");
        doc["human"]["start"] = doc["sensors"][0]["polygon"][0];
        CHECK(validation_field(doc) == "human_start");
    }
    SUBCASE("open robot path") {
        json doc = builtin_doc("s1-scanner-width");
        auto& tcp = doc["robot"]["paths"]["tcp"];
        tcp.erase(tcp.size() - 1);
        CHECK(validation_field(doc).rfind("robot.point_paths", 0) == 0);
    }
    SUBCASE("unknown field") {
        json doc = builtin_doc("safe-baseline");
        doc["colour"] = "red";
        CHECK_FALSE(validation_field(doc).empty());
    }
    SUBCASE("non-positive timing") {
        json doc = builtin_doc("safe-baseline");
        doc["robot"]["stopping_time"] = 0.0;
        CHECK(validation_field(doc).find("stopping_time") != std::string::npos);
    }
    SUBCASE("unsupported format version") {
        json doc = builtin_doc("safe-baseline");
        doc["format_version"] = 2;
        CHECK_FALSE(validation_field(doc).empty());
    }
}

TEST_CASE("malformed documents are parse errors") {
    CHECK_THROWS_AS(load_scenario("{\"format_version\": 1,"), ScenarioParseError);
    CHECK_THROWS_AS(load_scenario("[]"), std::runtime_error);
}

TEST_CASE("robot phase advance and stop chain") {
    const RobotSpec spec = rect_robot();
    CHECK(spec.longest_path() == doctest::Approx(6.0));

    RobotState r;
    RobotState next = step_robot(r, spec, 0.05, false);
    CHECK(next.phase == doctest::Approx(0.0125));
    CHECK(next.mode == RobotMode::Running);

    // deceleration: lambda falls linearly over the stopping time
    r = step_robot(r, spec, 0.05, true);
    CHECK(r.mode == RobotMode::Decelerating);
    for (int i = 1; i < 5; ++i) {
        r = step_robot(r, spec, 0.05, false);
    }
    CHECK(r.speed_factor == doctest::Approx(0.5));
    for (int i = 0; i < 5; ++i) {
        r = step_robot(r, spec, 0.05, false);
    }
    CHECK(r.mode == RobotMode::Stopped);
    CHECK(r.speed_factor == 0.0);

    // latched standstill holds the phase whatever arrives
    const RobotState held = step_robot(r, spec, 0.05, true);
    CHECK(held == r);
}

TEST_CASE("robot point speeds scale with path length") {
    const RobotSpec spec = rect_robot();
    RobotState r;
    auto pts = robot_points(r, spec);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].name == "tcp");
    CHECK(pts[0].speed == doctest::Approx(1.5));
    CHECK(pts[1].speed == doctest::Approx(0.75));
    r.speed_factor = 0.0;
    for (const auto& p : robot_points(r, spec)) {
        CHECK(p.speed == 0.0);
    }
}

TEST_CASE("sensing") {
    const HumanParams hp;
    const SensorSpec zone{ScannerZone{Polygon({{1, -1}, {3, -1}, {3, 1}, {1, 1}})}, 0.1};
    const SensorSpec curtain{LightCurtain{{{0.5, -1}, {0.5, 1}}}, 0.1};
    const std::vector<SensorSpec> sensors = {zone, curtain};

    const HumanState inside{{2, 0}, 0.0, 0.0, 0.0};
    CHECK(sense(sensors, inside, inside, hp) == std::vector<bool>{true, false});

    const HumanState near{{0.85, 0}, 0.0, 0.0, 0.0};  // footprint edge overlaps the zone
    CHECK(sense(sensors, near, near, hp)[0]);

    const HumanState before{{0.4, 0}, 0.0, 0.0, 0.0};
    const HumanState after{{0.6, 0}, 0.0, 0.0, 0.0};
    CHECK(sense(sensors, before, after, hp) == std::vector<bool>{false, true});

    // upright beside the zone; leaning forward moves only the shoulder across the curtain
    const HumanState upright{{0.2, 0}, 0.0, 0.0, 0.0};
    const HumanState leaning{{0.2, 0}, 0.0, 55.0, 0.0};
    CHECK(sense(sensors, upright, leaning, hp) == std::vector<bool>{false, true});
}

TEST_CASE("separation check on the builtins") {
    const SeparationReport safe = certify_separation(builtin_scenario("safe-baseline"));
    CHECK_FALSE(safe.reachable_undetected_contact);
    CHECK(safe.undetected_cells > 0);
    CHECK(safe.min_time_to_contact >= safe.required_time + 0.1);

    // s1: every contact needs the footprint in the zone, but the zone is too shallow
    const SeparationReport s1 = certify_separation(builtin_scenario("s1-scanner-width"));
    CHECK_FALSE(s1.reachable_undetected_contact);
    CHECK(s1.min_time_to_contact < s1.required_time);
}

TEST_CASE("the s3 fence opening admits an arm but not a body") {
    const Scenario sc = builtin_scenario("s3-fence-gap");
    const double body = 2.0 * sc.human_params().footprint_radius;
    int openings = 0;
    const auto& walls = sc.walls();
    for (std::size_t i = 0; i < walls.size(); ++i) {
        for (std::size_t j = i + 1; j < walls.size(); ++j) {
            const Segment& a = walls[i];
            const Segment& b = walls[j];
            // pieces of the same vertical fence line
            if (a.a.x != a.b.x || b.a.x != b.b.x || a.a.x != b.a.x) {
                continue;
            }
            const double a_lo = std::min(a.a.y, a.b.y), a_hi = std::max(a.a.y, a.b.y);
            const double b_lo = std::min(b.a.y, b.b.y), b_hi = std::max(b.a.y, b.b.y);
            const double gap = std::max(b_lo - a_hi, a_lo - b_hi);
            if (gap > 0.0) {
                ++openings;
                CHECK(gap < body);
            }
        }
    }
    CHECK(openings == 1);
}
