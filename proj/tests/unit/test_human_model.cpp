#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "hazardforge/human_model.hpp"

using namespace hazardforge;

namespace {

HumanState act(HumanState h, Action a, const std::vector<Segment>& walls = {}, const HumanParams& p = {}) {
    for (int i = 0; i < 4; ++i) {
        h = substep_human(h, a, 0.05, walls, i, 4, p);
    }
    return h;
}

}  // namespace

TEST_CASE("action alphabet ordering") {
    const auto all = enumerate_actions();
    CHECK(all.size() == 30);
    CHECK(all[0] == Action{WalkPrimitive::WalkForward, BendTarget::Upright});
    CHECK(all[29] == Action{WalkPrimitive::TurnRight90, BendTarget::ForwardLeft});
    std::set<int> seen;
    for (int i = 0; i < 30; ++i) {
        CHECK(all[i].index() == i);
        CHECK(action_from_index(i) == all[i]);
        seen.insert(static_cast<int>(all[i].walk) * 10 + static_cast<int>(all[i].bend));
    }
    CHECK(seen.size() == 30);
    CHECK_THROWS_AS(action_from_index(30), std::out_of_range);
    CHECK_THROWS_AS(action_from_index(-1), std::out_of_range);
}

TEST_CASE("walking and turning") {
    const HumanParams p;
    const HumanState h0{{0, 0}, 0.0, 0.0, 0.0};
    const Action walk{WalkPrimitive::WalkForward, BendTarget::Upright};

    const HumanState one = substep_human(h0, walk, 0.05, {}, 0, 4, p);
    CHECK(one.position.x == doctest::Approx(0.08));
    CHECK(one.position.y == doctest::Approx(0.0));

    const HumanState four = act(h0, walk);
    CHECK(std::abs(four.position.x - 0.32) < 1e-12);

    const HumanState turned = act(h0, {WalkPrimitive::TurnLeft90, BendTarget::Upright});
    CHECK(turned.heading == doctest::Approx(kPi / 2));
    CHECK(turned.position == h0.position);

    const HumanState right = act(h0, {WalkPrimitive::TurnRight45, BendTarget::Upright});
    CHECK(right.heading == doctest::Approx(-kPi / 4));
}

TEST_CASE("bending moves linearly to the target within one action") {
    const HumanParams p;
    HumanState h{{0, 0}, 0.0, 0.0, 0.0};
    const Action lean{WalkPrimitive::TurnLeft45, BendTarget::Forward};
    for (int i = 0; i < 4; ++i) {
        h = substep_human(h, lean, 0.05, {}, i, 4, p);
        CHECK(h.bend_forward == doctest::Approx(55.0 * (i + 1) / 4.0));
        CHECK(h.bend_lateral == 0.0);
    }
    CHECK(h.bend_forward == 55.0);

    // back from a partial posture to upright still lands exactly
    h.bend_forward = 20.0;
    h.bend_lateral = -10.0;
    h = act(h, {WalkPrimitive::WalkForward, BendTarget::Right});
    CHECK(h.bend_forward == 0.0);
    CHECK(h.bend_lateral == 35.0);
}

TEST_CASE("heading stays normalized and bends stay in range over random sequences") {
    const HumanParams p;
    std::mt19937_64 gen(5);
    std::uniform_int_distribution<int> pick(0, 29);
    const std::vector<Segment> box = {{{-3, -3}, {3, -3}}, {{3, -3}, {3, 3}}, {{3, 3}, {-3, 3}}, {{-3, 3}, {-3, -3}}};
    for (int run = 0; run < 200; ++run) {
        HumanState h{{0, 0}, 0.0, 0.0, 0.0};
        for (int k = 0; k < 20; ++k) {
            const Action a = action_from_index(pick(gen));
            for (int i = 0; i < 4; ++i) {
                h = substep_human(h, a, 0.05, box, i, 4, p);
                REQUIRE(h.heading > -kPi);
                REQUIRE(h.heading <= kPi);
                REQUIRE(h.bend_forward >= 0.0);
                REQUIRE(h.bend_forward <= 55.0);
                REQUIRE(std::abs(h.bend_lateral) <= 35.0);
                REQUIRE(std::abs(h.position.x) <= 2.8 + 1e-9);
                REQUIRE(std::abs(h.position.y) <= 2.8 + 1e-9);
            }
        }
    }
}

TEST_CASE("walls stop the footprint") {
    const std::vector<Segment> wall = {{{0.5, -1}, {0.5, 1}}};
    const HumanState h = act({{0, 0}, 0.0, 0.0, 0.0}, {WalkPrimitive::WalkForward, BendTarget::Upright}, wall);
    CHECK(h.position.x == doctest::Approx(0.3));
}

TEST_CASE("shoulder position") {
    const HumanParams p;
    HumanState h{{0, 0}, 0.0, 0.0, 0.0};
    CHECK(shoulder_center(h, p) == h.position);

    h.bend_forward = 55.0;
    Vec2 s = shoulder_center(h, p);
    CHECK(s.x == doctest::Approx(0.4096).epsilon(1e-4));
    CHECK(s.y == doctest::Approx(0.0));

    h.bend_forward = 0.0;
    h.bend_lateral = -35.0;
    s = shoulder_center(h, p);
    CHECK(s.x == doctest::Approx(0.0));
    CHECK(s.y == doctest::Approx(0.2868).epsilon(1e-4));

    // combined bends never put the shoulder beyond the torso length
    h.bend_forward = 55.0;
    h.bend_lateral = 35.0;
    CHECK(norm(shoulder_center(h, p) - h.position) <= p.torso_length + 1e-12);
}

TEST_CASE("reach distance and containment") {
    const HumanParams p;
    const HumanState h{{0, 0}, 0.0, 0.0, 0.0};
    CHECK(reach_distance(h, {0, 0}, p) == 0.0);
    CHECK(reach_distance(h, {1.0, 0}, p) == doctest::Approx(0.21));
    CHECK(reach_distance(h, {0.5, 0}, p) == 0.0);

    CHECK(reach_contains(h, {0.5, 0}, {}, p));
    const std::vector<Segment> wall = {{{0.25, -1}, {0.25, 1}}};
    CHECK_FALSE(reach_contains(h, {0.5, 0}, wall, p));
    CHECK_FALSE(reach_contains(h, {1.0, 0}, {}, p));
}

TEST_CASE("leaning over a wall from the feet is occluded at the torso") {
    const HumanParams p;
    HumanState h{{0, 0}, 0.0, 55.0, 0.0};  // shoulder at x = 0.41
    const std::vector<Segment> wall = {{{0.3, -1}, {0.3, 1}}};
    // the arm line alone (shoulder to target) would be clear
    CHECK_FALSE(segment_hits_any({shoulder_center(h, p), {0.6, 0}}, wall));
    CHECK_FALSE(reach_contains(h, {0.6, 0}, wall, p));
}

TEST_CASE("human parameter validation") {
    HumanParams p;
    CHECK_NOTHROW(validate(p));
    p.walk_speed = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = HumanParams{};
    p.max_forward_flexion = 120.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("normalize_angle") {
    CHECK(normalize_angle(kPi) == doctest::Approx(kPi));
    CHECK(normalize_angle(-kPi) == doctest::Approx(kPi));
    CHECK(normalize_angle(3 * kPi / 2) == doctest::Approx(-kPi / 2));
    CHECK(normalize_angle(0.25) == doctest::Approx(0.25));
}
