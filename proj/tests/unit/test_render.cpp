#include <sstream>

#include "doctest.h"
#include "hazardforge/render.hpp"

using namespace hazardforge;

namespace {

std::vector<TraceRecord> records_of(const Scenario& sc, const std::vector<Action>& actions) {
    std::ostringstream os;
    write_trace(os, replay(sc, actions), sc);
    std::istringstream in(os.str());
    return read_trace(in);
}

std::vector<Action> first_unsafe_pair(const Scenario& sc) {
    const RewardConfig two{2, 0.0};
    const WorldState s0 = init(sc);
    for (int a = 0; a < kActionCount; ++a) {
        const auto [s1, i1] = step_action(s0, action_from_index(a), sc, two);
        if (i1.unsafe_hit) {
            return {action_from_index(a)};
        }
        for (int b = 0; b < kActionCount; ++b) {
            if (step_action(s1, action_from_index(b), sc, two).second.unsafe_hit) {
                return {action_from_index(a), action_from_index(b)};
            }
        }
    }
    return {};
}

}  // namespace

TEST_CASE("a frame is a standalone SVG document") {
    const Scenario sc = builtin_scenario("s2-elbow-bay");
    const auto recs = records_of(sc, {action_from_index(0)});
    const std::string svg = render_svg(sc, recs.front());
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("class=\"unsafe\"") == std::string::npos);
    CHECK(svg == render_svg(sc, recs.front()));
}

TEST_CASE("unsafe frames are marked") {
    const Scenario sc = builtin_scenario("mini-reach");
    const auto actions = first_unsafe_pair(sc);
    REQUIRE_FALSE(actions.empty());
    const auto recs = records_of(sc, actions);
    REQUIRE(recs.back().unsafe);
    const std::string svg = render_svg(sc, recs.back());
    const auto root_end = svg.find('>');
    CHECK(svg.substr(0, root_end).find("class=\"unsafe\"") != std::string::npos);
}

TEST_CASE("frame sampling") {
    const Scenario sc = builtin_scenario("mini-reach");
    const auto actions = first_unsafe_pair(sc);
    auto recs = records_of(sc, actions);
    std::size_t unsafe_at = 0;
    while (!recs[unsafe_at].unsafe) {
        ++unsafe_at;
    }

    const auto all = render_frames(sc, recs, 1);
    CHECK(all.size() == recs.size());
    CHECK(all.front().filename == "frame_0000.svg");

    // a stride that skips the unsafe record still draws it
    const int every = static_cast<int>(recs.size()) + 1;
    const auto sparse = render_frames(sc, recs, every);
    if (unsafe_at == 0) {
        CHECK(sparse.size() == 1);
    } else {
        REQUIRE(sparse.size() == 2);
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%04zu.svg", unsafe_at);
        CHECK(sparse[1].filename == name);
    }

    CHECK_THROWS_AS(render_frames(sc, recs, 0), std::invalid_argument);
    CHECK_THROWS_AS(render_frames(builtin_scenario("s1-scanner-width"), recs, 1), TraceFormatError);
}
