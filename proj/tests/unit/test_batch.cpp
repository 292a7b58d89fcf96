#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "hazardforge/batch.hpp"
#include "hazardforge/trace.hpp"

using namespace hazardforge;

namespace {

BatchSpec small_grid() {
    BatchSpec spec;
    spec.scenarios = {"builtin:mini-reach", "builtin:safe-baseline"};
    spec.algorithms = {Algorithm::Random, Algorithm::Mcts1, Algorithm::Mcts2};
    spec.seeds = {1, 2, 3};
    spec.max_episodes = 40;
    spec.episode_len = 2;
    return spec;
}

}  // namespace

TEST_CASE("batch rows come back in grid order whatever the thread count") {
    const BatchSpec spec = small_grid();
    const auto serial = run_batch(spec, 1);
    const auto parallel = run_batch(spec, 4);
    REQUIRE(serial.size() == 18);
    REQUIRE(parallel.size() == 18);
    std::size_t i = 0;
    for (const char* name : {"mini-reach", "safe-baseline"}) {
        for (auto algo : spec.algorithms) {
            for (auto seed : spec.seeds) {
                CHECK(serial[i].scenario == name);
                CHECK(serial[i].algorithm == algo);
                CHECK(serial[i].seed == seed);
                CHECK(parallel[i].found == serial[i].found);
                CHECK(parallel[i].episodes_used == serial[i].episodes_used);
                ++i;
            }
        }
    }
    for (const auto& row : serial) {
        if (row.scenario == "safe-baseline") {
            CHECK_FALSE(row.found);
        }
    }
}

TEST_CASE("batch rows agree with single searches") {
    const BatchSpec spec = small_grid();
    const auto rows = run_batch(spec, 2);
    const Scenario mini = builtin_scenario("mini-reach");
    for (const auto& row : rows) {
        if (row.scenario != "mini-reach") {
            continue;
        }
        SearchConfig cfg;
        cfg.algorithm = row.algorithm;
        cfg.seed = row.seed;
        cfg.max_episodes = spec.max_episodes;
        cfg.episode_len = spec.episode_len;
        const auto out = search(mini, cfg);
        CHECK(out.found == row.found);
        CHECK(out.episodes_used == row.episodes_used);
    }
}

TEST_CASE("aggregation counts failures at the episode cap") {
    std::vector<BatchRow> rows = {
        {"a", Algorithm::Random, 1, true, 10},
        {"a", Algorithm::Random, 2, false, 200},
        {"a", Algorithm::Mcts1, 1, true, 4},
        {"b", Algorithm::Random, 1, false, 200},
    };
    const auto cells = aggregate(rows, 200);
    REQUIRE(cells.size() == 3);
    CHECK(cells[0].scenario == "a");
    CHECK(cells[0].algorithm == Algorithm::Random);
    CHECK(cells[0].success_count == 1);
    CHECK(cells[0].total == 2);
    CHECK(cells[0].mean_episodes == doctest::Approx(105.0));
    CHECK(cells[1].mean_episodes == doctest::Approx(4.0));
    CHECK(cells[2].success_count == 0);
    CHECK(cells[2].mean_episodes == doctest::Approx(200.0));
    const std::string table = format_table(cells);
    CHECK(table.find("1/2") != std::string::npos);
}

TEST_CASE("CSV output") {
    const std::vector<BatchRow> rows = {
        {"mini-reach", Algorithm::Mcts2, 7, true, 12},
        {"mini-reach", Algorithm::Random, 8, false, 200},
    };
    const std::string csv = format_csv(rows);
    std::istringstream in(csv);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        lines.push_back(line);
    }
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "scenario,algorithm,seed,found,episodes_used");
    CHECK(lines[1] == "mini-reach,mcts2,7,true,12");
    CHECK(lines[2] == "mini-reach,random,8,false,200");
}

TEST_CASE("batch validation") {
    BatchSpec spec = small_grid();
    CHECK_NOTHROW(validate(spec));
    spec.seeds.clear();
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec = small_grid();
    spec.algorithms.clear();
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec = small_grid();
    spec.max_episodes = 0;
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);

    spec = small_grid();
    spec.scenarios.push_back("builtin:missing");
    CHECK_THROWS_AS(run_batch(spec, 1), ScenarioRefError);
}

TEST_CASE("thread count from the environment") {
    ::setenv("HAZARDFORGE_THREADS", "3", 1);
    CHECK(default_thread_count() == 3);
    ::setenv("HAZARDFORGE_THREADS", "0", 1);
    CHECK(default_thread_count() >= 1);
    ::setenv("HAZARDFORGE_THREADS", "lots", 1);
    CHECK(default_thread_count() >= 1);
    ::unsetenv("HAZARDFORGE_THREADS");
    CHECK(default_thread_count() >= 1);
}
