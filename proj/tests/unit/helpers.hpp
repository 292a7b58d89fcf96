#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "hazardforge/cell.hpp"

namespace test_support {

using namespace hazardforge;

inline std::vector<Segment> box_walls(double half) {
    return {{{-half, -half}, {half, -half}},
            {{half, -half}, {half, half}},
            {{half, half}, {-half, half}},
            {{-half, half}, {-half, -half}}};
}

/// 10 x 10 m room, small table in a corner, one robot path, human at the
/// origin facing +x. Tests adjust the spec before building the Scenario.
inline ScenarioSpec open_room(std::vector<Vec2> tcp_loop) {
    ScenarioSpec s;
    s.name = "test-room";
    s.walls = box_walls(5.0);
    s.table = Polygon({{-4.5, -4.5}, {-4.0, -4.5}, {-4.0, -4.0}, {-4.5, -4.0}});
    s.robot.paths.push_back({"tcp", Polyline(std::move(tcp_loop), true)});
    s.human_start = {0.0, 0.0};
    s.human_heading_deg = 0.0;
    return s;
}

/// Small square loop whose first vertex is `at`.
inline std::vector<Vec2> loop_at(Vec2 at, double size = 0.5) {
    return {at, at + Vec2{size, 0}, at + Vec2{size, size}, at + Vec2{0, size}};
}

/// Scratch directory removed on scope exit.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("hf_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void spit(const std::string& path, const std::string& text) {
    std::ofstream(path, std::ios::binary) << text;
}

}  // namespace test_support
