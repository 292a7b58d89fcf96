#include "hazardforge/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace hazardforge {
namespace {

constexpr double kScale = 80.0;   // px per meter
constexpr double kMargin = 0.5;   // meters around the scene
constexpr int kReachRays = 180;

std::string num(double v) {
    // round to 1/100 px so identical geometry always prints identically
    const double r = std::round(v * 100.0) / 100.0;
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), r == 0.0 ? 0.0 : r, std::chars_format::fixed, 2);
    std::string s(buf, res.ptr);
    while (!s.empty() && s.back() == '0') {
        s.pop_back();
    }
    if (!s.empty() && s.back() == '.') {
        s.pop_back();
    }
    return s;
}

struct Frame {
    double min_x, min_y, max_x, max_y;

    double px(double x) const { return (x - min_x + kMargin) * kScale; }
    double py(double y) const { return (max_y - y + kMargin) * kScale; }
    double width() const { return (max_x - min_x + 2 * kMargin) * kScale; }
    double height() const { return (max_y - min_y + 2 * kMargin) * kScale; }
    std::string point(Vec2 p) const { return num(px(p.x)) + "," + num(py(p.y)); }
};

Frame scene_frame(const Scenario& sc) {
    Frame f{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    auto add = [&f](Vec2 p) {
        f.min_x = std::min(f.min_x, p.x);
        f.min_y = std::min(f.min_y, p.y);
        f.max_x = std::max(f.max_x, p.x);
        f.max_y = std::max(f.max_y, p.y);
    };
    for (const auto& w : sc.walls()) {
        add(w.a);
        add(w.b);
    }
    for (const auto& v : sc.table().vertices()) {
        add(v);
    }
    for (const auto& s : sc.sensors()) {
        if (const auto* z = std::get_if<ScannerZone>(&s.kind)) {
            for (const auto& v : z->zone.vertices()) {
                add(v);
            }
        } else {
            const auto& c = std::get<LightCurtain>(s.kind);
            add(c.line.a);
            add(c.line.b);
        }
    }
    for (const auto& p : sc.robot().paths) {
        for (const auto& v : p.path.vertices()) {
            add(v);
        }
    }
    add(sc.human_start().position);
    return f;
}

std::string polygon_points(const Frame& f, const std::vector<Vec2>& pts) {
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out += (i ? " " : "") + f.point(pts[i]);
    }
    return out;
}

// Distance along the ray from `origin` in direction `dir` to the first wall, capped at `limit`.
double ray_length(Vec2 origin, Vec2 dir, double limit, const std::vector<Segment>& walls) {
    double best = limit;
    for (const auto& w : walls) {
        const Vec2 e = w.b - w.a;
        const double denom = cross(dir, e);
        if (std::abs(denom) < 1e-12) {
            continue;
        }
        const Vec2 d = w.a - origin;
        const double t = cross(d, e) / denom;
        const double s = cross(d, dir) / denom;
        if (t >= 0.0 && s >= 0.0 && s <= 1.0) {
            best = std::min(best, t);
        }
    }
    return best;
}

}  // namespace

std::string render_svg(const Scenario& sc, const TraceRecord& rec) {
    const Frame f = scene_frame(sc);
    const HumanParams& hp = sc.human_params();
    std::string out;
    out.reserve(8192);
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\"";
    if (rec.unsafe) {
        out += " class=\"unsafe\"";
    }
    out += " width=\"" + num(f.width()) + "\" height=\"" + num(f.height()) + "\" viewBox=\"0 0 " + num(f.width()) +
           " " + num(f.height()) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + num(f.width()) + "\" height=\"" + num(f.height()) + "\" fill=\"white\"";
    if (rec.unsafe) {
        out += " stroke=\"red\" stroke-width=\"6\"";
    }
    out += "/>\n";

    out += "<polygon class=\"table\" points=\"" + polygon_points(f, sc.table().vertices()) +
           "\" fill=\"#b0b0b0\" stroke=\"#808080\"/>\n";

    for (std::size_t i = 0; i < sc.sensors().size(); ++i) {
        const bool hit = i < rec.sensors.size() && rec.sensors[i].detected;
        const std::string color = hit ? "#ff8c00" : "#1e90ff";
        if (const auto* z = std::get_if<ScannerZone>(&sc.sensors()[i].kind)) {
            out += "<polygon class=\"scanner\" points=\"" + polygon_points(f, z->zone.vertices()) + "\" fill=\"" +
                   color + "\" fill-opacity=\"0.2\" stroke=\"" + color + "\"/>\n";
        } else {
            const auto& c = std::get<LightCurtain>(sc.sensors()[i].kind);
            out += "<line class=\"curtain\" x1=\"" + num(f.px(c.line.a.x)) + "\" y1=\"" + num(f.py(c.line.a.y)) +
                   "\" x2=\"" + num(f.px(c.line.b.x)) + "\" y2=\"" + num(f.py(c.line.b.y)) + "\" stroke=\"" + color +
                   "\" stroke-width=\"3\" stroke-dasharray=\"8,6\"/>\n";
        }
    }

    for (const auto& w : sc.walls()) {
        out += "<line class=\"wall\" x1=\"" + num(f.px(w.a.x)) + "\" y1=\"" + num(f.py(w.a.y)) + "\" x2=\"" +
               num(f.px(w.b.x)) + "\" y2=\"" + num(f.py(w.b.y)) + "\" stroke=\"black\" stroke-width=\"4\"/>\n";
    }

    for (const auto& p : sc.robot().paths) {
        out += "<polyline class=\"robot-path\" points=\"" + polygon_points(f, p.path.vertices()) +
               "\" fill=\"none\" stroke=\"#6a5acd\" stroke-width=\"1\" stroke-dasharray=\"3,3\"/>\n";
    }
    for (const auto& p : rec.points) {
        out += "<circle class=\"robot-point\" cx=\"" + num(f.px(p.position.x)) + "\" cy=\"" + num(f.py(p.position.y)) +
               "\" r=\"6\" fill=\"#6a5acd\"/>\n";
    }

    // reach disc, cut back wherever a wall blocks the line from the shoulder
    HumanState h = rec.human;
    const Vec2 shoulder = shoulder_center(h, hp);
    const bool torso_clear = !segment_hits_any(Segment{h.position, shoulder}, sc.walls());
    if (torso_clear) {
        std::vector<Vec2> rim;
        rim.reserve(kReachRays);
        for (int i = 0; i < kReachRays; ++i) {
            const double a = 2.0 * kPi * i / kReachRays;
            const Vec2 dir{std::cos(a), std::sin(a)};
            rim.push_back(shoulder + dir * ray_length(shoulder, dir, hp.reach_radius(), sc.walls()));
        }
        out += "<polygon class=\"reach\" points=\"" + polygon_points(f, rim) +
               "\" fill=\"red\" fill-opacity=\"0.2\" stroke=\"red\" stroke-opacity=\"0.5\"/>\n";
    }

    out += "<circle class=\"human\" cx=\"" + num(f.px(h.position.x)) + "\" cy=\"" + num(f.py(h.position.y)) +
           "\" r=\"" + num(hp.footprint_radius * kScale) + "\" fill=\"#2e8b57\" fill-opacity=\"0.6\" stroke=\"#2e8b57\"/>\n";
    const Vec2 tip = h.position + forward_dir(h) * (hp.footprint_radius + 0.15);
    out += "<line class=\"heading\" x1=\"" + num(f.px(h.position.x)) + "\" y1=\"" + num(f.py(h.position.y)) +
           "\" x2=\"" + num(f.px(tip.x)) + "\" y2=\"" + num(f.py(tip.y)) + "\" stroke=\"#2e8b57\" stroke-width=\"3\"/>\n";
    out += "<circle class=\"shoulder\" cx=\"" + num(f.px(shoulder.x)) + "\" cy=\"" + num(f.py(shoulder.y)) +
           "\" r=\"4\" fill=\"#2e8b57\"/>\n";

    out += "<text x=\"8\" y=\"18\" font-family=\"monospace\" font-size=\"14\">t=" + format_number(rec.t) +
           " step=" + std::to_string(rec.step) + " substep=" + std::to_string(rec.substep) +
           " d_hr=" + format_number(rec.d_hr) + " v_r=" + format_number(rec.v_r) + "</text>\n";
    out += "</svg>\n";
    return out;
}

std::vector<SvgFrame> render_frames(const Scenario& sc, const std::vector<TraceRecord>& records, int every) {
    if (every < 1) {
        throw std::invalid_argument("--every must be at least 1");
    }
    check_trace_matches(records, sc);
    std::vector<SvgFrame> out;
    bool unsafe_seen = false;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const bool sampled = i % static_cast<std::size_t>(every) == 0;
        const bool first_unsafe = records[i].unsafe && !unsafe_seen;
        unsafe_seen = unsafe_seen || records[i].unsafe;
        if (!sampled && !first_unsafe) {
            continue;
        }
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%04zu.svg", i);
        out.push_back({name, render_svg(sc, records[i])});
    }
    return out;
}

}  // namespace hazardforge
