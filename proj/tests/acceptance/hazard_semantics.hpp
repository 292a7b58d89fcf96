#pragma once

// Trace predicates describing what kind of hazard a replayed action sequence is.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hazardforge/search.hpp"

namespace hazard_semantics {

using namespace hazardforge;

inline std::vector<SubstepRecord> flatten(const std::vector<StepInfo>& steps) {
    std::vector<SubstepRecord> out;
    for (const auto& s : steps) {
        out.insert(out.end(), s.substep_trace.begin(), s.substep_trace.end());
    }
    return out;
}

inline std::optional<std::size_t> first_unsafe(const std::vector<SubstepRecord>& recs) {
    for (std::size_t i = 0; i < recs.size(); ++i) {
        if (recs[i].obs.unsafe) {
            return i;
        }
    }
    return std::nullopt;
}

inline std::optional<std::size_t> first_detection(const std::vector<SubstepRecord>& recs, const Scenario& sc,
                                                  std::string_view kind) {
    for (std::size_t i = 0; i < recs.size(); ++i) {
        for (std::size_t k = 0; k < sc.sensors().size(); ++k) {
            if (recs[i].detections[k] && sc.sensors()[k].kind_name() == kind) {
                return i;
            }
        }
    }
    return std::nullopt;
}

/// The scanner saw the human before the contact, and the robot was still
/// moving no faster than nominal when it happened.
inline bool detected_before_contact(const std::vector<StepInfo>& steps, const Scenario& sc, std::string* why) {
    const auto recs = flatten(steps);
    const auto hit = first_unsafe(recs);
    if (!hit) {
        *why = "no unsafe state";
        return false;
    }
    const auto seen = first_detection(recs, sc, "scanner_zone");
    if (!seen || *seen >= *hit) {
        *why = "contact without earlier scanner detection";
        return false;
    }
    const double v = recs[*hit].obs.v_r;
    if (!(v > 0.0) || v > sc.robot().nominal_speed + 1e-12) {
        *why = "robot speed at contact outside (0, nominal]";
        return false;
    }
    return true;
}

/// The light curtain fired at or before the contact.
inline bool crossed_curtain(const std::vector<StepInfo>& steps, const Scenario& sc, std::string* why) {
    const auto recs = flatten(steps);
    const auto hit = first_unsafe(recs);
    if (!hit) {
        *why = "no unsafe state";
        return false;
    }
    const auto crossed = first_detection(recs, sc, "light_curtain");
    if (!crossed || *crossed > *hit) {
        *why = "contact without a curtain crossing";
        return false;
    }
    return true;
}

/// Openings between two collinear wall pieces that no light curtain covers.
inline std::vector<Segment> fence_gaps(const Scenario& sc) {
    std::vector<Segment> gaps;
    const auto& walls = sc.walls();
    for (std::size_t i = 0; i < walls.size(); ++i) {
        for (std::size_t j = i + 1; j < walls.size(); ++j) {
            const Segment& a = walls[i];
            const Segment& b = walls[j];
            const Vec2 dir = a.b - a.a;
            const double len = std::sqrt(dot(dir, dir));
            const auto off_line = [&](Vec2 p) { return std::abs(cross(dir, p - a.a)) / len > 1e-9; };
            if (off_line(b.a) || off_line(b.b)) {
                continue;
            }
            // positions along a's direction
            const auto at = [&](Vec2 p) { return dot(p - a.a, dir) / len; };
            double a_lo = std::min(at(a.a), at(a.b)), a_hi = std::max(at(a.a), at(a.b));
            double b_lo = std::min(at(b.a), at(b.b)), b_hi = std::max(at(b.a), at(b.b));
            double lo = 0.0, hi = 0.0;
            if (a_hi < b_lo - 1e-9) {
                lo = a_hi;
                hi = b_lo;
            } else if (b_hi < a_lo - 1e-9) {
                lo = b_hi;
                hi = a_lo;
            } else {
                continue;
            }
            const Vec2 unit = (1.0 / len) * dir;
            const Segment gap{a.a + lo * unit, a.a + hi * unit};
            bool curtained = false;
            for (const auto& s : sc.sensors()) {
                if (const auto* c = std::get_if<LightCurtain>(&s.kind)) {
                    const Vec2 mid = 0.5 * (gap.a + gap.b);
                    curtained = curtained || distance_point_segment(mid, c->line) < 1e-6;
                }
            }
            if (!curtained) {
                gaps.push_back(gap);
            }
        }
    }
    return gaps;
}

/// Every robot point in contact is reached along feet -> shoulder -> point
/// through the removed fence piece.
inline bool reached_through_gap(const std::vector<StepInfo>& steps, const Scenario& sc, std::string* why) {
    const auto recs = flatten(steps);
    const auto hit = first_unsafe(recs);
    if (!hit) {
        *why = "no unsafe state";
        return false;
    }
    const auto gaps = fence_gaps(sc);
    if (gaps.size() != 1) {
        *why = "cell has " + std::to_string(gaps.size()) + " uncovered fence openings";
        return false;
    }
    const auto& rec = recs[*hit];
    const HumanParams& params = sc.human_params();
    const Vec2 feet = rec.human.position;
    const Vec2 shoulder = shoulder_center(rec.human, params);
    int contacts = 0;
    for (const auto& p : rec.points) {
        if (!reach_contains(rec.human, p.position, sc.walls(), params)) {
            continue;
        }
        ++contacts;
        if (!segments_intersect({feet, shoulder}, gaps[0]) && !segments_intersect({shoulder, p.position}, gaps[0])) {
            *why = "contact with \"" + std::string(p.name) + "\" does not pass the fence opening";
            return false;
        }
    }
    if (contacts == 0) {
        *why = "no contacting robot point";
        return false;
    }
    return true;
}

}  // namespace hazard_semantics
