#pragma once

// Top-view SVG frames of a recorded trace.

#include <string>
#include <vector>

#include "hazardforge/cell.hpp"
#include "hazardforge/trace.hpp"

namespace hazardforge {

struct SvgFrame {
    std::string filename;  // frame_NNNN.svg, NNNN = record index
    std::string svg;
};

/// One frame. The page transform depends only on the scenario, so frames of
/// the same cell overlay exactly.
std::string render_svg(const Scenario& scenario, const TraceRecord& record);

/// Frames for every `every`-th record plus the first unsafe record if the
/// sampling skipped it. Throws TraceFormatError on a trace/scenario mismatch
/// and std::invalid_argument if every < 1.
std::vector<SvgFrame> render_frames(const Scenario& scenario, const std::vector<TraceRecord>& records, int every);

}  // namespace hazardforge
