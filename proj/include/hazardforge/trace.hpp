#pragma once

// Byte-stable serialization of traces, search summaries and scenario references.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hazardforge/cell.hpp"
#include "hazardforge/search.hpp"
#include "hazardforge/world.hpp"

namespace hazardforge {

inline constexpr int kTraceFormatVersion = 1;
inline constexpr int kSummaryFormatVersion = 1;

/// Nine significant digits, locale independent.
std::string format_number(double v);

/// Unknown builtin name or unreadable file behind a scenario reference.
class ScenarioRefError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Resolves "builtin:NAME" or a file path. Load/validation failures propagate
/// as ScenarioParseError / ScenarioValidationError.
Scenario resolve_scenario(std::string_view ref);

std::string trace_record_json(const SubstepRecord& rec, const Scenario& scenario);
void write_trace(std::ostream& out, const std::vector<StepInfo>& steps, const Scenario& scenario);

class TraceFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TracePoint {
    std::string name;
    Vec2 position;
    double speed = 0.0;
};

struct TraceSensor {
    std::string kind;
    bool detected = false;
};

struct TraceRecord {
    double t = 0.0;
    int step = 0;
    int substep = 0;
    HumanState human;
    double u = 0.0;
    double lambda = 0.0;
    std::string mode;
    std::vector<TracePoint> points;
    std::vector<TraceSensor> sensors;
    double d_hr = 0.0;
    double v_r = 0.0;
    double c_s = 0.0;
    bool unsafe = false;
};

/// Parses a JSONL trace; rejects records whose "v" is not the supported version.
std::vector<TraceRecord> read_trace(std::istream& in);
/// Throws TraceFormatError when the records do not describe this scenario
/// (robot point names or sensor kinds differ).
void check_trace_matches(const std::vector<TraceRecord>& records, const Scenario& scenario);

std::string summary_json(const Scenario& scenario, const SearchConfig& cfg, const SearchOutcome& outcome);

/// Reads action indices from either a summary JSON (hazard_actions) or a plain
/// list of integers separated by whitespace or commas. Throws std::invalid_argument
/// on malformed input and std::out_of_range for indices outside [0,30).
std::vector<Action> parse_action_list(std::string_view text);

}  // namespace hazardforge
