#include "hazardforge/trace.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace hazardforge {

using json = nlohmann::json;

std::string format_number(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

Scenario resolve_scenario(std::string_view ref) {
    constexpr std::string_view kPrefix = "builtin:";
    if (ref.substr(0, kPrefix.size()) == kPrefix) {
        const auto name = ref.substr(kPrefix.size());
        try {
            return load_scenario(builtin_scenario_document(name));
        } catch (const std::invalid_argument&) {
            throw ScenarioRefError("unknown builtin scenario reference \"" + std::string(ref) + "\"");
        }
    }
    std::ifstream in{std::string(ref), std::ios::binary};
    if (!in) {
        throw ScenarioRefError("cannot open scenario file \"" + std::string(ref) + "\"");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str());
}

namespace {

std::string json_string(std::string_view s) { return json(std::string(s)).dump(); }

const char* boolean(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string trace_record_json(const SubstepRecord& rec, const Scenario& scenario) {
    std::string out;
    out.reserve(512);
    out += "{\"v\":" + std::to_string(kTraceFormatVersion);
    out += ",\"t\":" + format_number(rec.t);
    out += ",\"step\":" + std::to_string(rec.step);
    out += ",\"substep\":" + std::to_string(rec.substep);
    out += ",\"human\":{\"x\":" + format_number(rec.human.position.x) + ",\"y\":" + format_number(rec.human.position.y) +
           ",\"heading_rad\":" + format_number(rec.human.heading) +
           ",\"bend_fwd_deg\":" + format_number(rec.human.bend_forward) +
           ",\"bend_lat_deg\":" + format_number(rec.human.bend_lateral) + "}";
    out += ",\"robot\":{\"u\":" + format_number(rec.robot.phase) + ",\"lambda\":" + format_number(rec.robot.speed_factor) +
           ",\"mode\":" + json_string(to_string(rec.robot.mode)) + ",\"points\":[";
    for (std::size_t i = 0; i < rec.points.size(); ++i) {
        const auto& p = rec.points[i];
        out += (i ? "," : "");
        out += "{\"name\":" + json_string(p.name) + ",\"x\":" + format_number(p.position.x) +
               ",\"y\":" + format_number(p.position.y) + ",\"speed\":" + format_number(p.speed) + "}";
    }
    out += "]},\"sensors\":[";
    for (std::size_t i = 0; i < rec.detections.size(); ++i) {
        out += (i ? "," : "");
        out += "{\"kind\":" + json_string(scenario.sensors()[i].kind_name()) + ",\"detected\":" + boolean(rec.detections[i]) + "}";
    }
    out += "],\"d_hr\":" + format_number(rec.obs.d_hr);
    out += ",\"v_r\":" + format_number(rec.obs.v_r);
    out += ",\"c_s\":" + format_number(rec.c_s);
    out += ",\"unsafe\":" + std::string(boolean(rec.obs.unsafe)) + "}";
    return out;
}

void write_trace(std::ostream& out, const std::vector<StepInfo>& steps, const Scenario& scenario) {
    for (const auto& step : steps) {
        for (const auto& rec : step.substep_trace) {
            out << trace_record_json(rec, scenario) << '\n';
        }
    }
}

std::vector<TraceRecord> read_trace(std::istream& in) {
    std::vector<TraceRecord> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const std::string where = "trace line " + std::to_string(line_no) + ": ";
        try {
            const json j = json::parse(line);
            if (!j.contains("v") || j.at("v") != kTraceFormatVersion) {
                throw TraceFormatError(where + "unsupported trace format version");
            }
            TraceRecord r;
            r.t = j.at("t").get<double>();
            r.step = j.at("step").get<int>();
            r.substep = j.at("substep").get<int>();
            const auto& h = j.at("human");
            r.human.position = {h.at("x").get<double>(), h.at("y").get<double>()};
            r.human.heading = h.at("heading_rad").get<double>();
            r.human.bend_forward = h.at("bend_fwd_deg").get<double>();
            r.human.bend_lateral = h.at("bend_lat_deg").get<double>();
            const auto& rb = j.at("robot");
            r.u = rb.at("u").get<double>();
            r.lambda = rb.at("lambda").get<double>();
            r.mode = rb.at("mode").get<std::string>();
            for (const auto& p : rb.at("points")) {
                r.points.push_back({p.at("name").get<std::string>(), {p.at("x").get<double>(), p.at("y").get<double>()},
                                    p.at("speed").get<double>()});
            }
            for (const auto& s : j.at("sensors")) {
                r.sensors.push_back({s.at("kind").get<std::string>(), s.at("detected").get<bool>()});
            }
            r.d_hr = j.at("d_hr").get<double>();
            r.v_r = j.at("v_r").get<double>();
            r.c_s = j.at("c_s").get<double>();
            r.unsafe = j.at("unsafe").get<bool>();
            out.push_back(std::move(r));
        } catch (const json::exception& e) {
            throw TraceFormatError(where + e.what());
        }
    }
    return out;
}

void check_trace_matches(const std::vector<TraceRecord>& records, const Scenario& scenario) {
    const auto& paths = scenario.robot().paths;
    const auto& sensors = scenario.sensors();
    for (const auto& r : records) {
        if (r.points.size() != paths.size()) {
            throw TraceFormatError("trace has " + std::to_string(r.points.size()) + " robot points, scenario has " +
                                   std::to_string(paths.size()));
        }
        for (std::size_t i = 0; i < paths.size(); ++i) {
            if (r.points[i].name != paths[i].name) {
                throw TraceFormatError("trace robot point \"" + r.points[i].name + "\" does not match scenario path \"" +
                                       paths[i].name + "\"");
            }
        }
        if (r.sensors.size() != sensors.size()) {
            throw TraceFormatError("trace has " + std::to_string(r.sensors.size()) + " sensors, scenario has " +
                                   std::to_string(sensors.size()));
        }
        for (std::size_t i = 0; i < sensors.size(); ++i) {
            if (r.sensors[i].kind != sensors[i].kind_name()) {
                throw TraceFormatError("trace sensor kind \"" + r.sensors[i].kind + "\" does not match scenario");
            }
        }
    }
}

std::string summary_json(const Scenario& scenario, const SearchConfig& cfg, const SearchOutcome& outcome) {
    std::string out = "{\"v\":" + std::to_string(kSummaryFormatVersion);
    out += ",\"scenario\":" + json_string(scenario.name());
    out += ",\"algorithm\":" + json_string(to_string(cfg.algorithm));
    out += ",\"seed\":" + std::to_string(cfg.seed);
    out += ",\"found\":" + std::string(boolean(outcome.found));
    out += ",\"episodes_used\":" + std::to_string(outcome.episodes_used);
    out += ",\"hazard_actions\":[";
    for (std::size_t i = 0; i < outcome.hazard_actions.size(); ++i) {
        out += (i ? "," : "") + std::to_string(outcome.hazard_actions[i].index());
    }
    out += "],\"config\":{\"max_episodes\":" + std::to_string(cfg.max_episodes);
    out += ",\"episode_len\":" + std::to_string(cfg.episode_len);
    out += ",\"c_uct\":" + format_number(cfg.c_uct);
    out += ",\"commit_interval\":" + std::to_string(cfg.commit_interval);
    out += ",\"terminal_bonus\":" + format_number(cfg.terminal_bonus);
    out += "}}";
    return out;
}

std::vector<Action> parse_action_list(std::string_view text) {
    std::vector<int> indices;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        json j;
        try {
            j = json::parse(text.begin(), text.end());
            for (const auto& v : j.at("hazard_actions")) {
                indices.push_back(v.get<int>());
            }
        } catch (const json::exception& e) {
            throw std::invalid_argument(std::string("malformed action file: ") + e.what());
        }
    } else {
        std::string cleaned(text);
        for (char& c : cleaned) {
            if (c == ',' || c == '[' || c == ']') {
                c = ' ';
            }
        }
        std::istringstream in(cleaned);
        std::string token;
        while (in >> token) {
            int v = 0;
            const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
            if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
                throw std::invalid_argument("malformed action index \"" + token + "\"");
            }
            indices.push_back(v);
        }
    }
    if (indices.empty()) {
        throw std::invalid_argument("action file lists no actions");
    }
    std::vector<Action> out;
    out.reserve(indices.size());
    for (int i : indices) {
        out.push_back(action_from_index(i));
    }
    return out;
}

}  // namespace hazardforge
