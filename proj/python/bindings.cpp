#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hazardforge/search.hpp"
#include "hazardforge/trace.hpp"

namespace py = pybind11;
using namespace hazardforge;

namespace {

std::vector<Action> to_actions(const std::vector<int>& indices) {
    std::vector<Action> out;
    out.reserve(indices.size());
    for (int i : indices) {
        out.push_back(action_from_index(i));
    }
    return out;
}

std::vector<int> to_indices(const std::vector<Action>& actions) {
    std::vector<int> out;
    for (const auto& a : actions) {
        out.push_back(a.index());
    }
    return out;
}

py::dict observation_dict(const SafetyObservation& o) {
    py::dict d;
    d["d_hr"] = o.d_hr;
    d["v_r"] = o.v_r;
    d["contact"] = o.contact;
    d["unsafe"] = o.unsafe;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Robot-cell simulator and hazard search";

    py::register_exception<ScenarioParseError>(m, "ScenarioParseError", PyExc_ValueError);
    py::register_exception<ScenarioValidationError>(m, "ScenarioValidationError", PyExc_ValueError);
    py::register_exception<ScenarioRefError>(m, "ScenarioRefError", PyExc_LookupError);
    py::register_exception<SimulationError>(m, "SimulationError", PyExc_RuntimeError);

    m.attr("ACTION_COUNT") = kActionCount;

    m.def(
        "action_name",
        [](int index) {
            const Action a = action_from_index(index);
            return std::string(to_string(a.walk)) + "+" + std::string(to_string(a.bend));
        },
        py::arg("index"));

    m.def("safety_index", &safety_index, py::arg("d_hr"), py::arg("v_r"));
    m.def(
        "step_reward",
        [](double d_hr, double v_r, bool contact, bool unsafe, int k, int n, double bonus) {
            return step_reward({d_hr, v_r, contact, unsafe}, k, n, bonus);
        },
        py::arg("d_hr"), py::arg("v_r"), py::arg("contact"), py::arg("unsafe"), py::arg("k"), py::arg("n"),
        py::arg("terminal_bonus") = 0.0);

    py::class_<Scenario>(m, "Scenario")
        .def_property_readonly("name", &Scenario::name)
        .def_property_readonly("dt", &Scenario::dt)
        .def("to_json", [](const Scenario& s) { return serialize_scenario(s); })
        .def(
            "certify_separation",
            [](const Scenario& s, double grid) {
                const SeparationReport r = certify_separation(s, grid);
                py::dict d;
                d["min_time_to_contact"] = r.min_time_to_contact;
                d["required_time"] = r.required_time;
                d["reachable_undetected_contact"] = r.reachable_undetected_contact;
                return d;
            },
            py::arg("grid") = 0.05)
        .def("__repr__", [](const Scenario& s) { return "<Scenario " + s.name() + ">"; });

    m.def("load_scenario", [](const std::string& text) { return load_scenario(text); }, py::arg("document"));
    m.def("builtin_scenario", [](const std::string& name) { return builtin_scenario(name); }, py::arg("name"));
    m.def("resolve_scenario", [](const std::string& ref) { return resolve_scenario(ref); }, py::arg("ref"),
          "Accepts builtin:<name> or a file path");

    m.def(
        "search",
        [](const Scenario& sc, const std::string& algorithm, std::uint64_t seed, int max_episodes, int episode_len,
           double c_uct, int commit_interval, double terminal_bonus) {
            SearchConfig cfg;
            cfg.algorithm = parse_algorithm(algorithm);
            cfg.seed = seed;
            cfg.max_episodes = max_episodes;
            cfg.episode_len = episode_len;
            cfg.c_uct = c_uct;
            cfg.commit_interval = commit_interval;
            cfg.terminal_bonus = terminal_bonus;
            validate(cfg);
            SearchOutcome out;
            {
                py::gil_scoped_release release;
                out = search(sc, cfg);
            }
            py::dict d;
            d["found"] = out.found;
            d["hazard_actions"] = to_indices(out.hazard_actions);
            d["episodes_used"] = out.episodes_used;
            d["committed_prefix"] = to_indices(out.committed_prefix);
            d["summary"] = summary_json(sc, cfg, out);
            return d;
        },
        py::arg("scenario"), py::arg("algorithm") = "mcts1", py::arg("seed") = 1, py::arg("max_episodes") = 200,
        py::arg("episode_len") = 8, py::arg("c_uct") = std::sqrt(2.0), py::arg("commit_interval") = 25,
        py::arg("terminal_bonus") = 0.0);

    m.def(
        "replay",
        [](const Scenario& sc, const std::vector<int>& actions, int episode_len) {
            py::list steps;
            for (const auto& s : replay(sc, to_actions(actions), episode_len)) {
                py::dict d = observation_dict(s.obs);
                d["reward"] = s.reward;
                d["unsafe_hit"] = s.unsafe_hit;
                steps.append(d);
            }
            return steps;
        },
        py::arg("scenario"), py::arg("actions"), py::arg("episode_len") = 8);

    m.def(
        "trace_jsonl",
        [](const Scenario& sc, const std::vector<int>& actions, int episode_len) {
            std::ostringstream os;
            write_trace(os, replay(sc, to_actions(actions), episode_len), sc);
            return os.str();
        },
        py::arg("scenario"), py::arg("actions"), py::arg("episode_len") = 8);

    m.def("parse_action_list", [](const std::string& text) { return to_indices(parse_action_list(text)); },
          py::arg("text"));
}
