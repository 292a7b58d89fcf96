#include "hazardforge/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hazardforge/batch.hpp"
#include "hazardforge/render.hpp"
#include "hazardforge/search.hpp"
#include "hazardforge/trace.hpp"

namespace hazardforge {
namespace {

// Signals a user error that maps to exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read \"" + path + "\"");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw UsageError("cannot write \"" + path + "\"");
    }
    out << content;
}

std::string action_list(const std::vector<Action>& actions) {
    std::string s;
    for (std::size_t i = 0; i < actions.size(); ++i) {
        s += (i ? " " : "") + std::to_string(actions[i].index());
    }
    return s;
}

std::string trace_text(const std::vector<StepInfo>& steps, const Scenario& scenario) {
    std::ostringstream os;
    write_trace(os, steps, scenario);
    return os.str();
}

struct RunFlags {
    std::string scenario;
    std::string algo;
    std::uint64_t seed = 0;
    int episodes = 200;
    int episode_len = 8;
    double c_uct = std::sqrt(2.0);
    int commit_interval = 25;
    double terminal_bonus = 0.0;
    std::string out;
    std::string summary;
};

int cmd_run(const RunFlags& f, std::ostream& out) {
    SearchConfig cfg;
    try {
        cfg.algorithm = parse_algorithm(f.algo);
        cfg.seed = f.seed;
        cfg.max_episodes = f.episodes;
        cfg.episode_len = f.episode_len;
        cfg.c_uct = f.c_uct;
        cfg.commit_interval = f.commit_interval;
        cfg.terminal_bonus = f.terminal_bonus;
        validate(cfg);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const Scenario scenario = resolve_scenario(f.scenario);
    const SearchOutcome outcome = search(scenario, cfg);

    if (!f.out.empty()) {
        std::string trace;
        if (outcome.found) {
            trace = trace_text(replay(scenario, outcome.hazard_actions, cfg.episode_len), scenario);
        }
        write_file(f.out, trace);
    }
    if (!f.summary.empty()) {
        write_file(f.summary, summary_json(scenario, cfg, outcome) + "\n");
    }
    out << scenario.name() << " " << to_string(cfg.algorithm) << " seed=" << cfg.seed << ": ";
    if (outcome.found) {
        out << "hazard found after " << outcome.episodes_used << " episodes, actions [" <<
            action_list(outcome.hazard_actions) << "]\n";
    } else {
        out << "no hazard within " << outcome.episodes_used << " episodes\n";
    }
    return kExitOk;
}

struct BatchFlags {
    std::vector<std::string> scenarios;
    std::vector<std::string> algos;
    int seeds = 10;
    int episodes = 200;
    int episode_len = 8;
    std::string out;
};

int cmd_batch(const BatchFlags& f, std::ostream& out) {
    BatchSpec spec;
    try {
        spec.scenarios = f.scenarios;
        for (const auto& a : f.algos) {
            spec.algorithms.push_back(parse_algorithm(a));
        }
        if (f.seeds < 1) {
            throw std::invalid_argument("--seeds must be at least 1");
        }
        for (int s = 1; s <= f.seeds; ++s) {
            spec.seeds.push_back(static_cast<std::uint64_t>(s));
        }
        spec.max_episodes = f.episodes;
        spec.episode_len = f.episode_len;
        validate(spec);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto rows = run_batch(spec, default_thread_count());
    if (!f.out.empty()) {
        write_file(f.out, format_csv(rows));
    }
    out << format_table(aggregate(rows, spec.max_episodes));
    return kExitOk;
}

struct ReplayFlags {
    std::string scenario;
    std::string actions;
    std::string out;
};

int cmd_replay(const ReplayFlags& f, std::ostream& out, std::ostream& err) {
    std::vector<Action> actions;
    try {
        actions = parse_action_list(read_file(f.actions));
    } catch (const std::logic_error& e) {  // invalid_argument and out_of_range
        throw UsageError(e.what());
    }
    const Scenario scenario = resolve_scenario(f.scenario);

    const RewardConfig reward{std::max(8, static_cast<int>(actions.size())), 0.0};
    std::vector<StepInfo> steps;
    WorldState state = init(scenario);
    std::size_t ignored = 0;
    for (std::size_t i = 0; i < actions.size(); ++i) {
        if (state.terminal_unsafe) {
            ignored = actions.size() - i;
            break;
        }
        auto [next, info] = step_action(state, actions[i], scenario, reward);
        state = std::move(next);
        steps.push_back(std::move(info));
    }

    const std::string trace = trace_text(steps, scenario);
    // With no --out the trace owns stdout and the verdict goes to stderr.
    std::ostream& msg = f.out.empty() ? err : out;
    if (f.out.empty()) {
        out << trace;
    } else {
        write_file(f.out, trace);
    }
    const SubstepRecord* hit = nullptr;
    for (const auto& s : steps) {
        for (const auto& r : s.substep_trace) {
            if (r.obs.unsafe) {
                hit = &r;
                break;
            }
        }
        if (hit) {
            break;
        }
    }
    if (hit) {
        msg << "unsafe state reached at step " << hit->step << " substep " << hit->substep << " (t="
            << format_number(hit->t) << " s, v_r=" << format_number(hit->obs.v_r) << " m/s)\n";
    } else {
        msg << "no unsafe state reached in " << steps.size() << " actions\n";
    }
    if (ignored > 0) {
        msg << ignored << " action(s) after the unsafe state were not executed\n";
    }
    return kExitOk;
}

struct RenderFlags {
    std::string scenario;
    std::string trace;
    std::string out_dir;
    int every = 4;
};

int cmd_render(const RenderFlags& f, std::ostream& out) {
    if (f.every < 1) {
        throw UsageError("--every must be at least 1");
    }
    std::ifstream in(f.trace, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read \"" + f.trace + "\"");
    }
    const Scenario scenario = resolve_scenario(f.scenario);
    const auto records = read_trace(in);
    const auto frames = render_frames(scenario, records, f.every);
    std::error_code ec;
    std::filesystem::create_directories(f.out_dir, ec);
    if (ec) {
        throw UsageError("cannot create \"" + f.out_dir + "\": " + ec.message());
    }
    for (const auto& fr : frames) {
        write_file((std::filesystem::path(f.out_dir) / fr.filename).string(), fr.svg);
    }
    out << "wrote " << frames.size() << " frame(s) to " << f.out_dir << "\n";
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Adversarial search for unsafe human behaviour in a simulated robot cell", "hazardforge"};
    app.require_subcommand(1);

    RunFlags run;
    auto* run_cmd = app.add_subcommand("run", "Run one search and report the hazard, if any");
    run_cmd->add_option("--scenario", run.scenario, "Scenario file or builtin:NAME")->required();
    run_cmd->add_option("--algo", run.algo, "random | mcts1 | mcts2")->required();
    run_cmd->add_option("--seed", run.seed, "Random seed")->required();
    run_cmd->add_option("--episodes", run.episodes, "Episode budget")->capture_default_str();
    run_cmd->add_option("--episode-len", run.episode_len, "Actions per episode")->capture_default_str();
    run_cmd->add_option("--c-uct", run.c_uct, "UCT exploration constant")->capture_default_str();
    run_cmd->add_option("--commit-interval", run.commit_interval, "MCTS2 episodes per root commitment")
        ->capture_default_str();
    run_cmd->add_option("--terminal-bonus", run.terminal_bonus, "Extra reward on reaching an unsafe state")
        ->capture_default_str();
    run_cmd->add_option("--out", run.out, "Hazard trace (JSONL)");
    run_cmd->add_option("--summary", run.summary, "Summary (JSON)");

    BatchFlags batch;
    auto* batch_cmd = app.add_subcommand("batch", "Run a scenario x algorithm x seed grid");
    batch_cmd->add_option("--scenarios", batch.scenarios, "Comma separated scenario refs")
        ->required()
        ->delimiter(',');
    batch_cmd->add_option("--algos", batch.algos, "Comma separated algorithms")->required()->delimiter(',');
    batch_cmd->add_option("--seeds", batch.seeds, "Seeds 1..N")->capture_default_str();
    batch_cmd->add_option("--episodes", batch.episodes, "Episode budget")->capture_default_str();
    batch_cmd->add_option("--episode-len", batch.episode_len, "Actions per episode")->capture_default_str();
    batch_cmd->add_option("--out", batch.out, "Per-run results (CSV)");

    ReplayFlags rep;
    auto* replay_cmd = app.add_subcommand("replay", "Re-simulate an action sequence and emit its trace");
    replay_cmd->add_option("--scenario", rep.scenario, "Scenario file or builtin:NAME")->required();
    replay_cmd->add_option("--actions", rep.actions, "Action indices, or a summary JSON")->required();
    replay_cmd->add_option("--out", rep.out, "Trace (JSONL); stdout if omitted");

    RenderFlags ren;
    auto* render_cmd = app.add_subcommand("render", "Draw trace records as SVG frames");
    render_cmd->add_option("--scenario", ren.scenario, "Scenario file or builtin:NAME")->required();
    render_cmd->add_option("--trace", ren.trace, "Trace (JSONL)")->required();
    render_cmd->add_option("--out-dir", ren.out_dir, "Output directory")->required();
    render_cmd->add_option("--every", ren.every, "Render every k-th record")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (run_cmd->parsed()) {
            return cmd_run(run, out);
        }
        if (batch_cmd->parsed()) {
            return cmd_batch(batch, out);
        }
        if (replay_cmd->parsed()) {
            return cmd_replay(rep, out, err);
        }
        return cmd_render(ren, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ScenarioRefError& e) {
        err << "scenario error: " << e.what() << "\n";
        return kExitScenario;
    } catch (const ScenarioParseError& e) {
        err << "scenario error: " << e.what() << "\n";
        return kExitScenario;
    } catch (const ScenarioValidationError& e) {
        err << "scenario error: " << e.what() << "\n";
        return kExitScenario;
    } catch (const TraceFormatError& e) {
        err << "trace error: " << e.what() << "\n";
        return kExitScenario;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace hazardforge
