#include "hazardforge/batch.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hazardforge/trace.hpp"

namespace hazardforge {

void validate(const BatchSpec& spec) {
    if (spec.scenarios.empty()) {
        throw std::invalid_argument("batch needs at least one scenario");
    }
    if (spec.algorithms.empty()) {
        throw std::invalid_argument("batch needs at least one algorithm");
    }
    if (spec.seeds.empty()) {
        throw std::invalid_argument("batch needs at least one seed");
    }
    SearchConfig probe;
    probe.max_episodes = spec.max_episodes;
    probe.episode_len = spec.episode_len;
    validate(probe);
}

std::vector<BatchRow> run_batch(const BatchSpec& spec, unsigned threads) {
    validate(spec);
    std::vector<Scenario> scenarios;
    scenarios.reserve(spec.scenarios.size());
    for (const auto& ref : spec.scenarios) {
        scenarios.push_back(resolve_scenario(ref));
    }

    struct Job {
        std::size_t scenario;
        Algorithm algorithm;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (std::size_t s = 0; s < scenarios.size(); ++s) {
        for (Algorithm a : spec.algorithms) {
            for (std::uint64_t seed : spec.seeds) {
                jobs.push_back({s, a, seed});
            }
        }
    }

    std::vector<BatchRow> rows(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            const Job& job = jobs[i];
            try {
                SearchConfig cfg;
                cfg.algorithm = job.algorithm;
                cfg.seed = job.seed;
                cfg.max_episodes = spec.max_episodes;
                cfg.episode_len = spec.episode_len;
                const auto out = search(scenarios[job.scenario], cfg);
                rows[i] = {scenarios[job.scenario].name(), job.algorithm, job.seed, out.found, out.episodes_used};
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n);
        for (unsigned t = 0; t < n; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return rows;
}

std::vector<BatchCell> aggregate(const std::vector<BatchRow>& rows, int max_episodes) {
    std::vector<BatchCell> cells;
    for (const auto& r : rows) {
        auto it = std::find_if(cells.begin(), cells.end(), [&](const BatchCell& c) {
            return c.scenario == r.scenario && c.algorithm == r.algorithm;
        });
        if (it == cells.end()) {
            cells.push_back({r.scenario, r.algorithm, 0, 0, 0.0});
            it = cells.end() - 1;
        }
        it->total += 1;
        it->success_count += r.found ? 1 : 0;
        // accumulate the sum for now, divide below
        it->mean_episodes += r.found ? r.episodes_used : max_episodes;
    }
    for (auto& c : cells) {
        c.mean_episodes /= c.total;
    }
    return cells;
}

std::string format_csv(const std::vector<BatchRow>& rows) {
    std::string out = "scenario,algorithm,seed,found,episodes_used\n";
    for (const auto& r : rows) {
        out += r.scenario + "," + std::string(to_string(r.algorithm)) + "," + std::to_string(r.seed) + "," +
               (r.found ? "true" : "false") + "," + std::to_string(r.episodes_used) + "\n";
    }
    return out;
}

std::string format_table(const std::vector<BatchCell>& cells) {
    std::vector<std::string> scenarios;
    std::vector<Algorithm> algorithms;
    for (const auto& c : cells) {
        if (std::find(scenarios.begin(), scenarios.end(), c.scenario) == scenarios.end()) {
            scenarios.push_back(c.scenario);
        }
        if (std::find(algorithms.begin(), algorithms.end(), c.algorithm) == algorithms.end()) {
            algorithms.push_back(c.algorithm);
        }
    }
    std::size_t width = 18;
    for (const auto& s : scenarios) {
        width = std::max(width, s.size() + 2);
    }

    std::ostringstream out;
    out << std::left << std::setw(10) << "algorithm";
    for (const auto& s : scenarios) {
        out << std::setw(static_cast<int>(width)) << s;
    }
    out << '\n' << std::setw(10) << "";
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        out << std::setw(static_cast<int>(width)) << "success  avg.eps";
    }
    out << '\n';
    for (Algorithm a : algorithms) {
        out << std::setw(10) << to_string(a);
        for (const auto& s : scenarios) {
            auto it = std::find_if(cells.begin(), cells.end(),
                                   [&](const BatchCell& c) { return c.scenario == s && c.algorithm == a; });
            std::string cell = "-";
            if (it != cells.end()) {
                char buf[32];
                auto res = std::to_chars(buf, buf + sizeof(buf), it->mean_episodes, std::chars_format::fixed, 1);
                cell = std::to_string(it->success_count) + "/" + std::to_string(it->total) + "    " +
                       std::string(buf, res.ptr);
            }
            out << std::setw(static_cast<int>(width)) << cell;
        }
        out << '\n';
    }
    return out.str();
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("HAZARDFORGE_THREADS")) {
        unsigned v = 0;
        const std::string_view s(env);
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec == std::errc{} && res.ptr == s.data() + s.size() && v > 0) {
            return v;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace hazardforge
