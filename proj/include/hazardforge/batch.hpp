#pragma once

// Grid experiments: every (scenario, algorithm, seed) cell is an independent
// search; results are always reported in grid order.

#include <cstdint>
#include <string>
#include <vector>

#include "hazardforge/search.hpp"

namespace hazardforge {

struct BatchSpec {
    std::vector<std::string> scenarios;  // scenario refs (path or builtin:NAME)
    std::vector<Algorithm> algorithms;
    std::vector<std::uint64_t> seeds;
    int max_episodes = 200;
    int episode_len = 8;
};

/// Throws std::invalid_argument for empty lists or bad search bounds.
void validate(const BatchSpec& spec);

struct BatchRow {
    std::string scenario;  // scenario name
    Algorithm algorithm = Algorithm::Random;
    std::uint64_t seed = 0;
    bool found = false;
    int episodes_used = 0;
};

struct BatchCell {
    std::string scenario;
    Algorithm algorithm = Algorithm::Random;
    int success_count = 0;
    int total = 0;
    double mean_episodes = 0.0;  // failures count as max_episodes
};

/// Resolves every scenario ref (errors propagate before any search starts),
/// then runs the grid on up to `threads` workers. Rows come back ordered by
/// (scenario, algorithm, seed) as listed in the spec.
std::vector<BatchRow> run_batch(const BatchSpec& spec, unsigned threads);

std::vector<BatchCell> aggregate(const std::vector<BatchRow>& rows, int max_episodes);

std::string format_csv(const std::vector<BatchRow>& rows);
/// Algorithms as rows, scenarios as columns; each cell "k/N  mean".
std::string format_table(const std::vector<BatchCell>& cells);

/// HAZARDFORGE_THREADS if set to a positive integer, else hardware concurrency.
unsigned default_thread_count();

}  // namespace hazardforge
