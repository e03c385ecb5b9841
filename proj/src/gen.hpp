#pragma once

#include <cstdint>
#include <vector>

#include "model.hpp"

namespace chainrta {

struct GenParams {
  int chain_count = 5;
  int callbacks_per_chain = 10;
  double total_utilization = 1.0;
  TimeUnit period_min = 100;
  TimeUnit period_max = 1000;
  enum class DeadlineMode { equal_period, scaled };
  DeadlineMode deadline_mode = DeadlineMode::equal_period;
  double deadline_factor = 2.0;  // used by DeadlineMode::scaled
  std::uint64_t seed = 0;
};

// UUniFast: n positive utilizations summing to `total`. The last value is
// the exact remainder so the sum telescopes back to `total`.
std::vector<double> uunifast(int n, double total, std::uint64_t seed);

// One random chain set following the experiment protocol: per-chain
// utilization via UUniFast, log-uniform periods, E_C = round(u * T) split
// across callbacks by a second UUniFast draw (each callback >= 1 unit),
// timer-triggered heads, chain priorities by index (chain i gets priority i;
// the last chain is the most critical).
std::vector<Chain> generate_chain_set(const GenParams& params);

// Wraps a chain set into a complete single-executor system with `threads`
// dedicated cores and chain-aware callback priorities already applied.
SystemSpec make_single_executor_system(std::vector<Chain> chains, int threads,
                                       Scheme scheme);

// Copy of a chain set with every deadline scaled by `factor` (the
// arbitrary-deadline variant of a constrained-deadline set).
std::vector<Chain> scale_deadlines(std::vector<Chain> chains, double factor);

// Deterministic seed derivation for parallel sweeps and replicated draws.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b);

}  // namespace chainrta
