#include "oracles.hpp"

#include <algorithm>

namespace chainrta::testing {

TimeUnit staircase_supply(const ThreadReservation& r, TimeUnit delta) {
  const TimeUnit blackout = 2 * (r.period - r.budget);
  TimeUnit supplied = 0;
  for (TimeUnit t = 0; t < delta; ++t) {
    if (t < blackout) continue;
    if ((t - blackout) % r.period < r.budget) ++supplied;
  }
  return supplied;
}

namespace {

// Largest overlap of a wcet-long interval with [0, delta) when its start may
// be chosen in [release, release + alpha]. The overlap is concave in the
// start, so clamping the two unconstrained optima suffices.
TimeUnit best_overlap(TimeUnit release, TimeUnit wcet, TimeUnit alpha, TimeUnit delta) {
  const auto overlap = [&](TimeUnit s) {
    const TimeUnit lo = std::max<TimeUnit>(s, 0);
    const TimeUnit hi = std::min(s + wcet, delta);
    return std::max<TimeUnit>(0, hi - lo);
  };
  const auto clamp_start = [&](TimeUnit s) {
    return std::clamp(s, release, release + alpha);
  };
  return std::max(overlap(clamp_start(0)), overlap(clamp_start(delta - wcet)));
}

}  // namespace

namespace {

TimeUnit densest_pattern(TimeUnit wcet, TimeUnit period, TimeUnit delta,
                         TimeUnit alpha) {
  TimeUnit best = 0;
  for (TimeUnit phase = 0; phase < period; ++phase) {
    TimeUnit total = 0;
    // Jobs whose execution window [release, release + alpha + wcet) can touch
    // [0, delta).
    TimeUnit release = phase;
    while (release + alpha + wcet > 0) release -= period;
    release += period;
    for (; release < delta; release += period)
      total += best_overlap(release, wcet, alpha, delta);
    best = std::max(best, total);
  }
  return best;
}

}  // namespace

TimeUnit brute_force_workload_ad(TimeUnit wcet, TimeUnit period, TimeUnit delta,
                                 TimeUnit alpha) {
  return densest_pattern(wcet, period, delta, alpha);
}

TimeUnit brute_force_workload_cd(TimeUnit wcet, TimeUnit period, TimeUnit delta,
                                 TimeUnit alpha) {
  return densest_pattern(wcet, period, delta,
                         std::min(alpha, period - wcet));
}

}  // namespace chainrta::testing
