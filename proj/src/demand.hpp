#pragma once

#include <vector>

#include "model.hpp"

namespace chainrta {

// Analysis window of length `delta` with carry-in extension `alpha`
// (D - E for each interfering chain).
struct WorkloadQuery {
  TimeUnit delta = 0;
  TimeUnit alpha = 0;
};

// ceil(numerator / denominator) clamped at 0 for non-positive numerators.
TimeUnit ceil_div_nonneg(TimeUnit numerator, TimeUnit denominator);

// Maximum execution of a periodic non-preemptive task (wcet, period) inside
// the window: floor((d+a)/T)*E + min(E, (d+a) mod T).
TimeUnit workload_task(TimeUnit wcet, TimeUnit period, const WorkloadQuery& q);

// Raw kernels shared by the whole-chain wrappers below and by the
// per-executor sub-chain analysis.
TimeUnit workload_chain_cd_units(TimeUnit exec_time, TimeUnit period, const WorkloadQuery& q);
TimeUnit workload_chain_ad_units(TimeUnit exec_time, TimeUnit period, const WorkloadQuery& q);

// Constrained-deadline chain workload: the carry-out term is bounded by the
// window itself (delta, not delta + alpha) and clamps at 0. Rejects
// arbitrary-deadline chains.
TimeUnit workload_chain_cd(const Chain& chain, const WorkloadQuery& q);

// Arbitrary-deadline chain workload: one full execution per release,
// ceil((d+a)/T)*E.
TimeUnit workload_chain_ad(const Chain& chain, const WorkloadQuery& q);

// Artificial workload charged for the precedence dependencies inside the
// chain under analysis: m * (E_C - E_last).
TimeUnit precedence_blocking(const Chain& chain, int threads);

// Blocking candidate of one lower-priority chain: its value min(E - 1, delta)
// and how many instances may contribute it.
struct BlockingCandidate {
  TimeUnit largest_wcet = 0;
  TimeUnit instances = 1;
  // Deterministic ordering only; the summed value is order-independent.
  std::string chain_id;
};

// Sum of the `limit` largest min(E-1, delta) values, honoring per-candidate
// instance multiplicities.
TimeUnit blocking_sum(std::vector<BlockingCandidate> candidates, TimeUnit limit,
                      TimeUnit delta);

// Lower-priority blocking for constrained deadlines: at most one callback per
// lower-priority chain, at most min(m, #lower chains) contributions.
TimeUnit mlp_blocking(const Chain& target, const SystemSpec& system, int threads,
                      TimeUnit delta);

// Arbitrary-deadline variant: each lower-priority chain contributes one
// candidate per instance released in the window, capped at
// min(m, sum of instance counts).
TimeUnit mlp_star_blocking(const Chain& target, const SystemSpec& system, int threads,
                           TimeUnit delta);

// Serialization load from the mutually-exclusive group-mates of `cb`:
// ceil((delta + D_x - E_x)/T_x) * E_mate summed over mates. Zero for
// reentrant groups. Under constrained deadlines mates from cb's own chain
// are excluded (already charged as precedence blocking).
TimeUnit groupmates_load(const Callback& cb, const SystemSpec& system, TimeUnit delta,
                         bool constrained);

// As groupmates_load, restricted to mates with higher callback priority.
TimeUnit hp_groupmates_load(const Callback& cb, const SystemSpec& system, TimeUnit delta,
                            bool constrained);

}  // namespace chainrta
