#include "demand.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace chainrta {

TimeUnit ceil_div_nonneg(TimeUnit numerator, TimeUnit denominator) {
  assert(denominator >= 1);
  if (numerator <= 0) return 0;
  return (numerator + denominator - 1) / denominator;
}

TimeUnit workload_task(TimeUnit wcet, TimeUnit period, const WorkloadQuery& q) {
  assert(wcet >= 1 && period >= 1);
  assert(q.delta >= 0 && q.alpha >= 0);
  const TimeUnit span = q.delta + q.alpha;
  const TimeUnit full = span / period;
  return full * wcet + std::min(wcet, span - full * period);
}

TimeUnit workload_chain_cd_units(TimeUnit exec_time, TimeUnit period,
                                 const WorkloadQuery& q) {
  assert(exec_time >= 1 && period >= 1);
  assert(q.delta >= 0 && q.alpha >= 0);
  const TimeUnit full = (q.delta + q.alpha) / period;
  // The carry-out term is bounded by the window itself; a negative remainder
  // means the carry-out instance cannot execute inside the window at all.
  const TimeUnit carry_out = std::min(exec_time, q.delta - full * period);
  return full * exec_time + std::max<TimeUnit>(0, carry_out);
}

TimeUnit workload_chain_ad_units(TimeUnit exec_time, TimeUnit period,
                                 const WorkloadQuery& q) {
  assert(exec_time >= 1 && period >= 1);
  assert(q.delta >= 0 && q.alpha >= 0);
  return ceil_div_nonneg(q.delta + q.alpha, period) * exec_time;
}

TimeUnit workload_chain_cd(const Chain& chain, const WorkloadQuery& q) {
  if (!chain.constrained_deadline())
    throw std::invalid_argument("workload_chain_cd: chain '" + chain.id +
                                "' has an arbitrary deadline");
  return workload_chain_cd_units(chain.total_wcet(), chain.period, q);
}

TimeUnit workload_chain_ad(const Chain& chain, const WorkloadQuery& q) {
  return workload_chain_ad_units(chain.total_wcet(), chain.period, q);
}

TimeUnit precedence_blocking(const Chain& chain, int threads) {
  assert(threads >= 1);
  return static_cast<TimeUnit>(threads) * (chain.total_wcet() - chain.last_wcet());
}

TimeUnit blocking_sum(std::vector<BlockingCandidate> candidates, TimeUnit limit,
                      TimeUnit delta) {
  std::sort(candidates.begin(), candidates.end(),
            [delta](const BlockingCandidate& a, const BlockingCandidate& b) {
              const TimeUnit va = std::min(a.largest_wcet - 1, delta);
              const TimeUnit vb = std::min(b.largest_wcet - 1, delta);
              if (va != vb) return va > vb;
              return a.chain_id < b.chain_id;
            });
  TimeUnit sum = 0;
  TimeUnit remaining = limit;
  for (const auto& c : candidates) {
    if (remaining <= 0) break;
    const TimeUnit taken = std::min(remaining, c.instances);
    sum += taken * std::min(c.largest_wcet - 1, delta);
    remaining -= taken;
  }
  return sum;
}

TimeUnit mlp_blocking(const Chain& target, const SystemSpec& system, int threads,
                      TimeUnit delta) {
  std::vector<BlockingCandidate> candidates;
  for (const auto& chain : system.chains) {
    if (chain.priority >= target.priority || chain.callbacks.empty()) continue;
    candidates.push_back({chain.largest_wcet(), 1, chain.id});
  }
  const TimeUnit limit =
      std::min<TimeUnit>(threads, static_cast<TimeUnit>(candidates.size()));
  return blocking_sum(std::move(candidates), limit, delta);
}

TimeUnit mlp_star_blocking(const Chain& target, const SystemSpec& system, int threads,
                           TimeUnit delta) {
  std::vector<BlockingCandidate> candidates;
  TimeUnit total_instances = 0;
  for (const auto& chain : system.chains) {
    if (chain.priority >= target.priority || chain.callbacks.empty()) continue;
    const TimeUnit instances = ceil_div_nonneg(
        delta + chain.deadline - chain.total_wcet(), chain.period);
    if (instances <= 0) continue;
    candidates.push_back({chain.largest_wcet(), instances, chain.id});
    total_instances += instances;
  }
  const TimeUnit limit = std::min<TimeUnit>(threads, total_instances);
  return blocking_sum(std::move(candidates), limit, delta);
}

namespace {

TimeUnit groupmates_load_impl(const Callback& cb, const SystemSpec& system,
                              TimeUnit delta, bool constrained,
                              bool higher_priority_only) {
  const CallbackGroup* group = system.group_of(cb.id);
  if (group == nullptr || group->kind != GroupKind::mutually_exclusive) return 0;

  TimeUnit load = 0;
  for (const auto& member_id : group->members) {
    if (member_id == cb.id) continue;
    const Callback* mate = system.find_callback(member_id);
    if (mate == nullptr) continue;
    if (mate->chain_id == cb.chain_id && constrained) continue;
    if (higher_priority_only && mate->priority <= cb.priority) continue;
    const Chain* mate_chain = system.find_chain(mate->chain_id);
    if (mate_chain == nullptr) continue;
    const TimeUnit instances = ceil_div_nonneg(
        delta + mate_chain->deadline - mate_chain->total_wcet(), mate_chain->period);
    load += instances * mate->wcet;
  }
  return load;
}

}  // namespace

TimeUnit groupmates_load(const Callback& cb, const SystemSpec& system, TimeUnit delta,
                         bool constrained) {
  return groupmates_load_impl(cb, system, delta, constrained, false);
}

TimeUnit hp_groupmates_load(const Callback& cb, const SystemSpec& system, TimeUnit delta,
                            bool constrained) {
  return groupmates_load_impl(cb, system, delta, constrained, true);
}

}  // namespace chainrta
