#include "rta.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <stdexcept>

namespace chainrta {

AnalysisConfig config_for_method(Method method) {
  AnalysisConfig cfg;
  cfg.scheme = method_is_priority_driven(method) ? Scheme::priority_driven
                                                 : Scheme::standard;
  cfg.deadline_class = (method == Method::PWA_AD || method == Method::PPWA_AD)
                           ? DeadlineClass::arbitrary
                           : DeadlineClass::constrained;
  return cfg;
}

const char* to_string(Method method) {
  switch (method) {
    case Method::PWA_CD: return "PWA_CD";
    case Method::PPWA_CD: return "PPWA_CD";
    case Method::PWA_AD: return "PWA_AD";
    case Method::PPWA_AD: return "PPWA_AD";
  }
  return "?";
}

std::optional<Method> method_from_string(const std::string& name) {
  if (name == "PWA_CD") return Method::PWA_CD;
  if (name == "PPWA_CD") return Method::PPWA_CD;
  if (name == "PWA_AD") return Method::PWA_AD;
  if (name == "PPWA_AD") return Method::PPWA_AD;
  return std::nullopt;
}

bool method_is_priority_driven(Method method) {
  return method == Method::PPWA_CD || method == Method::PPWA_AD;
}

namespace {

// Maximal contiguous run of one chain's callbacks on a single executor.
// Whole chains are the common case (first == 0, last == length - 1).
struct LocalChain {
  const Chain* parent = nullptr;
  int first = 0;
  int last = 0;
  TimeUnit exec_time = 0;
  TimeUnit last_wcet = 0;
  TimeUnit largest_wcet = 0;

  TimeUnit period() const { return parent->period; }
  TimeUnit deadline() const { return parent->deadline; }
  int priority() const { return parent->priority; }
  bool whole() const {
    return first == 0 && last + 1 == static_cast<int>(parent->callbacks.size());
  }
};

const std::string& assigned_executor(const SystemSpec& system, const Callback& cb) {
  const std::string* exec_id = system.executor_of(cb.id);
  if (exec_id == nullptr)
    throw std::invalid_argument("callback '" + cb.id + "' is not assigned");
  return *exec_id;
}

// Sub-chain runs of one chain in chain order, as (executor id, local chain).
std::vector<std::pair<std::string, LocalChain>> split_chain(const SystemSpec& system,
                                                            const Chain& chain) {
  std::vector<std::pair<std::string, LocalChain>> runs;
  for (int j = 0; j < static_cast<int>(chain.callbacks.size()); ++j) {
    const Callback& cb = chain.callbacks[j];
    const std::string& exec_id = assigned_executor(system, cb);
    if (runs.empty() || runs.back().first != exec_id) {
      LocalChain run;
      run.parent = &chain;
      run.first = run.last = j;
      runs.emplace_back(exec_id, run);
    } else {
      runs.back().second.last = j;
    }
    LocalChain& run = runs.back().second;
    run.exec_time += cb.wcet;
    run.last_wcet = cb.wcet;
    run.largest_wcet = std::max(run.largest_wcet, cb.wcet);
  }
  return runs;
}

// Everything that interferes on one executor, plus a lookup from callback id
// to its local chain (for group-mate terms).
struct ExecutorScenario {
  std::vector<LocalChain> locals;
  std::map<std::string, int> local_of_callback;

  const LocalChain* local_for(const std::string& callback_id) const {
    auto it = local_of_callback.find(callback_id);
    return it == local_of_callback.end() ? nullptr : &locals[it->second];
  }
};

ExecutorScenario build_scenario(const SystemSpec& system, const ExecutorSpec& exec) {
  ExecutorScenario scenario;
  for (const auto& chain : system.chains) {
    for (auto& [exec_id, run] : split_chain(system, chain)) {
      if (exec_id != exec.id) continue;
      const int index = static_cast<int>(scenario.locals.size());
      scenario.locals.push_back(run);
      for (int j = run.first; j <= run.last; ++j)
        scenario.local_of_callback[chain.callbacks[j].id] = index;
    }
  }
  return scenario;
}

void check_deadline_class(const ExecutorScenario& scenario, const AnalysisConfig& cfg) {
  if (cfg.deadline_class != DeadlineClass::constrained) return;
  for (const auto& local : scenario.locals)
    if (!local.parent->constrained_deadline())
      throw std::invalid_argument(
          "constrained-deadline analysis requested but chain '" +
          local.parent->id + "' has deadline > period");
}

TimeUnit local_groupmates_load(const LocalChain& target, const Callback& cb,
                               const ExecutorScenario& scenario,
                               const SystemSpec& system, TimeUnit delta,
                               bool constrained, bool higher_priority_only) {
  const CallbackGroup* group = system.group_of(cb.id);
  if (group == nullptr || group->kind != GroupKind::mutually_exclusive) return 0;

  TimeUnit load = 0;
  for (const auto& member_id : group->members) {
    if (member_id == cb.id) continue;
    const Callback* mate = system.find_callback(member_id);
    if (mate == nullptr) continue;
    if (mate->chain_id == target.parent->id && constrained) continue;
    if (higher_priority_only && mate->priority <= cb.priority) continue;
    const LocalChain* mate_local = scenario.local_for(member_id);
    if (mate_local == nullptr) continue;  // group members are co-resident
    const TimeUnit instances =
        ceil_div_nonneg(delta + mate_local->deadline() - mate_local->exec_time,
                        mate_local->period());
    load += instances * mate->wcet;
  }
  return load;
}

TimeUnit dbf_local(const LocalChain& target, const ExecutorScenario& scenario,
                   const SystemSpec& system, const ExecutorSpec& exec,
                   TimeUnit delta, const AnalysisConfig& cfg) {
  const TimeUnit m = exec.thread_count();
  const bool constrained = cfg.deadline_class == DeadlineClass::constrained;
  const bool priority_driven = cfg.scheme == Scheme::priority_driven;

  TimeUnit demand = m * (target.exec_time - target.last_wcet);

  for (const auto& other : scenario.locals) {
    const bool self = &other == &target;
    const bool sibling = !self && other.parent == target.parent;
    const WorkloadQuery q{
        delta, std::max<TimeUnit>(0, other.deadline() - other.exec_time)};
    if (constrained) {
      if (self) continue;
      // Interference from lower-priority chains is covered by the blocking
      // term under priority-driven scheduling; sibling sub-chains of the
      // target's own chain always interfere.
      if (priority_driven && !sibling && other.priority() <= target.priority())
        continue;
      demand += workload_chain_cd_units(other.exec_time, other.period(), q);
    } else {
      if (priority_driven && other.priority() < target.priority()) continue;
      demand += workload_chain_ad_units(other.exec_time, other.period(), q);
    }
  }
  // Arbitrary deadlines: the self term covers all of the target's own
  // instances, so its own execution is deducted once.
  if (!constrained) demand -= target.exec_time;

  if (priority_driven) {
    std::vector<BlockingCandidate> candidates;
    TimeUnit total_instances = 0;
    for (const auto& other : scenario.locals) {
      if (other.parent == target.parent) continue;
      if (other.priority() >= target.priority()) continue;
      const TimeUnit instances =
          constrained ? 1
                      : ceil_div_nonneg(
                            delta + other.deadline() - other.exec_time,
                            other.period());
      if (instances <= 0) continue;
      candidates.push_back({other.largest_wcet, instances, other.parent->id});
      total_instances += instances;
    }
    demand += blocking_sum(std::move(candidates),
                           std::min<TimeUnit>(m, total_instances), delta);
  }

  if (cfg.groups_enabled) {
    for (int j = target.first; j <= target.last; ++j) {
      const Callback& cb = target.parent->callbacks[j];
      demand += m * local_groupmates_load(target, cb, scenario, system, delta,
                                          constrained, priority_driven);
    }
  }
  return demand;
}

const LocalChain& whole_chain_local(const ExecutorScenario& scenario,
                                    const Chain& target, const ExecutorSpec& exec) {
  for (const auto& local : scenario.locals)
    if (local.parent == &target || local.parent->id == target.id) {
      if (!local.whole())
        throw std::invalid_argument("chain '" + target.id +
                                    "' is not assigned wholly to executor '" +
                                    exec.id + "'");
      return local;
    }
  throw std::invalid_argument("chain '" + target.id +
                              "' has no callbacks on executor '" + exec.id + "'");
}

TimeUnit saturating_lcm(TimeUnit a, TimeUnit b, TimeUnit cap) {
  const TimeUnit g = std::gcd(a, b);
  const TimeUnit step = a / g;
  if (step > cap / b) return cap;
  return std::min(cap, step * b);
}

TimeUnit default_divergence_limit(const std::vector<LocalChain>& locals) {
  constexpr TimeUnit kHyperperiodCap = 5'000'000;
  TimeUnit hyper = 1;
  TimeUnit max_deadline = 1;
  for (const auto& local : locals) {
    hyper = saturating_lcm(hyper, local.period(), kHyperperiodCap);
    max_deadline = std::max(max_deadline, local.deadline());
  }
  return std::max(2 * hyper, 10 * max_deadline);
}

AnalysisVerdict solve_local(const LocalChain& target, const ExecutorScenario& scenario,
                            const SystemSpec& system, const ExecutorSpec& exec,
                            const AnalysisConfig& cfg) {
  check_deadline_class(scenario, cfg);
  const TimeUnit limit = cfg.divergence_limit > 0
                             ? cfg.divergence_limit
                             : default_divergence_limit(scenario.locals);

  AnalysisVerdict verdict;
  verdict.chain_id = target.parent->id;

  TimeUnit delta = 1;
  long iterations = 0;
  while (true) {
    ++iterations;
    const TimeUnit demand = dbf_local(target, scenario, system, exec, delta, cfg);
    if (Rational(demand) < sbf_executor(exec, delta)) break;
    const TimeUnit next = supply_exceed_time(exec, demand);
    assert(next > delta);
    delta = next;
    if (delta > limit) {
      verdict.delta = delta;
      verdict.iterations = iterations;
      verdict.schedulable = false;
      return verdict;  // unbounded
    }
  }

  TimeUnit tail = 0;
  for (const auto& r : exec.threads)
    tail = std::max(tail, inverse_sbf(r, target.last_wcet - 1));
  verdict.delta = delta;
  verdict.iterations = iterations;
  verdict.response_time = delta + tail;
  verdict.schedulable = *verdict.response_time <= target.deadline();
  return verdict;
}

}  // namespace

TimeUnit dbf(const Chain& target, const SystemSpec& system, const ExecutorSpec& exec,
             TimeUnit delta, const AnalysisConfig& cfg) {
  const ExecutorScenario scenario = build_scenario(system, exec);
  check_deadline_class(scenario, cfg);
  const LocalChain& local = whole_chain_local(scenario, target, exec);
  return dbf_local(local, scenario, system, exec, delta, cfg);
}

AnalysisVerdict solve_response_time(const Chain& target, const SystemSpec& system,
                                    const ExecutorSpec& exec,
                                    const AnalysisConfig& cfg) {
  const ExecutorScenario scenario = build_scenario(system, exec);
  const LocalChain& local = whole_chain_local(scenario, target, exec);
  return solve_local(local, scenario, system, exec, cfg);
}

AnalysisVerdict rta_np_fp_task(const TaskParams& task,
                               const std::vector<TaskParams>& taskset,
                               const ExecutorSpec& exec) {
  const TimeUnit m = exec.thread_count();

  TimeUnit hyper = 1;
  TimeUnit max_deadline = task.deadline;
  for (const auto& t : taskset) {
    hyper = saturating_lcm(hyper, t.period, 5'000'000);
    max_deadline = std::max(max_deadline, t.deadline);
  }
  const TimeUnit limit = std::max(2 * hyper, 10 * max_deadline);

  const auto demand_at = [&](TimeUnit delta) {
    TimeUnit demand = 0;
    std::vector<BlockingCandidate> lower;
    for (const auto& t : taskset) {
      if (t.id == task.id) continue;
      if (t.priority >= task.priority) {
        const WorkloadQuery q{delta, std::max<TimeUnit>(0, t.deadline - t.wcet)};
        demand += workload_task(t.wcet, t.period, q);
      } else {
        lower.push_back({t.wcet, 1, t.id});
      }
    }
    const TimeUnit cap = std::min<TimeUnit>(m, static_cast<TimeUnit>(lower.size()));
    return demand + blocking_sum(std::move(lower), cap, delta);
  };

  AnalysisVerdict verdict;
  verdict.chain_id = task.id;
  TimeUnit delta = 1;
  long iterations = 0;
  while (true) {
    ++iterations;
    const TimeUnit demand = demand_at(delta);
    if (Rational(demand) < sbf_executor(exec, delta)) break;
    delta = supply_exceed_time(exec, demand);
    if (delta > limit) {
      verdict.delta = delta;
      verdict.iterations = iterations;
      return verdict;
    }
  }

  TimeUnit tail = 0;
  for (const auto& r : exec.threads)
    tail = std::max(tail, inverse_sbf(r, task.wcet - 1));
  verdict.delta = delta;
  verdict.iterations = iterations;
  verdict.response_time = delta + tail;
  verdict.schedulable = *verdict.response_time <= task.deadline;
  return verdict;
}

AnalysisVerdict compose_end_to_end(const std::string& chain_id,
                                   const std::vector<AnalysisVerdict>& parts,
                                   const std::vector<TimeUnit>& delays,
                                   TimeUnit deadline) {
  if (parts.empty())
    throw std::invalid_argument("compose_end_to_end: no sub-chain verdicts");
  if (delays.size() > parts.size() - 1)
    throw std::invalid_argument("compose_end_to_end: more delays than hops for '" +
                                chain_id + "'");

  AnalysisVerdict verdict;
  verdict.chain_id = chain_id;
  TimeUnit total = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    verdict.iterations += parts[i].iterations;
    verdict.delta += parts[i].delta;
    if (!parts[i].finite()) return verdict;  // unbounded propagates
    total += *parts[i].response_time;
    if (i + 1 < parts.size())
      total += i < delays.size() ? delays[i] : 0;
  }
  verdict.response_time = total;
  verdict.schedulable = total <= deadline;
  return verdict;
}

AnalysisVerdict end_to_end(
    const Chain& chain, const SystemSpec& system,
    const std::function<AnalysisConfig(const ExecutorSpec&)>& config_for) {
  const auto runs = split_chain(system, chain);
  std::vector<AnalysisVerdict> parts;
  parts.reserve(runs.size());
  for (const auto& [exec_id, run] : runs) {
    const ExecutorSpec* exec = system.find_executor(exec_id);
    if (exec == nullptr)
      throw std::invalid_argument("chain '" + chain.id +
                                  "' assigned to unknown executor '" + exec_id + "'");
    const ExecutorScenario scenario = build_scenario(system, *exec);
    const LocalChain* target = nullptr;
    for (const auto& local : scenario.locals)
      if (local.parent->id == chain.id && local.first == run.first) target = &local;
    assert(target != nullptr);
    parts.push_back(solve_local(*target, scenario, system, *exec, config_for(*exec)));
  }

  std::vector<TimeUnit> delays;
  if (auto it = system.propagation.find(chain.id); it != system.propagation.end())
    delays = it->second;
  return compose_end_to_end(chain.id, parts, delays, chain.deadline);
}

std::vector<AnalysisVerdict> analyze_system(const SystemSpec& system,
                                            const AnalysisConfig& cfg) {
  std::vector<AnalysisVerdict> verdicts;
  verdicts.reserve(system.chains.size());
  for (const auto& chain : system.chains)
    verdicts.push_back(
        end_to_end(chain, system, [&cfg](const ExecutorSpec&) { return cfg; }));
  return verdicts;
}

}  // namespace chainrta
