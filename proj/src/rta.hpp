#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "demand.hpp"
#include "model.hpp"
#include "supply.hpp"

namespace chainrta {

enum class DeadlineClass { constrained, arbitrary };

struct AnalysisConfig {
  Scheme scheme = Scheme::standard;
  DeadlineClass deadline_class = DeadlineClass::constrained;
  bool groups_enabled = true;
  // Largest fixed-point interval explored before declaring the chain
  // unbounded; 0 derives max(2 * hyperperiod, 10 * max deadline) from the
  // chains under analysis (hyperperiod saturated at 5e6).
  TimeUnit divergence_limit = 0;
};

// The four analysis methods of the experiment harness.
enum class Method { PWA_CD, PPWA_CD, PWA_AD, PPWA_AD };

AnalysisConfig config_for_method(Method method);
const char* to_string(Method method);
std::optional<Method> method_from_string(const std::string& name);
bool method_is_priority_driven(Method method);

// Demand-bound function of `target` on `exec` for the interval `delta`,
// assembled per the configured scheme and deadline class (lower-priority
// blocking and group serialization terms included). The target must be
// assigned wholly to `exec`; other chains may be split across executors, in
// which case only their sub-chains local to `exec` interfere.
// Throws std::invalid_argument on a config/deadline-class mismatch.
TimeUnit dbf(const Chain& target, const SystemSpec& system, const ExecutorSpec& exec,
             TimeUnit delta, const AnalysisConfig& cfg);

// Finds the smallest delta >= 1 with dbf(delta) < sbf_executor(delta) by
// jumping delta to the supply level matching the current demand, then bounds
// the response time as delta + max_k inverse_sbf(r_k, E_last - 1).
AnalysisVerdict solve_response_time(const Chain& target, const SystemSpec& system,
                                    const ExecutorSpec& exec, const AnalysisConfig& cfg);

// Independent periodic non-preemptive task, for the baseline test below.
struct TaskParams {
  std::string id;
  TimeUnit wcet = 1;
  TimeUnit period = 1;
  TimeUnit deadline = 1;
  int priority = 0;
};

// Classic global NP-FP response-time bound for independent tasks
// (higher-priority workload plus the m largest lower-priority blocking
// terms). Serves as a cross-check oracle for the fixed-point machinery.
AnalysisVerdict rta_np_fp_task(const TaskParams& task,
                               const std::vector<TaskParams>& taskset,
                               const ExecutorSpec& exec);

// Additive composition of per-sub-chain verdicts with propagation delays:
// R = sum(R_i + delay_i) + R_n. Unbounded propagates.
AnalysisVerdict compose_end_to_end(const std::string& chain_id,
                                   const std::vector<AnalysisVerdict>& parts,
                                   const std::vector<TimeUnit>& delays,
                                   TimeUnit deadline);

// End-to-end bound of a chain possibly spanning several executors. Each
// maximal contiguous run of callbacks on one executor is analyzed as a
// sub-chain there; non-adjacent runs of the same chain on one executor are
// treated as mutually interfering independent chains.
AnalysisVerdict end_to_end(
    const Chain& chain, const SystemSpec& system,
    const std::function<AnalysisConfig(const ExecutorSpec&)>& config_for);

// End-to-end verdicts for every chain of the system under one configuration.
std::vector<AnalysisVerdict> analyze_system(const SystemSpec& system,
                                            const AnalysisConfig& cfg);

}  // namespace chainrta
