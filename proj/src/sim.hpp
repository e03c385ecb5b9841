#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "model.hpp"

namespace chainrta {

// Deterministic discrete-event simulation of all executors on a shared
// integer clock. Head callbacks release strictly periodically (phase 0 or a
// seeded random phase in [0, T)); completion of a sub-chain's last callback
// releases the successor sub-chain's head after the configured propagation
// delay.
struct SimConfig {
  TimeUnit horizon = 0;
  std::uint64_t seed = 0;
  enum class Offsets { synchronous, randomized };
  Offsets offsets = Offsets::synchronous;
  // Applies to every executor when set; otherwise each executor runs the
  // scheme from its spec.
  std::optional<Scheme> scheme_override;
  // Align reservation budget windows to the worst case (initial blackout of
  // 2(T - C)) instead of budget-at-period-start.
  bool adversarial_budget_alignment = false;
  bool collect_trace = false;
  // Online semantic checks (work conservation, mutual exclusion); violations
  // are reported in SimResult rather than aborting.
  bool check_invariants = false;
};

enum class TraceEventKind { release, readyset_update, start, finish, pp };

struct TraceRecord {
  TimeUnit time = 0;
  int thread = -1;  // -1 for release records
  TraceEventKind event = TraceEventKind::release;
  std::string callback;  // "-" for readyset_update/pp records
  std::int64_t instance = -1;
};

struct ChainStats {
  std::int64_t released = 0;
  std::int64_t completed = 0;
  std::int64_t incomplete = 0;
  std::int64_t deadline_misses = 0;
  TimeUnit max_response = 0;
  TimeUnit p99_response = 0;
  double mean_response = 0.0;
  std::optional<TimeUnit> oldest_incomplete_release;
  std::vector<TimeUnit> responses;  // completed instances, release order
};

struct ExecutorStats {
  std::int64_t readyset_updates = 0;
  std::int64_t polling_points = 0;      // standard scheme only
  std::int64_t processing_windows = 0;  // distinct polling-point times
};

struct SimResult {
  std::map<std::string, ChainStats> chains;
  std::map<std::string, ExecutorStats> executors;
  std::vector<TraceRecord> trace;
  std::vector<std::string> invariant_violations;
};

const char* to_string(TraceEventKind k);

// Runs the simulation. The system must pass validate().
SimResult simulate(const SystemSpec& system, const SimConfig& cfg);

// Line-delimited export: "time thread event callback instance".
std::string trace_to_text(const std::vector<TraceRecord>& trace);

// Global thread ids are dense and executor-major; maps a global thread id
// back to the executor index in system.executors.
std::vector<int> thread_to_executor_index(const SystemSpec& system);

}  // namespace chainrta
