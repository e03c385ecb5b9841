#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chainrta {

// All time quantities are discrete non-negative integers in a common
// abstract unit (e.g. microseconds or scheduler ticks).
using TimeUnit = std::int64_t;

enum class CallbackKind { timer, regular };
enum class TriggerKind { timer, event };
enum class Scheme { standard, priority_driven };
enum class GroupKind { reentrant, mutually_exclusive };

// Smallest executable unit. Non-preemptive once started. Larger priority
// values mean higher priority.
struct Callback {
  std::string id;
  TimeUnit wcet = 1;
  int priority = 0;
  CallbackKind kind = CallbackKind::regular;
  std::optional<std::string> group_id;  // empty = implicit singleton reentrant group
  std::string chain_id;
  int index_in_chain = 1;  // 1-based position within the chain
};

// Ordered sequence of callbacks with precedence dependencies; carries the
// timing parameters (period, deadline, priority) for all its callbacks.
struct Chain {
  std::string id;
  std::vector<Callback> callbacks;
  TimeUnit period = 1;
  TimeUnit deadline = 1;
  int priority = 0;
  TriggerKind trigger = TriggerKind::timer;

  std::size_t length() const { return callbacks.size(); }
  TimeUnit total_wcet() const;  // E_C, always derived from the callbacks
  TimeUnit last_wcet() const;
  TimeUnit largest_wcet() const;
  // Deadline class is derived, never stored.
  bool constrained_deadline() const { return deadline <= period; }
};

// Periodic CPU reservation backing one worker thread: `budget` units of
// execution every `period` units. budget == period models a dedicated core.
struct ThreadReservation {
  TimeUnit budget = 1;
  TimeUnit period = 1;

  bool dedicated() const { return budget == period; }
  TimeUnit max_blackout() const { return 2 * (period - budget); }
};

struct ExecutorSpec {
  std::string id;
  std::vector<ThreadReservation> threads;
  Scheme scheme = Scheme::standard;

  int thread_count() const { return static_cast<int>(threads.size()); }
  bool all_dedicated() const;
};

struct CallbackGroup {
  std::string id;
  GroupKind kind = GroupKind::reentrant;
  std::vector<std::string> members;  // callback ids

  bool contains(const std::string& callback_id) const;
};

// Complete system description: chains, executors, callback groups, the
// callback-to-executor assignment and per-hop propagation delays for chains
// spanning multiple executors.
struct SystemSpec {
  std::vector<Chain> chains;
  std::vector<ExecutorSpec> executors;
  std::vector<CallbackGroup> groups;
  std::map<std::string, std::string> assignment;  // callback id -> executor id
  // chain id -> propagation delay per executor boundary, in sub-chain order
  std::map<std::string, std::vector<TimeUnit>> propagation;

  const Chain* find_chain(const std::string& id) const;
  const ExecutorSpec* find_executor(const std::string& id) const;
  const Callback* find_callback(const std::string& id) const;
  // Explicit group of a callback, or nullptr for the implicit singleton
  // reentrant group.
  const CallbackGroup* group_of(const std::string& callback_id) const;
  const std::string* executor_of(const std::string& callback_id) const;
};

// Per-chain analysis outcome: a finite worst-case response time or an
// explicit "unbounded" verdict, with the final fixed-point interval.
struct AnalysisVerdict {
  std::string chain_id;
  std::optional<TimeUnit> response_time;  // empty = unbounded
  TimeUnit delta = 0;
  long iterations = 0;
  bool schedulable = false;

  bool finite() const { return response_time.has_value(); }
};

// Checks every structural invariant of the system. Returns an empty list iff
// the spec is well formed; each violation names the offending entity.
std::vector<std::string> validate(const SystemSpec& system);

const char* to_string(CallbackKind k);
const char* to_string(Scheme s);
const char* to_string(GroupKind k);

}  // namespace chainrta
