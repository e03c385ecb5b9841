#include "model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace chainrta {

TimeUnit Chain::total_wcet() const {
  TimeUnit sum = 0;
  for (const auto& cb : callbacks) sum += cb.wcet;
  return sum;
}

TimeUnit Chain::last_wcet() const {
  return callbacks.empty() ? 0 : callbacks.back().wcet;
}

TimeUnit Chain::largest_wcet() const {
  TimeUnit best = 0;
  for (const auto& cb : callbacks) best = std::max(best, cb.wcet);
  return best;
}

bool ExecutorSpec::all_dedicated() const {
  return std::all_of(threads.begin(), threads.end(),
                     [](const ThreadReservation& r) { return r.dedicated(); });
}

bool CallbackGroup::contains(const std::string& callback_id) const {
  return std::find(members.begin(), members.end(), callback_id) != members.end();
}

const Chain* SystemSpec::find_chain(const std::string& id) const {
  for (const auto& c : chains)
    if (c.id == id) return &c;
  return nullptr;
}

const ExecutorSpec* SystemSpec::find_executor(const std::string& id) const {
  for (const auto& e : executors)
    if (e.id == id) return &e;
  return nullptr;
}

const Callback* SystemSpec::find_callback(const std::string& id) const {
  for (const auto& c : chains)
    for (const auto& cb : c.callbacks)
      if (cb.id == id) return &cb;
  return nullptr;
}

const CallbackGroup* SystemSpec::group_of(const std::string& callback_id) const {
  for (const auto& g : groups)
    if (g.contains(callback_id)) return &g;
  return nullptr;
}

const std::string* SystemSpec::executor_of(const std::string& callback_id) const {
  auto it = assignment.find(callback_id);
  return it == assignment.end() ? nullptr : &it->second;
}

namespace {

template <typename... Parts>
std::string cat(Parts&&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

}  // namespace

std::vector<std::string> validate(const SystemSpec& system) {
  std::vector<std::string> out;

  std::set<std::string> chain_ids;
  std::set<std::string> callback_ids;
  std::set<int> chain_priorities;

  for (const auto& chain : system.chains) {
    if (!chain_ids.insert(chain.id).second)
      out.push_back(cat("chain '", chain.id, "': duplicate chain id"));
    if (chain.callbacks.empty())
      out.push_back(cat("chain '", chain.id, "': has no callbacks"));
    if (chain.period < 1)
      out.push_back(cat("chain '", chain.id, "': period must be >= 1"));
    if (chain.deadline < 1)
      out.push_back(cat("chain '", chain.id, "': deadline must be >= 1"));
    if (!chain_priorities.insert(chain.priority).second)
      out.push_back(cat("chain '", chain.id, "': chain priority ", chain.priority,
                        " is not unique within the system"));
    if (!chain.callbacks.empty()) {
      const bool timer_head = chain.callbacks.front().kind == CallbackKind::timer;
      if ((chain.trigger == TriggerKind::timer) != timer_head)
        out.push_back(cat("chain '", chain.id,
                          "': trigger kind does not match the head callback kind"));
    }
    int expected_index = 1;
    for (const auto& cb : chain.callbacks) {
      if (!callback_ids.insert(cb.id).second)
        out.push_back(cat("callback '", cb.id, "': duplicate callback id"));
      if (cb.wcet < 1)
        out.push_back(cat("callback '", cb.id, "': wcet must be >= 1"));
      if (cb.chain_id != chain.id)
        out.push_back(cat("callback '", cb.id, "': chain_id does not name chain '",
                          chain.id, "'"));
      if (cb.index_in_chain != expected_index)
        out.push_back(cat("callback '", cb.id, "': index_in_chain is ",
                          cb.index_in_chain, ", expected ", expected_index));
      if (cb.kind == CallbackKind::timer && cb.index_in_chain != 1)
        out.push_back(cat("callback '", cb.id,
                          "': only the first callback of a chain may be a timer"));
      ++expected_index;
    }
  }

  std::set<std::string> executor_ids;
  for (const auto& exec : system.executors) {
    if (!executor_ids.insert(exec.id).second)
      out.push_back(cat("executor '", exec.id, "': duplicate executor id"));
    if (exec.threads.empty())
      out.push_back(cat("executor '", exec.id, "': needs at least one thread"));
    int k = 0;
    for (const auto& r : exec.threads) {
      if (r.budget < 1)
        out.push_back(cat("executor '", exec.id, "' thread ", k,
                          ": budget must be >= 1"));
      if (r.budget > r.period)
        out.push_back(cat("executor '", exec.id, "' thread ", k,
                          ": budget exceeds reservation period"));
      ++k;
    }
  }

  // Assignment covers every callback exactly once and references known ids.
  for (const auto& chain : system.chains) {
    for (const auto& cb : chain.callbacks) {
      auto it = system.assignment.find(cb.id);
      if (it == system.assignment.end())
        out.push_back(cat("callback '", cb.id, "': not assigned to any executor"));
      else if (executor_ids.count(it->second) == 0)
        out.push_back(cat("callback '", cb.id, "': assigned to unknown executor '",
                          it->second, "'"));
    }
  }
  for (const auto& [cb_id, exec_id] : system.assignment) {
    if (callback_ids.count(cb_id) == 0)
      out.push_back(cat("assignment: unknown callback '", cb_id, "'"));
  }

  // Groups: known members, no callback in two groups, members co-resident on
  // one executor. Callbacks without an explicit group get an implicit
  // singleton reentrant group, which needs no checking.
  std::set<std::string> group_ids;
  std::set<std::string> grouped_callbacks;
  for (const auto& group : system.groups) {
    if (!group_ids.insert(group.id).second)
      out.push_back(cat("group '", group.id, "': duplicate group id"));
    const std::string* home = nullptr;
    for (const auto& member : group.members) {
      if (callback_ids.count(member) == 0) {
        out.push_back(cat("group '", group.id, "': unknown member callback '",
                          member, "'"));
        continue;
      }
      if (!grouped_callbacks.insert(member).second)
        out.push_back(cat("callback '", member, "': belongs to more than one group"));
      if (const std::string* exec_id = system.executor_of(member)) {
        if (home == nullptr)
          home = exec_id;
        else if (*home != *exec_id)
          out.push_back(cat("group '", group.id,
                            "': members span executors ('", *home, "' and '",
                            *exec_id, "')"));
      }
    }
  }
  for (const auto& chain : system.chains) {
    for (const auto& cb : chain.callbacks) {
      if (cb.group_id && group_ids.count(*cb.group_id) == 0)
        out.push_back(cat("callback '", cb.id, "': names unknown group '",
                          *cb.group_id, "'"));
      if (cb.group_id) {
        const CallbackGroup* g = system.group_of(cb.id);
        if (g == nullptr || g->id != *cb.group_id)
          out.push_back(cat("callback '", cb.id, "': group '", *cb.group_id,
                            "' does not list it as a member"));
      }
    }
  }

  // Propagation delays must be non-negative and reference known chains.
  for (const auto& [chain_id, delays] : system.propagation) {
    if (chain_ids.count(chain_id) == 0)
      out.push_back(cat("propagation: unknown chain '", chain_id, "'"));
    for (TimeUnit d : delays)
      if (d < 0)
        out.push_back(cat("propagation: chain '", chain_id,
                          "' has a negative hop delay"));
  }

  return out;
}

const char* to_string(CallbackKind k) {
  return k == CallbackKind::timer ? "timer" : "regular";
}

const char* to_string(Scheme s) {
  return s == Scheme::standard ? "standard" : "priority_driven";
}

const char* to_string(GroupKind k) {
  return k == GroupKind::reentrant ? "reentrant" : "mutually_exclusive";
}

}  // namespace chainrta
