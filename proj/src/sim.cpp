#include "sim.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace chainrta {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e9b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct FlatCallback {
  const Callback* src = nullptr;
  int chain = -1;
  int pos = 0;  // 0-based position within the chain
  TimeUnit wcet = 1;
  CallbackKind kind = CallbackKind::regular;
  int priority = 0;
  int exec = -1;
  int group = -1;  // mutually-exclusive group index, -1 otherwise
  TimeUnit arrival_delay = 0;  // propagation delay before this callback arrives
  int reg_order = 0;
};

struct FlatChain {
  const Chain* src = nullptr;
  int first_cb = 0;
  int length = 0;
  TimeUnit period = 1;
  TimeUnit deadline = 1;
  TimeUnit phase = 0;
};

struct FlatThread {
  int exec = -1;
  ThreadReservation res;
  TimeUnit window_offset = 0;
  bool dedicated = true;

  bool busy = false;
  int running_cb = -1;
  std::int64_t running_instance = -1;
  TimeUnit run_start = 0;
  TimeUnit wake_scheduled_at = -1;
};

struct FlatExec {
  const ExecutorSpec* src = nullptr;
  Scheme scheme = Scheme::standard;
  int first_thread = 0;
  int nthreads = 0;
  std::vector<int> callbacks;  // flat callback indices hosted here, in registration order

  // cached set of ready instances (standard scheme only)
  std::vector<std::pair<int, std::int64_t>> readyset;
  std::int64_t updates = 0;
  std::int64_t pps = 0;
  std::int64_t windows = 0;
  TimeUnit last_pp_time = -1;
};

// kind: 0 finish, 1 arrival, 2 window wake. Finish events process before
// arrivals, arrivals before picks; the tie order within a kind is fixed for
// determinism only.
struct Event {
  TimeUnit time;
  int kind;
  int a;            // finish/wake: thread, arrival: callback
  std::int64_t b;   // arrival: chain instance
};

struct EventAfter {
  bool operator()(const Event& x, const Event& y) const {
    if (x.time != y.time) return x.time > y.time;
    if (x.kind != y.kind) return x.kind > y.kind;
    if (x.a != y.a) return x.a > y.a;
    return x.b > y.b;
  }
};

class Engine {
 public:
  Engine(const SystemSpec& system, const SimConfig& cfg) : system_(system), cfg_(cfg) {
    build();
  }

  SimResult run();

 private:
  void build();
  void process_finish(TimeUnit t, int thread);
  void process_arrival(TimeUnit t, int cb, std::int64_t instance);
  void pick_pass(TimeUnit t);
  void attempt(TimeUnit t, int thread);
  int scan_readyset_standard(const FlatExec& ex, std::size_t* entry_index) const;
  int scan_pending_priority(const FlatExec& ex) const;
  void refresh_readyset(TimeUnit t, int thread, FlatExec& ex);
  void start_instance(TimeUnit t, int thread, int cb, std::int64_t instance);
  bool eligible(const FlatCallback& fc) const { return fc.group < 0 || group_busy_[fc.group] == 0; }
  bool in_window(const FlatThread& th, TimeUnit t) const;
  TimeUnit next_window_start(const FlatThread& th, TimeUnit t) const;
  TimeUnit finish_time(const FlatThread& th, TimeUnit start, TimeUnit work) const;
  void record(TimeUnit t, int thread, TraceEventKind ev, int cb, std::int64_t instance);
  void check_invariants(TimeUnit t);
  void finalize(SimResult& result);

  const SystemSpec& system_;
  const SimConfig& cfg_;

  std::vector<FlatCallback> callbacks_;
  std::vector<FlatChain> chains_;
  std::vector<FlatThread> threads_;
  std::vector<FlatExec> execs_;
  std::vector<int> group_busy_;

  std::vector<std::deque<std::int64_t>> pending_;  // per callback, arrived instances
  std::vector<int> in_readyset_;                   // per callback, cached entries
  std::vector<std::vector<TimeUnit>> release_times_;  // per chain, per instance
  std::vector<std::vector<TimeUnit>> responses_;      // -1 while incomplete

  std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
  std::vector<char> exec_touched_;
  std::vector<char> thread_woken_;
  std::vector<int> touched_list_;

  std::vector<TraceRecord> trace_;
  std::vector<std::string> violations_;
};

void Engine::build() {
  if (cfg_.horizon < 1) throw std::invalid_argument("simulate: horizon must be >= 1");

  std::map<std::string, int> exec_index;
  for (const auto& e : system_.executors) {
    FlatExec fe;
    fe.src = &e;
    fe.scheme = cfg_.scheme_override.value_or(e.scheme);
    fe.first_thread = static_cast<int>(threads_.size());
    fe.nthreads = e.thread_count();
    exec_index[e.id] = static_cast<int>(execs_.size());
    execs_.push_back(fe);
    for (const auto& r : e.threads) {
      FlatThread th;
      th.exec = static_cast<int>(execs_.size()) - 1;
      th.res = r;
      th.dedicated = r.dedicated();
      th.window_offset =
          (!th.dedicated && cfg_.adversarial_budget_alignment) ? r.max_blackout() : 0;
      threads_.push_back(th);
    }
  }

  std::map<std::string, int> me_group_index;
  for (const auto& g : system_.groups) {
    if (g.kind != GroupKind::mutually_exclusive) continue;
    me_group_index[g.id] = static_cast<int>(group_busy_.size());
    group_busy_.push_back(0);
  }

  std::uint64_t rng = cfg_.seed;
  for (const auto& chain : system_.chains) {
    FlatChain fc;
    fc.src = &chain;
    fc.first_cb = static_cast<int>(callbacks_.size());
    fc.length = static_cast<int>(chain.callbacks.size());
    fc.period = chain.period;
    fc.deadline = chain.deadline;
    fc.phase = cfg_.offsets == SimConfig::Offsets::randomized
                   ? static_cast<TimeUnit>(splitmix64(rng) % static_cast<std::uint64_t>(chain.period))
                   : 0;
    const int chain_idx = static_cast<int>(chains_.size());

    int prev_exec = -1;
    int hop = 0;
    const std::vector<TimeUnit>* delays = nullptr;
    if (auto it = system_.propagation.find(chain.id); it != system_.propagation.end())
      delays = &it->second;
    for (const auto& cb : chain.callbacks) {
      FlatCallback f;
      f.src = &cb;
      f.chain = chain_idx;
      f.pos = cb.index_in_chain - 1;
      f.wcet = cb.wcet;
      f.kind = cb.kind;
      f.priority = cb.priority;
      f.reg_order = static_cast<int>(callbacks_.size());
      const std::string* exec_id = system_.executor_of(cb.id);
      assert(exec_id != nullptr);
      f.exec = exec_index.at(*exec_id);
      if (prev_exec >= 0 && f.exec != prev_exec) {
        if (delays != nullptr && hop < static_cast<int>(delays->size()))
          f.arrival_delay = (*delays)[hop];
        ++hop;
      }
      prev_exec = f.exec;
      const CallbackGroup* g = system_.group_of(cb.id);
      if (g != nullptr && g->kind == GroupKind::mutually_exclusive)
        f.group = me_group_index.at(g->id);
      execs_[f.exec].callbacks.push_back(static_cast<int>(callbacks_.size()));
      callbacks_.push_back(f);
    }
    chains_.push_back(fc);
  }

  pending_.assign(callbacks_.size(), {});
  in_readyset_.assign(callbacks_.size(), 0);
  release_times_.assign(chains_.size(), {});
  responses_.assign(chains_.size(), {});
  exec_touched_.assign(execs_.size(), 0);
  thread_woken_.assign(threads_.size(), 0);

  // First head release of every chain; later releases are scheduled as the
  // earlier ones are processed.
  for (std::size_t c = 0; c < chains_.size(); ++c)
    if (chains_[c].phase < cfg_.horizon)
      queue_.push({chains_[c].phase, 1, chains_[c].first_cb, 0});
}

bool Engine::in_window(const FlatThread& th, TimeUnit t) const {
  if (th.dedicated) return true;
  if (t < th.window_offset) return false;
  return (t - th.window_offset) % th.res.period < th.res.budget;
}

TimeUnit Engine::next_window_start(const FlatThread& th, TimeUnit t) const {
  assert(!th.dedicated);
  if (t < th.window_offset) return th.window_offset;
  const TimeUnit k = (t - th.window_offset) / th.res.period;
  return th.window_offset + (k + 1) * th.res.period;
}

TimeUnit Engine::finish_time(const FlatThread& th, TimeUnit start, TimeUnit work) const {
  if (th.dedicated) return start + work;
  assert(in_window(th, start));
  TimeUnit cur = start;
  TimeUnit remaining = work;
  while (true) {
    const TimeUnit k = (cur - th.window_offset) / th.res.period;
    const TimeUnit window_end = th.window_offset + k * th.res.period + th.res.budget;
    const TimeUnit available = window_end - cur;
    if (remaining <= available) return cur + remaining;
    remaining -= available;
    cur = th.window_offset + (k + 1) * th.res.period;
  }
}

void Engine::record(TimeUnit t, int thread, TraceEventKind ev, int cb,
                    std::int64_t instance) {
  if (!cfg_.collect_trace) return;
  TraceRecord r;
  r.time = t;
  r.thread = thread;
  r.event = ev;
  r.callback = cb >= 0 ? callbacks_[cb].src->id : "-";
  r.instance = instance;
  trace_.push_back(std::move(r));
}

void Engine::process_arrival(TimeUnit t, int cb, std::int64_t instance) {
  FlatCallback& fc = callbacks_[cb];
  FlatExec& ex = execs_[fc.exec];

  if (fc.pos == 0) {
    // Chain head release: record the instance and schedule the next one.
    const FlatChain& chain = chains_[fc.chain];
    assert(static_cast<std::int64_t>(release_times_[fc.chain].size()) == instance);
    release_times_[fc.chain].push_back(t);
    responses_[fc.chain].push_back(-1);
    const TimeUnit next = chain.phase + (instance + 1) * chain.period;
    if (next < cfg_.horizon) queue_.push({next, 1, cb, instance + 1});
  }
  record(t, -1, TraceEventKind::release, cb, instance);

  if (ex.scheme == Scheme::standard && fc.kind == CallbackKind::timer) {
    // Timer callbacks enter the ReadySet instantly on release.
    ex.readyset.emplace_back(cb, instance);
    ++in_readyset_[cb];
  } else {
    pending_[cb].push_back(instance);
  }
  exec_touched_[fc.exec] = 1;
}

void Engine::process_finish(TimeUnit t, int thread) {
  FlatThread& th = threads_[thread];
  assert(th.busy);
  const int cb = th.running_cb;
  const std::int64_t instance = th.running_instance;
  const FlatCallback& fc = callbacks_[cb];

  th.busy = false;
  th.running_cb = -1;
  if (fc.group >= 0) --group_busy_[fc.group];
  record(t, thread, TraceEventKind::finish, cb, instance);

  const FlatChain& chain = chains_[fc.chain];
  if (fc.pos + 1 < chain.length) {
    const FlatCallback& next = callbacks_[chain.first_cb + fc.pos + 1];
    queue_.push({t + next.arrival_delay, 1, chain.first_cb + fc.pos + 1, instance});
  } else {
    responses_[fc.chain][instance] = t - release_times_[fc.chain][instance];
  }

  exec_touched_[fc.exec] = 1;
  thread_woken_[thread] = 1;
}

void Engine::refresh_readyset(TimeUnit t, int thread, FlatExec& ex) {
  ++ex.updates;
  ++ex.pps;
  if (ex.last_pp_time != t) {
    ex.last_pp_time = t;
    ++ex.windows;
  }
  record(t, thread, TraceEventKind::pp, -1, -1);
  // Pull at most one pending instance of each regular callback not already
  // cached.
  for (int cb : ex.callbacks) {
    if (pending_[cb].empty() || in_readyset_[cb] > 0) continue;
    ex.readyset.emplace_back(cb, pending_[cb].front());
    pending_[cb].pop_front();
    ++in_readyset_[cb];
  }
}

int Engine::scan_readyset_standard(const FlatExec& ex, std::size_t* entry_index) const {
  int best = -1;
  std::size_t best_entry = 0;
  for (std::size_t i = 0; i < ex.readyset.size(); ++i) {
    const auto& [cb, instance] = ex.readyset[i];
    const FlatCallback& fc = callbacks_[cb];
    if (!eligible(fc)) continue;
    if (best < 0) {
      best = cb;
      best_entry = i;
      continue;
    }
    const FlatCallback& bc = callbacks_[best];
    const auto key = [](const FlatCallback& f, std::int64_t inst) {
      return std::make_tuple(f.kind == CallbackKind::timer ? 0 : 1, -f.priority,
                             f.reg_order, inst);
    };
    if (key(fc, instance) < key(bc, ex.readyset[best_entry].second)) {
      best = cb;
      best_entry = i;
    }
  }
  *entry_index = best_entry;
  return best;
}

int Engine::scan_pending_priority(const FlatExec& ex) const {
  // Per callback only its oldest pending instance matters; ties fall back to
  // registration order.
  int best = -1;
  for (int cb : ex.callbacks) {
    const FlatCallback& fc = callbacks_[cb];
    if (pending_[cb].empty() || !eligible(fc)) continue;
    if (best < 0 || fc.priority > callbacks_[best].priority) best = cb;
  }
  return best;
}

void Engine::start_instance(TimeUnit t, int thread, int cb, std::int64_t instance) {
  FlatThread& th = threads_[thread];
  const FlatCallback& fc = callbacks_[cb];
  assert(!th.busy && eligible(fc));
  th.busy = true;
  th.running_cb = cb;
  th.running_instance = instance;
  th.run_start = t;
  if (fc.group >= 0) ++group_busy_[fc.group];
  record(t, thread, TraceEventKind::start, cb, instance);
  queue_.push({finish_time(th, t, fc.wcet), 0, thread, 0});
}

void Engine::attempt(TimeUnit t, int thread) {
  FlatThread& th = threads_[thread];
  FlatExec& ex = execs_[th.exec];
  if (th.busy) return;
  if (!in_window(th, t)) {
    const TimeUnit wake = next_window_start(th, t);
    if (th.wake_scheduled_at != wake && wake < cfg_.horizon) {
      th.wake_scheduled_at = wake;
      queue_.push({wake, 2, thread, 0});
    }
    return;
  }

  if (ex.scheme == Scheme::standard) {
    std::size_t entry = 0;
    int cb = scan_readyset_standard(ex, &entry);
    if (cb < 0) {
      // Polling point: the cached set has nothing this thread may run.
      refresh_readyset(t, thread, ex);
      cb = scan_readyset_standard(ex, &entry);
    }
    if (cb < 0) return;
    const std::int64_t instance = ex.readyset[entry].second;
    ex.readyset.erase(ex.readyset.begin() + static_cast<std::ptrdiff_t>(entry));
    --in_readyset_[cb];
    start_instance(t, thread, cb, instance);
  } else {
    ++ex.updates;
    record(t, thread, TraceEventKind::readyset_update, -1, -1);
    const int cb = scan_pending_priority(ex);
    if (cb < 0) return;
    const std::int64_t instance = pending_[cb].front();
    pending_[cb].pop_front();
    start_instance(t, thread, cb, instance);
  }
}

void Engine::pick_pass(TimeUnit t) {
  for (int thread = 0; thread < static_cast<int>(threads_.size()); ++thread) {
    FlatThread& th = threads_[thread];
    if (th.busy) continue;
    if (!exec_touched_[th.exec] && !thread_woken_[thread]) continue;
    attempt(t, thread);
  }
  std::fill(exec_touched_.begin(), exec_touched_.end(), 0);
  std::fill(thread_woken_.begin(), thread_woken_.end(), 0);
}

void Engine::check_invariants(TimeUnit t) {
  for (int g = 0; g < static_cast<int>(group_busy_.size()); ++g)
    if (group_busy_[g] > 1) {
      std::ostringstream os;
      os << "t=" << t << ": mutually-exclusive group has " << group_busy_[g]
         << " members executing";
      violations_.push_back(os.str());
    }
  // Work conservation: no idle in-budget thread while an instance it could
  // run exists (standard: eligible in the cached set; priority-driven:
  // eligible anywhere pending).
  for (std::size_t e = 0; e < execs_.size(); ++e) {
    const FlatExec& ex = execs_[e];
    bool idle_thread = false;
    for (int k = ex.first_thread; k < ex.first_thread + ex.nthreads; ++k)
      if (!threads_[k].busy && in_window(threads_[k], t)) idle_thread = true;
    if (!idle_thread) continue;
    bool runnable = false;
    if (ex.scheme == Scheme::standard) {
      for (const auto& [cb, instance] : ex.readyset)
        if (eligible(callbacks_[cb])) runnable = true;
    } else {
      for (int cb : ex.callbacks)
        if (!pending_[cb].empty() && eligible(callbacks_[cb])) runnable = true;
    }
    if (runnable) {
      std::ostringstream os;
      os << "t=" << t << ": executor '" << ex.src->id
         << "' has an idle thread while an eligible instance waits";
      violations_.push_back(os.str());
    }
  }
}

SimResult Engine::run() {
  while (!queue_.empty()) {
    const TimeUnit t = queue_.top().time;
    if (t > cfg_.horizon) break;
    while (!queue_.empty() && queue_.top().time == t) {
      const Event ev = queue_.top();
      queue_.pop();
      switch (ev.kind) {
        case 0: process_finish(t, ev.a); break;
        case 1: process_arrival(t, ev.a, ev.b); break;
        case 2: thread_woken_[ev.a] = 1; break;
        default: assert(false);
      }
    }
    pick_pass(t);
    if (cfg_.check_invariants) check_invariants(t);
  }

  SimResult result;
  finalize(result);
  return result;
}

void Engine::finalize(SimResult& result) {
  for (std::size_t c = 0; c < chains_.size(); ++c) {
    ChainStats stats;
    stats.released = static_cast<std::int64_t>(release_times_[c].size());
    double sum = 0.0;
    for (std::size_t i = 0; i < responses_[c].size(); ++i) {
      const TimeUnit resp = responses_[c][i];
      if (resp < 0) {
        ++stats.incomplete;
        if (!stats.oldest_incomplete_release)
          stats.oldest_incomplete_release = release_times_[c][i];
        if (cfg_.horizon - release_times_[c][i] > chains_[c].deadline)
          ++stats.deadline_misses;
        continue;
      }
      ++stats.completed;
      stats.responses.push_back(resp);
      stats.max_response = std::max(stats.max_response, resp);
      if (resp > chains_[c].deadline) ++stats.deadline_misses;
      sum += static_cast<double>(resp);
    }
    if (stats.completed > 0) {
      stats.mean_response = sum / static_cast<double>(stats.completed);
      std::vector<TimeUnit> sorted = stats.responses;
      std::sort(sorted.begin(), sorted.end());
      const auto rank = static_cast<std::size_t>(
          std::ceil(0.99 * static_cast<double>(sorted.size())));
      stats.p99_response = sorted[rank - 1];
    }
    result.chains.emplace(chains_[c].src->id, std::move(stats));
  }
  for (const auto& ex : execs_) {
    ExecutorStats stats;
    stats.readyset_updates = ex.updates;
    stats.polling_points = ex.scheme == Scheme::standard ? ex.pps : 0;
    stats.processing_windows = ex.scheme == Scheme::standard ? ex.windows : 0;
    result.executors.emplace(ex.src->id, stats);
  }
  result.trace = std::move(trace_);
  result.invariant_violations = std::move(violations_);
}

}  // namespace

const char* to_string(TraceEventKind k) {
  switch (k) {
    case TraceEventKind::release: return "release";
    case TraceEventKind::readyset_update: return "readyset_update";
    case TraceEventKind::start: return "start";
    case TraceEventKind::finish: return "finish";
    case TraceEventKind::pp: return "pp";
  }
  return "?";
}

SimResult simulate(const SystemSpec& system, const SimConfig& cfg) {
  Engine engine(system, cfg);
  return engine.run();
}

std::string trace_to_text(const std::vector<TraceRecord>& trace) {
  std::ostringstream os;
  for (const auto& r : trace)
    os << r.time << ' ' << r.thread << ' ' << to_string(r.event) << ' ' << r.callback
       << ' ' << r.instance << '\n';
  return os.str();
}

std::vector<int> thread_to_executor_index(const SystemSpec& system) {
  std::vector<int> map;
  for (std::size_t e = 0; e < system.executors.size(); ++e)
    for (int k = 0; k < system.executors[e].thread_count(); ++k)
      map.push_back(static_cast<int>(e));
  return map;
}

}  // namespace chainrta
