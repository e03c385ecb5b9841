#include "gen.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

#include "assign.hpp"

namespace chainrta {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e9b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform double in (0, 1); platform-independent given the seed stream.
double uniform01(std::uint64_t& state) {
  while (true) {
    const double r =
        static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
    if (r > 0.0) return r;
  }
}

std::vector<double> uunifast_draw(int n, double total, std::uint64_t& state) {
  assert(n >= 1 && total > 0.0);
  std::vector<double> values(static_cast<std::size_t>(n));
  double sum = total;
  for (int i = 1; i < n; ++i) {
    double next = sum * std::pow(uniform01(state), 1.0 / static_cast<double>(n - i));
    if (next >= sum) next = std::nextafter(sum, 0.0);
    values[static_cast<std::size_t>(i - 1)] = sum - next;
    sum = next;
  }
  values[static_cast<std::size_t>(n - 1)] = sum;
  return values;
}

TimeUnit log_uniform_period(TimeUnit lo, TimeUnit hi, std::uint64_t& state) {
  if (lo == hi) return lo;
  const double a = std::log(static_cast<double>(lo));
  const double b = std::log(static_cast<double>(hi));
  const TimeUnit t =
      static_cast<TimeUnit>(std::llround(std::exp(a + uniform01(state) * (b - a))));
  return std::clamp(t, lo, hi);
}

// Integer callback budgets summing exactly to total, each >= 1, remainder
// folded into the last callback.
std::vector<TimeUnit> split_wcets(TimeUnit total, int n, std::uint64_t& state) {
  assert(total >= n);
  const std::vector<double> shares =
      uunifast_draw(n, static_cast<double>(total), state);
  std::vector<TimeUnit> wcets(static_cast<std::size_t>(n), 1);
  TimeUnit used = 0;
  for (int j = 0; j + 1 < n; ++j) {
    wcets[static_cast<std::size_t>(j)] =
        std::max<TimeUnit>(1, std::llround(shares[static_cast<std::size_t>(j)]));
    used += wcets[static_cast<std::size_t>(j)];
  }
  TimeUnit last = total - used;
  // Steal back from the largest earlier callbacks if rounding overshot.
  while (last < 1) {
    auto it = std::max_element(wcets.begin(), wcets.end() - 1);
    if (*it <= 1) break;
    --*it;
    ++last;
  }
  wcets[static_cast<std::size_t>(n - 1)] = std::max<TimeUnit>(1, last);
  return wcets;
}

}  // namespace

std::vector<double> uunifast(int n, double total, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("uunifast: n must be >= 1");
  if (total <= 0.0) throw std::invalid_argument("uunifast: utilization must be > 0");
  std::uint64_t state = seed;
  return uunifast_draw(n, total, state);
}

std::vector<Chain> generate_chain_set(const GenParams& params) {
  if (params.chain_count < 1 || params.callbacks_per_chain < 1)
    throw std::invalid_argument("generate_chain_set: counts must be >= 1");
  if (params.total_utilization <= 0.0)
    throw std::invalid_argument("generate_chain_set: utilization must be > 0");
  if (params.period_min < 1 || params.period_max < params.period_min)
    throw std::invalid_argument("generate_chain_set: bad period range");
  if (params.deadline_mode == GenParams::DeadlineMode::scaled &&
      params.deadline_factor <= 0.0)
    throw std::invalid_argument("generate_chain_set: bad deadline factor");

  std::uint64_t state = params.seed;
  // Chain priorities follow the index, so the draws are paired to match the
  // criticality-as-priority convention: chain 1 (lowest priority) gets the
  // longest period and the heaviest chain is the most critical one.
  // Marginals stay UUniFast / log-uniform, only the pairing is fixed.
  std::vector<double> utils =
      uunifast_draw(params.chain_count, params.total_utilization, state);
  std::iter_swap(std::max_element(utils.begin(), utils.end()), utils.end() - 1);
  std::vector<TimeUnit> periods(static_cast<std::size_t>(params.chain_count));
  for (auto& p : periods)
    p = log_uniform_period(params.period_min, params.period_max, state);
  std::sort(periods.rbegin(), periods.rend());

  const int n_cb = params.callbacks_per_chain;
  std::vector<Chain> chains;
  chains.reserve(static_cast<std::size_t>(params.chain_count));
  for (int i = 0; i < params.chain_count; ++i) {
    const double u = utils[static_cast<std::size_t>(i)];
    TimeUnit period = periods[static_cast<std::size_t>(i)];
    TimeUnit total = std::llround(u * static_cast<double>(period));
    if (total < n_cb) {
      // Stretch the period so the chain can hold one unit per callback; if
      // even the longest period cannot, accept the inflated utilization.
      const double needed = static_cast<double>(n_cb) / u;
      period = needed >= static_cast<double>(params.period_max)
                   ? params.period_max
                   : std::max<TimeUnit>(period,
                                        static_cast<TimeUnit>(std::ceil(needed)));
      total = std::max<TimeUnit>(n_cb, std::llround(u * static_cast<double>(period)));
    }

    Chain chain;
    chain.id = "c" + std::to_string(i + 1);
    chain.period = period;
    chain.deadline =
        params.deadline_mode == GenParams::DeadlineMode::equal_period
            ? period
            : std::max<TimeUnit>(
                  1, std::llround(params.deadline_factor * static_cast<double>(period)));
    chain.priority = i + 1;
    chain.trigger = TriggerKind::timer;

    const std::vector<TimeUnit> wcets = split_wcets(total, n_cb, state);
    for (int j = 0; j < n_cb; ++j) {
      Callback cb;
      cb.id = chain.id + "_" + std::to_string(j + 1);
      cb.wcet = wcets[static_cast<std::size_t>(j)];
      cb.kind = j == 0 ? CallbackKind::timer : CallbackKind::regular;
      cb.chain_id = chain.id;
      cb.index_in_chain = j + 1;
      chain.callbacks.push_back(std::move(cb));
    }
    chains.push_back(std::move(chain));
  }
  return chains;
}

SystemSpec make_single_executor_system(std::vector<Chain> chains, int threads,
                                       Scheme scheme) {
  SystemSpec system;
  system.chains = std::move(chains);

  ExecutorSpec exec;
  exec.id = "e0";
  exec.scheme = scheme;
  exec.threads.assign(static_cast<std::size_t>(threads), ThreadReservation{1, 1});
  system.executors.push_back(std::move(exec));

  for (const auto& chain : system.chains)
    for (const auto& cb : chain.callbacks) system.assignment[cb.id] = "e0";

  apply_chain_aware_priorities(system);
  return system;
}

std::vector<Chain> scale_deadlines(std::vector<Chain> chains, double factor) {
  for (auto& chain : chains)
    chain.deadline = std::max<TimeUnit>(
        1, std::llround(factor * static_cast<double>(chain.deadline)));
  return chains;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  std::uint64_t state = base;
  std::uint64_t mixed = splitmix64(state);
  state ^= a * 0xff51afd7ed558ccdULL;
  mixed ^= splitmix64(state);
  state ^= b * 0xc4ceb9fe1a85ec53ULL;
  mixed ^= splitmix64(state);
  return mixed;
}

}  // namespace chainrta
