#include "supply.hpp"

#include <algorithm>
#include <cassert>
#include <utility>
#include <vector>

namespace chainrta {

using boost::multiprecision::cpp_int;

TimeUnit sbf_exact(const ThreadReservation& r, TimeUnit delta) {
  assert(delta >= 0);
  const TimeUnit y = std::max<TimeUnit>(0, delta - r.max_blackout());
  const TimeUnit full_periods = y / r.period;
  const TimeUnit into_period = y - full_periods * r.period;
  return full_periods * r.budget + std::min(r.budget, into_period);
}

Rational sbf_linear(const ThreadReservation& r, TimeUnit delta) {
  assert(delta >= 0);
  const TimeUnit offset = r.max_blackout();
  if (delta < offset) return Rational(0);
  return Rational(cpp_int(r.budget) * (delta - offset), cpp_int(r.period));
}

Rational sbf_executor(const ExecutorSpec& exec, TimeUnit delta) {
  Rational sum(0);
  for (const auto& r : exec.threads) sum += sbf_linear(r, delta);
  return sum;
}

TimeUnit inverse_sbf(const ThreadReservation& r, TimeUnit supply) {
  assert(supply >= 0 && r.budget >= 1);
  if (supply == 0) return 0;
  const cpp_int ceil_div = (cpp_int(supply) * r.period + r.budget - 1) / r.budget;
  return ceil_div.convert_to<TimeUnit>() + r.max_blackout();
}

namespace {

// Floor for non-negative rationals.
TimeUnit rational_floor(const Rational& q) {
  const cpp_int f = numerator(q) / denominator(q);
  return f.convert_to<TimeUnit>();
}

}  // namespace

TimeUnit supply_exceed_time(const ExecutorSpec& exec, TimeUnit demand) {
  assert(demand >= 0);
  if (exec.all_dedicated()) {
    // sbf is m * delta with no offset.
    return demand / exec.thread_count() + 1;
  }

  // Piecewise-linear walk over the blackout offsets. On each segment the
  // summed supply is slope * delta - intercept with both exact rationals.
  std::vector<std::pair<TimeUnit, const ThreadReservation*>> offsets;
  offsets.reserve(exec.threads.size());
  for (const auto& r : exec.threads) offsets.emplace_back(r.max_blackout(), &r);
  std::sort(offsets.begin(), offsets.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  Rational slope(0);
  Rational intercept(0);
  std::size_t next = 0;
  TimeUnit seg_start = 0;
  while (true) {
    while (next < offsets.size() && offsets[next].first <= seg_start) {
      const ThreadReservation* r = offsets[next].second;
      slope += Rational(r->budget, r->period);
      intercept += Rational(cpp_int(r->budget) * offsets[next].first, cpp_int(r->period));
      ++next;
    }
    const bool last_segment = next >= offsets.size();
    const TimeUnit seg_end = last_segment ? 0 : offsets[next].first;
    if (slope != 0) {
      const Rational threshold = (Rational(demand) + intercept) / slope;
      TimeUnit candidate = rational_floor(threshold) + 1;
      candidate = std::max(candidate, seg_start);
      if (last_segment || candidate < seg_end) return candidate;
    }
    assert(!last_segment && "executor supply never exceeds the demand");
    seg_start = seg_end;
  }
}

}  // namespace chainrta
