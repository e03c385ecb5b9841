#include "sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <stdexcept>

namespace chainrta {

const char* to_string(SweepSpec::Variable v) {
  switch (v) {
    case SweepSpec::Variable::utilization: return "utilization";
    case SweepSpec::Variable::thread_count: return "thread_count";
    case SweepSpec::Variable::chain_count: return "chain_count";
  }
  return "?";
}

std::optional<SweepSpec::Variable> variable_from_string(const std::string& name) {
  if (name == "utilization") return SweepSpec::Variable::utilization;
  if (name == "thread_count") return SweepSpec::Variable::thread_count;
  if (name == "chain_count") return SweepSpec::Variable::chain_count;
  return std::nullopt;
}

std::vector<double> sweep_points(const SweepSpec& spec) {
  if (spec.step <= 0.0) throw std::invalid_argument("sweep: step must be > 0");
  if (spec.to < spec.from) throw std::invalid_argument("sweep: empty range");
  std::vector<double> points;
  for (int i = 0;; ++i) {
    const double value = spec.from + static_cast<double>(i) * spec.step;
    if (value > spec.to + spec.step * 1e-9) break;
    points.push_back(value);
  }
  return points;
}

namespace {

std::vector<SweepRow> evaluate_point(const SweepSpec& spec, std::size_t point_index,
                                     double value) {
  GenParams params = spec.base;
  params.deadline_mode = GenParams::DeadlineMode::equal_period;
  int threads = spec.threads;
  switch (spec.variable) {
    case SweepSpec::Variable::utilization:
      params.total_utilization = value;
      break;
    case SweepSpec::Variable::thread_count:
      threads = static_cast<int>(std::llround(value));
      break;
    case SweepSpec::Variable::chain_count:
      params.chain_count = static_cast<int>(std::llround(value));
      break;
  }

  std::vector<SweepRow> rows;
  rows.reserve(spec.methods.size());
  for (Method method : spec.methods)
    rows.push_back({to_string(spec.variable), value, method, 0,
                    static_cast<std::int64_t>(spec.sets_per_point)});

  // A thread-count sweep analyzes the same chain sets at every point; the
  // other variables change the sets themselves.
  const std::uint64_t point_salt =
      spec.variable == SweepSpec::Variable::thread_count ? 0 : point_index;
  for (int set = 0; set < spec.sets_per_point; ++set) {
    params.seed = derive_seed(spec.seed, point_salt, static_cast<std::uint64_t>(set));
    const std::vector<Chain> cd_chains = generate_chain_set(params);

    for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
      const Method method = spec.methods[mi];
      const AnalysisConfig cfg = config_for_method(method);
      std::vector<Chain> chains = cd_chains;
      if (cfg.deadline_class == DeadlineClass::arbitrary)
        chains = scale_deadlines(std::move(chains), params.deadline_factor);
      const SystemSpec system = make_single_executor_system(
          std::move(chains), threads,
          method_is_priority_driven(method) ? Scheme::priority_driven
                                            : Scheme::standard);
      const auto verdicts = analyze_system(system, cfg);
      const bool all = std::all_of(verdicts.begin(), verdicts.end(),
                                   [](const AnalysisVerdict& v) { return v.schedulable; });
      if (all) ++rows[mi].schedulable;
    }
  }
  return rows;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.sets_per_point < 1)
    throw std::invalid_argument("sweep: sets_per_point must be >= 1");
  const std::vector<double> points = sweep_points(spec);

  std::vector<std::future<std::vector<SweepRow>>> futures;
  futures.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    futures.push_back(std::async(std::launch::async, evaluate_point, std::cref(spec), i,
                                 points[i]));

  std::vector<SweepRow> rows;
  for (auto& f : futures)
    for (auto& row : f.get()) rows.push_back(std::move(row));
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "sweep_variable,value,method,schedulable,total,ratio\n";
  char buf[64];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%g", row.value);
    os << row.variable << ',' << buf << ',' << to_string(row.method) << ','
       << row.schedulable << ',' << row.total << ',';
    std::snprintf(buf, sizeof buf, "%.4f", row.ratio());
    os << buf << '\n';
  }
  return os.str();
}

}  // namespace chainrta
