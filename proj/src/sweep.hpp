#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gen.hpp"
#include "rta.hpp"

namespace chainrta {

// Schedulability-ratio experiment over one swept variable. Each point draws
// `sets_per_point` random chain sets; a set counts as schedulable under a
// method iff every chain is. Constrained-deadline methods analyze the set as
// generated (D = T); arbitrary-deadline methods analyze the same set with
// deadlines scaled by the generator's deadline factor.
struct SweepSpec {
  enum class Variable { utilization, thread_count, chain_count };
  Variable variable = Variable::utilization;
  double from = 0.8;
  double to = 4.0;
  double step = 0.4;
  int sets_per_point = 1000;
  std::vector<Method> methods = {Method::PWA_CD, Method::PPWA_CD, Method::PWA_AD,
                                 Method::PPWA_AD};
  GenParams base;
  int threads = 4;
  std::uint64_t seed = 1;
};

struct SweepRow {
  std::string variable;
  double value = 0.0;
  Method method = Method::PWA_CD;
  std::int64_t schedulable = 0;
  std::int64_t total = 0;

  double ratio() const {
    return total == 0 ? 0.0 : static_cast<double>(schedulable) / static_cast<double>(total);
  }
};

const char* to_string(SweepSpec::Variable v);
std::optional<SweepSpec::Variable> variable_from_string(const std::string& name);

std::vector<double> sweep_points(const SweepSpec& spec);

// Points are evaluated concurrently; rows come back in point order, methods
// in the listed order. Deterministic for a fixed spec.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace chainrta
