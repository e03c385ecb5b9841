#include <doctest.h>

#include <stdexcept>

#include "builders.hpp"
#include "json_io.hpp"

using namespace chainrta;
using namespace chainrta::testing;

namespace {

SystemSpec sample_system() {
  auto system = one_executor_system(
      {make_chain("A", {1, 2}, 10, 10, 2), make_chain("B", {3}, 15, 15, 1)}, 2);
  add_me_group(system, "g0", {"A_2", "B_1"});
  system.propagation["A"] = {};
  return system;
}

}  // namespace

TEST_CASE("system round-trips through its JSON form byte for byte") {
  const SystemSpec system = sample_system();
  const std::string once = system_to_json_text(system);
  const SystemSpec reparsed = system_from_json_text(once);
  CHECK(system_to_json_text(reparsed) == once);
  CHECK(validate(reparsed).empty());
  CHECK(reparsed.chains.size() == 2);
  CHECK(reparsed.chains[0].trigger == TriggerKind::timer);
  CHECK(reparsed.chains[0].callbacks[1].group_id.has_value());
  CHECK(reparsed.assignment.at("B_1") == "e0");
}

TEST_CASE("malformed JSON raises a parse error") {
  CHECK_THROWS_WITH_AS(system_from_json_text("{not json"),
                       doctest::Contains("JSON parse error"), std::invalid_argument);
}

TEST_CASE("missing fields name the offending entity") {
  CHECK_THROWS_WITH_AS(system_from_json_text(R"({"executors":[],"assignment":{}})"),
                       doctest::Contains("chains"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      system_from_json_text(
          R"({"chains":[{"id":"A","priority":1,"period":10,"deadline":10,
               "callbacks":[{"id":"a1","wcet":1}]}],
              "executors":[{"id":"e0","threads":[{"budget":1,"period":1}]}],
              "assignment":{"a1":"e0"}})"),
      doctest::Contains("kind"), std::invalid_argument);
}

TEST_CASE("time values must be integers") {
  CHECK_THROWS_WITH_AS(
      system_from_json_text(
          R"({"chains":[{"id":"A","priority":1,"period":10.5,"deadline":10,
               "callbacks":[{"id":"a1","wcet":1,"kind":"timer"}]}],
              "executors":[{"id":"e0","threads":[{"budget":1,"period":1}]}],
              "assignment":{"a1":"e0"}})"),
      doctest::Contains("period"), std::invalid_argument);
}

TEST_CASE("callback group shorthand requires a declared group") {
  CHECK_THROWS_WITH_AS(
      system_from_json_text(
          R"({"chains":[{"id":"A","priority":1,"period":10,"deadline":10,
               "callbacks":[{"id":"a1","wcet":1,"kind":"timer","group":"gX"}]}],
              "executors":[{"id":"e0","threads":[{"budget":1,"period":1}]}],
              "assignment":{"a1":"e0"}})"),
      doctest::Contains("gX"), std::invalid_argument);
}

TEST_CASE("sim config parses with defaults") {
  const SimConfig cfg = sim_config_from_json_text(R"({"horizon": 500})");
  CHECK(cfg.horizon == 500);
  CHECK(cfg.seed == 0);
  CHECK(cfg.offsets == SimConfig::Offsets::synchronous);
  CHECK(!cfg.scheme_override.has_value());

  const SimConfig full = sim_config_from_json_text(
      R"({"horizon": 10, "seed": 3, "offsets": "randomized",
          "scheme": "priority_driven", "trace": true})");
  CHECK(full.offsets == SimConfig::Offsets::randomized);
  CHECK(full.scheme_override == Scheme::priority_driven);
  CHECK(full.collect_trace);

  CHECK_THROWS_AS(sim_config_from_json_text(R"({"seed": 1})"), std::invalid_argument);
}

TEST_CASE("generator params parse with defaults and overrides") {
  const GenParams defaults = gen_params_from_json_text("{}");
  CHECK(defaults.chain_count == 5);
  CHECK(defaults.callbacks_per_chain == 10);
  CHECK(defaults.period_min == 100);
  CHECK(defaults.period_max == 1000);

  const GenParams params = gen_params_from_json_text(
      R"({"chain_count": 3, "total_utilization": 2.5,
          "deadline_mode": "scaled", "deadline_factor": 2.0, "seed": 9})");
  CHECK(params.chain_count == 3);
  CHECK(params.total_utilization == doctest::Approx(2.5));
  CHECK(params.deadline_mode == GenParams::DeadlineMode::scaled);
}

TEST_CASE("sweep spec parses methods and generator template") {
  const SweepSpec spec = sweep_spec_from_json_text(
      R"({"variable": "utilization", "from": 0.8, "to": 1.6, "step": 0.4,
          "sets_per_point": 10, "methods": ["PWA_CD", "PPWA_CD"],
          "threads": 4, "seed": 2, "generator": {"callbacks_per_chain": 4}})");
  CHECK(spec.variable == SweepSpec::Variable::utilization);
  CHECK(spec.methods.size() == 2);
  CHECK(spec.base.callbacks_per_chain == 4);
  CHECK(sweep_points(spec).size() == 3);

  CHECK_THROWS_WITH_AS(
      sweep_spec_from_json_text(R"({"variable": "bogus"})"),
      doctest::Contains("bogus"), std::invalid_argument);
}

TEST_CASE("verdict and violation reports are stable JSON") {
  AnalysisVerdict finite{"A", 12, 9, 3, true};
  AnalysisVerdict unbounded{"B", std::nullopt, 100, 7, false};
  const std::string text = verdicts_to_json_text({finite, unbounded}, "PWA_CD");
  CHECK(text.find("\"method\": \"PWA_CD\"") != std::string::npos);
  CHECK(text.find("\"all_schedulable\": false") != std::string::npos);
  CHECK(text.find("\"response_time\": 12") != std::string::npos);
  CHECK(text.find("\"bounded\": false") != std::string::npos);

  const std::string ok = violations_to_json_text({});
  CHECK(ok.find("\"valid\": true") != std::string::npos);
}
