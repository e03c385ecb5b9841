#include <doctest.h>

#include "builders.hpp"
#include "model.hpp"

using namespace chainrta;
using namespace chainrta::testing;

TEST_CASE("well-formed single-chain system validates cleanly") {
  auto system = one_executor_system({make_chain("c1", {2, 3}, 10, 10, 1)}, 1);
  CHECK(validate(system).empty());
  // validate is pure: a second call sees the same system and result.
  CHECK(validate(system).empty());
}

TEST_CASE("zero-wcet callback is reported by name") {
  auto system = one_executor_system({make_chain("c1", {2, 0}, 10, 10, 1)}, 1);
  const auto violations = validate(system);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("c1_2") != std::string::npos);
  CHECK(violations[0].find("wcet") != std::string::npos);
}

TEST_CASE("group spanning two executors is reported by name") {
  SystemSpec system;
  system.chains = {make_chain("c1", {1, 1}, 10, 10, 1)};
  system.executors.push_back(dedicated_executor("e0", 1));
  system.executors.push_back(dedicated_executor("e1", 1));
  system.assignment["c1_1"] = "e0";
  system.assignment["c1_2"] = "e1";
  add_me_group(system, "g0", {"c1_1", "c1_2"});
  const auto violations = validate(system);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("g0") != std::string::npos);
}

TEST_CASE("duplicate chain priorities are rejected") {
  auto system = one_executor_system(
      {make_chain("a", {1}, 10, 10, 3), make_chain("b", {1}, 20, 20, 3)}, 1);
  const auto violations = validate(system);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("priority") != std::string::npos);
}

TEST_CASE("timer kind is only allowed at the head") {
  Chain chain = make_chain("c1", {1, 1}, 10, 10, 1);
  chain.callbacks[1].kind = CallbackKind::timer;
  auto system = one_executor_system({chain}, 1);
  const auto violations = validate(system);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("c1_2") != std::string::npos);
}

TEST_CASE("unassigned callbacks and unknown executors are reported") {
  auto system = one_executor_system({make_chain("c1", {1, 1}, 10, 10, 1)}, 1);
  system.assignment.erase("c1_2");
  CHECK(validate(system).size() == 1);
  system.assignment["c1_2"] = "nope";
  CHECK(validate(system).size() == 1);
}

TEST_CASE("reservation budget must not exceed its period") {
  auto system = one_executor_system({make_chain("c1", {1}, 10, 10, 1)}, 1);
  system.executors[0].threads[0] = {7, 5};
  CHECK(validate(system).size() == 1);
}

TEST_CASE("chain total wcet is derived from the callbacks") {
  const Chain chain = make_chain("c1", {2, 3, 1}, 10, 10, 1);
  TimeUnit sum = 0;
  for (const auto& cb : chain.callbacks) sum += cb.wcet;
  CHECK(chain.total_wcet() == sum);
  CHECK(chain.last_wcet() == 1);
  CHECK(chain.largest_wcet() == 3);
  CHECK(chain.constrained_deadline());
}
