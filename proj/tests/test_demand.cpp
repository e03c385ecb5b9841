#include <doctest.h>

#include <cstdint>
#include <stdexcept>

#include "builders.hpp"
#include "demand.hpp"
#include "oracles.hpp"

using namespace chainrta;
using namespace chainrta::testing;

TEST_CASE("task workload at the reference points") {
  CHECK(workload_task(3, 10, {25, 0}) == 9);
  CHECK(workload_task(3, 10, {25, 7}) == 11);  // floor(32/10)*3 + min(3,2)
  CHECK(workload_task(3, 10, {0, 0}) == 0);
}

TEST_CASE("constrained-deadline chain workload uses the window for carry-out") {
  const Chain chain = make_chain("x", {2, 2}, 10, 10, 1);  // E=4, T=10
  CHECK(workload_chain_cd(chain, {12, 5}) == 6);  // floor(17/10)*4 + min(4, 12-10)
  CHECK(workload_chain_cd(chain, {10, 0}) == 4);  // 1*4 + min(4, 0)
  CHECK(workload_chain_cd(chain, {3, 8}) == 4);   // negative remainder clamps to 0
}

TEST_CASE("constrained-deadline workload rejects arbitrary deadlines") {
  const Chain chain = make_chain("x", {2, 2}, 10, 20, 1);
  CHECK_THROWS_AS(workload_chain_cd(chain, {5, 0}), std::invalid_argument);
}

TEST_CASE("arbitrary-deadline chain workload charges whole instances") {
  const Chain chain = make_chain("x", {2, 2}, 10, 20, 1);
  CHECK(workload_chain_ad(chain, {12, 5}) == 8);  // ceil(17/10)*4
  CHECK(workload_chain_ad(chain, {0, 0}) == 0);
  CHECK(workload_chain_ad(chain, {1, 0}) == 4);
}

TEST_CASE("precedence blocking charges all threads for the predecessors") {
  CHECK(precedence_blocking(make_chain("x", {2, 3, 1}, 50, 50, 1), 4) == 20);
  CHECK(precedence_blocking(make_chain("x", {7}, 50, 50, 1), 4) == 0);
  CHECK(precedence_blocking(make_chain("x", {2, 3}, 50, 50, 1), 1) == 2);
}

namespace {

SystemSpec mlp_fixture() {
  // Target has the highest priority; the three lower chains have largest
  // callbacks of 5, 4 and 2 units.
  return one_executor_system({make_chain("t", {1, 1}, 100, 100, 10),
                              make_chain("l1", {5, 1}, 100, 100, 3),
                              make_chain("l2", {4}, 100, 100, 2),
                              make_chain("l3", {1, 2}, 100, 100, 1)},
                             2);
}

}  // namespace

TEST_CASE("lower-priority blocking picks the largest callback per chain") {
  const SystemSpec system = mlp_fixture();
  const Chain& target = system.chains[0];
  CHECK(mlp_blocking(target, system, 2, 100) == 7);  // (5-1) + (4-1)
  CHECK(mlp_blocking(target, system, 1, 100) == 4);  // (5-1)
  CHECK(mlp_blocking(system.chains[3], system, 2, 100) == 0);  // lowest priority
}

TEST_CASE("arbitrary-deadline blocking counts instances per lower chain") {
  auto system = one_executor_system(
      {make_chain("t", {1}, 100, 100, 10), make_chain("l", {4}, 10, 20, 1)}, 3);
  const Chain& target = system.chains[0];
  // ceil((15+20-4)/10) = 4 instances, capped at m = 3, each min(4-1, 15).
  CHECK(mlp_star_blocking(target, system, 3, 15) == 9);

  auto no_lowers = one_executor_system({make_chain("t", {1}, 100, 100, 1)}, 3);
  CHECK(mlp_star_blocking(no_lowers.chains[0], no_lowers, 3, 50) == 0);

  auto unit_lowers = one_executor_system(
      {make_chain("t", {1}, 100, 100, 10), make_chain("l", {1, 1}, 10, 10, 1)}, 1);
  CHECK(mlp_star_blocking(unit_lowers.chains[0], unit_lowers, 1, 50) == 0);
}

TEST_CASE("group-mate load at the reference points") {
  // Mate from another chain: T=10, D=10, E=4, mate callback 2 units.
  auto system = one_executor_system(
      {make_chain("a", {1, 1}, 20, 20, 2), make_chain("b", {2, 2}, 10, 10, 1)}, 2);
  add_me_group(system, "g", {"a_1", "b_1"});
  const Callback& a1 = system.chains[0].callbacks[0];
  CHECK(groupmates_load(a1, system, 12, true) == 4);  // ceil(18/10)*2

  // Reentrant group contributes nothing.
  SystemSpec reentrant = one_executor_system(
      {make_chain("a", {1, 1}, 20, 20, 2), make_chain("b", {2, 2}, 10, 10, 1)}, 2);
  CallbackGroup g{"g", GroupKind::reentrant, {"a_1", "b_1"}};
  reentrant.groups.push_back(g);
  reentrant.chains[0].callbacks[0].group_id = "g";
  reentrant.chains[1].callbacks[0].group_id = "g";
  CHECK(groupmates_load(reentrant.chains[0].callbacks[0], reentrant, 12, true) == 0);

  // Only own-chain mates under constrained deadlines: excluded.
  auto own = one_executor_system({make_chain("a", {1, 1}, 20, 20, 2)}, 2);
  add_me_group(own, "g", {"a_1", "a_2"});
  CHECK(groupmates_load(own.chains[0].callbacks[0], own, 12, true) == 0);
  CHECK(groupmates_load(own.chains[0].callbacks[0], own, 12, false) > 0);
}

TEST_CASE("higher-priority group-mate load filters on callback priority") {
  auto system = one_executor_system(
      {make_chain("a", {1, 1}, 20, 20, 2), make_chain("b", {2, 2}, 10, 10, 1)}, 2);
  add_me_group(system, "g", {"a_1", "b_1"});
  Callback& a1 = system.chains[0].callbacks[0];
  Callback& b1 = system.chains[1].callbacks[0];

  a1.priority = 1;
  b1.priority = 5;  // mate outranks a1
  CHECK(hp_groupmates_load(a1, system, 12, true) == 4);

  a1.priority = 5;
  b1.priority = 1;  // a1 is the highest-priority member
  CHECK(hp_groupmates_load(a1, system, 12, true) == 0);
}

TEST_CASE("workload functions are monotone in the window and the extension") {
  for (TimeUnit wcet : {1, 3, 5}) {
    for (TimeUnit period : {2, 7, 12}) {
      TimeUnit prev_task = 0;
      TimeUnit prev_ad = 0;
      for (TimeUnit delta = 0; delta <= 40; ++delta) {
        const TimeUnit task = workload_task(wcet, period, {delta, 6});
        const TimeUnit ad = workload_chain_ad_units(wcet, period, {delta, 6});
        CHECK(task >= prev_task);
        CHECK(ad >= prev_ad);
        prev_task = task;
        prev_ad = ad;
      }
      for (TimeUnit alpha = 0; alpha + 1 <= 20; ++alpha) {
        CHECK(workload_task(wcet, period, {15, alpha}) <=
              workload_task(wcet, period, {15, alpha + 1}));
        CHECK(workload_chain_ad_units(wcet, period, {15, alpha}) <=
              workload_chain_ad_units(wcet, period, {15, alpha + 1}));
      }
    }
  }
}

TEST_CASE("ceiling-based workload dominates the constrained variant") {
  for (TimeUnit wcet : {1, 2, 4, 6}) {
    for (TimeUnit period : {3, 5, 9, 14}) {
      for (TimeUnit delta = 0; delta <= 30; ++delta) {
        for (TimeUnit alpha : {0, 1, 5, 11}) {
          const WorkloadQuery q{delta, alpha};
          CHECK(workload_chain_ad_units(wcet, period, q) >=
                workload_chain_cd_units(wcet, period, q));
        }
      }
    }
  }
}

TEST_CASE("both workload bounds dominate the brute-force enumerator (sample)") {
  for (TimeUnit wcet = 1; wcet <= 4; ++wcet) {
    for (TimeUnit period : {3, 7, 13}) {
      for (TimeUnit delta : {0, 1, 5, 12, 25}) {
        for (TimeUnit alpha : {0, 2, 9}) {
          if (wcet <= period)
            CHECK(workload_task(wcet, period, {delta, alpha}) >=
                  brute_force_workload_cd(wcet, period, delta, alpha));
          CHECK(workload_chain_ad_units(wcet, period, {delta, alpha}) >=
                brute_force_workload_ad(wcet, period, delta, alpha));
        }
      }
    }
  }
}

TEST_CASE("per-chain blocking never exceeds its interference contribution") {
  for (TimeUnit largest : {1, 2, 5}) {
    for (TimeUnit extra : {0, 3}) {  // chain E = largest + extra
      const TimeUnit exec_time = largest + extra;
      for (TimeUnit period : {8, 15}) {
        for (TimeUnit deadline : {period, period - 2}) {
          if (deadline < exec_time) continue;
          for (TimeUnit delta = 1; delta <= 30; ++delta) {
            const TimeUnit blocking = std::min(largest - 1, delta);
            const WorkloadQuery q{delta, deadline - exec_time};
            CHECK(blocking <= workload_chain_cd_units(exec_time, period, q));
          }
        }
      }
    }
  }
}

TEST_CASE("mlp is bounded by mlp-star") {
  const SystemSpec system = mlp_fixture();
  const Chain& target = system.chains[0];
  for (int m : {1, 2, 4}) {
    for (TimeUnit delta : {0, 1, 7, 40, 200}) {
      CHECK(mlp_blocking(target, system, m, delta) <=
            mlp_star_blocking(target, system, m, delta));
    }
  }
}
