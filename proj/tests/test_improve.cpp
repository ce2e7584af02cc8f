// Copyright 2026 The Shopfloor Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <chrono>
#include <random>

#include "oracles.hpp"
#include "shopfloor/dispatch.hpp"
#include "shopfloor/improve.hpp"
#include "shopfloor/validate.hpp"

using namespace shopfloor;

TEST_CASE("brute-force oracle on the demo instance") {
  // Exhaustive over 5!^3 machine orders.
  const Time opt = oracle::brute_force_optimum(demo_5x3());
  CHECK(opt == 15);
  CHECK(opt == lower_bound(demo_5x3()));
  CHECK(makespan(demo_5x3_schedule()) > opt);
}

TEST_CASE("improve from SPT reaches the demo optimum") {
  const Instance inst = demo_5x3();
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = improve(inst, schedule_with_rule(inst, {RuleKind::SPT, 0}), 200);
  const auto ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  CHECK(makespan(r.schedule) == 15);
  CHECK(validate_schedule(inst, r.schedule).ok);
  CHECK(ms < 1000.0);
}

TEST_CASE("improve from the static demo schedule does not get worse") {
  const Instance inst = demo_5x3();
  const auto r = improve(inst, demo_5x3_schedule(), 200);
  CHECK(makespan(r.schedule) <= 19);
  CHECK(makespan(r.schedule) >= 15);
  CHECK(r.trace.front().iteration == 0);
  CHECK(r.trace.front().makespan == 19);
}

TEST_CASE("trace is strictly decreasing and consistent") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = oracle::small_instance(rng, 6, 4, 20);
    const Schedule start = schedule_with_rule(inst, {RuleKind::Random, rng()});
    const auto r = improve(inst, start, 100, trial);
    REQUIRE_FALSE(r.trace.empty());
    CHECK(r.trace.front().makespan == makespan(start));
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      CHECK(r.trace[i].makespan < r.trace[i - 1].makespan);
      CHECK(r.trace[i].iteration > r.trace[i - 1].iteration);
      CHECK(r.trace[i].valid);
    }
    CHECK(r.trace.back().makespan == makespan(r.schedule));
    CHECK(r.trace.size() <= 101);
    CHECK(validate_schedule(inst, r.schedule).ok);
    CHECK(makespan(r.schedule) >= lower_bound(inst));
  }
}

TEST_CASE("improve never beats the exhaustive optimum") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = oracle::small_instance(rng, 3, 3, 6);
    const Time opt = oracle::brute_force_optimum(inst);
    const auto r = improve(inst, schedule_with_rule(inst, {RuleKind::LPT, 0}), 200);
    CHECK(makespan(r.schedule) >= opt);
  }
}

TEST_CASE("budget zero returns the input") {
  const Instance inst = demo_5x3();
  const auto r = improve(inst, demo_5x3_schedule(), 0);
  CHECK(r.trace.size() == 1);
  CHECK(r.schedule == demo_5x3_schedule());
}

TEST_CASE("same seed gives the same result") {
  std::mt19937_64 rng(8);
  const Instance inst = oracle::small_instance(rng, 8, 5, 30);
  const Schedule start = schedule_with_rule(inst, {RuleKind::LPT, 0});
  const auto a = improve(inst, start, 50, 3);
  const auto b = improve(inst, start, 50, 3);
  CHECK(a.schedule == b.schedule);
  CHECK(a.trace.size() == b.trace.size());
}

TEST_CASE("invalid initial schedule is rejected") {
  Schedule s = demo_5x3_schedule();
  s.ops.pop_back();
  CHECK_THROWS_AS(improve(demo_5x3(), s, 10), InvalidArgument);
}

TEST_CASE("semi-active timing of machine orders") {
  const Instance inst = demo_5x3();
  const auto seq = sequences_from_schedule(inst, demo_5x3_schedule());
  const auto s = semi_active(inst, seq);
  REQUIRE(s.has_value());
  CHECK(validate_schedule(inst, *s).ok);
  CHECK(makespan(*s) <= 19);
  // Cycle across jobs 2 and 3.
  MachineSequences cyc = seq;
  // flat ids: job j step s -> 3j + s
  cyc[0] = {8, 3, 0, 10, 13};  // J3(3) J2(1) J1(1) J4(2) J5(2)
  cyc[2] = {9, 4, 7, 14, 2};   // J4(1) J2(2) J3(2) J5(3) J1(3)
  CHECK_FALSE(semi_active(inst, cyc).has_value());
}
