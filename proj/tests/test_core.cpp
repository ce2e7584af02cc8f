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

#include <algorithm>

#include "shopfloor/core.hpp"
#include "shopfloor/validate.hpp"

using namespace shopfloor;

TEST_CASE("demo instance shape") {
  const Instance inst = demo_5x3();
  CHECK(inst.num_jobs() == 5);
  CHECK(inst.num_machines == 3);
  CHECK(inst.num_operations() == 15);
  CHECK(inst.max_ops_per_job() == 3);
  CHECK(inst.job_work(0) == 7);
  CHECK(inst.is_terminal(0, 2));
  CHECK_FALSE(inst.is_terminal(0, 1));
  CHECK_NOTHROW(inst.check());
}

TEST_CASE("lower bound is the larger of machine load and job work") {
  const Instance inst = demo_5x3();
  // M1 carries 2 + 4 + 4 + 3 + 2.
  CHECK(lower_bound(inst) == 15);
  Instance one;
  one.num_machines = 2;
  one.jobs = {{{0, 0, 0, 5}, {0, 1, 1, 6}}};
  CHECK(lower_bound(one) == 11);
}

TEST_CASE("static demo schedule has makespan 19 and validates") {
  const Schedule s = demo_5x3_schedule();
  CHECK(makespan(s) == 19);
  CHECK(validate_schedule(demo_5x3(), s).ok);
}

TEST_CASE("empty schedule has makespan 0") {
  CHECK(makespan(Schedule{}) == 0);
}

TEST_CASE("instance check rejects bad data") {
  Instance bad = demo_5x3();
  bad.jobs[1][0].machine = 7;
  CHECK_THROWS_AS(bad.check(), InvalidArgument);
  bad = demo_5x3();
  bad.jobs[2][1].duration = -1;
  CHECK_THROWS_AS(bad.check(), InvalidArgument);
  bad = demo_5x3();
  bad.jobs[0][1].step = 0;
  CHECK_THROWS_AS(bad.check(), InvalidArgument);
}

TEST_CASE("schedule_from_starts checks sizes") {
  CHECK_THROWS_AS(schedule_from_starts(demo_5x3(), {0, 1}), InvalidArgument);
}

TEST_CASE("sort_canonical orders by job then step") {
  Schedule s = demo_5x3_schedule();
  std::reverse(s.ops.begin(), s.ops.end());
  s.sort_canonical();
  for (std::size_t i = 1; i < s.ops.size(); ++i) {
    const auto& a = s.ops[i - 1];
    const auto& b = s.ops[i];
    CHECK((a.job < b.job || (a.job == b.job && a.step < b.step)));
  }
  REQUIRE(s.find(2, 1) != nullptr);
  CHECK(s.find(2, 1)->start == 14);
  CHECK(s.find(9, 0) == nullptr);
}

TEST_CASE("tracker builds machine queues in start order") {
  const ExecutionTracker t = tracker_from_schedule(demo_5x3(), demo_5x3_schedule());
  CHECK(t.size() == 15);
  CHECK(t.num_jobs() == 5);
  CHECK(t.num_machines() == 3);
  // M1: J5(1) J2(3) J4(3) J3(1) J1(2)
  const auto& q = t.queue(1);
  REQUIRE(q.size() == 5);
  const int jobs[] = {4, 1, 3, 2, 0};
  for (int k = 0; k < 5; ++k) CHECK(t.entry(q[k]).op.job == jobs[k]);
  CHECK(t.queue_position(q[3]) == 3);
  CHECK(t.makespan() == 19);
  const std::size_t first = t.index(0, 0);
  CHECK_FALSE(t.job_predecessor(first).has_value());
  CHECK(*t.job_successor(first) == t.index(0, 1));
  CHECK_FALSE(t.job_successor(t.index(0, 2)).has_value());
  CHECK(t.to_schedule().ops.size() == 15);
}

TEST_CASE("tracker rejects incomplete or duplicated schedules") {
  Schedule s = demo_5x3_schedule();
  s.ops.pop_back();
  CHECK_THROWS_AS(tracker_from_schedule(demo_5x3(), s), InvalidArgument);
  s = demo_5x3_schedule();
  s.ops.push_back(s.ops.front());
  CHECK_THROWS_AS(tracker_from_schedule(demo_5x3(), s), InvalidArgument);
  s = demo_5x3_schedule();
  s.ops[0].machine = 2;
  CHECK_THROWS_AS(tracker_from_schedule(demo_5x3(), s), InvalidArgument);
}

TEST_CASE("windows merge when overlapping or touching") {
  ExecutionTracker t = tracker_from_schedule(demo_5x3(), demo_5x3_schedule());
  t.add_window({1, 5, 8});
  const Window w = t.add_window({1, 8, 10});
  CHECK(w == Window{1, 5, 10});
  t.add_window({1, 20, 22});
  t.add_window({0, 6, 7});
  CHECK(t.windows().size() == 3);
  CHECK_THROWS_AS(t.add_window({5, 0, 1}), InvalidArgument);
}

TEST_CASE("earliest_clear skips windows and honours the lead time") {
  ExecutionTracker t = tracker_from_schedule(demo_5x3(), demo_5x3_schedule());
  t.add_window({1, 5, 8});
  CHECK(t.earliest_clear(1, 0, 5) == 0);
  CHECK(t.earliest_clear(1, 0, 6) == 8);
  CHECK(t.earliest_clear(1, 3, 2) == 3);
  CHECK(t.earliest_clear(1, 4, 2) == 8);
  CHECK(t.earliest_clear(1, 8, 2) == 8);
  CHECK(t.earliest_clear(1, 8, 2, 1) == 9);
  CHECK(t.earliest_clear(0, 4, 3) == 4);
}
