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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "shopfloor/dispatch.hpp"
#include "shopfloor/instance_io.hpp"
#include "shopfloor/simulate.hpp"
#include "shopfloor/validate.hpp"

using namespace shopfloor;

namespace {

const std::filesystem::path kData = SHOPFLOOR_TEST_DATA_DIR;

Instance long_tail_demo() {
  Instance inst = demo_5x3();
  inst.jobs[2][2].duration = 4;
  return inst;
}

Schedule long_tail_schedule() {
  Schedule s = demo_5x3_schedule();
  for (auto& op : s.ops) {
    if (op.job == 2 && op.step == 2) op.end = op.start + 4;
  }
  return s;
}

std::string replace_line(const std::string& text, int line, const std::string& with) {
  std::istringstream in(text);
  std::string out;
  std::string l;
  for (int i = 1; std::getline(in, l); ++i) {
    if (i == line) {
      if (!with.empty()) out += with + "\n";
    } else {
      out += l + "\n";
    }
  }
  return out;
}

}  // namespace

TEST_CASE("scenario generation") {
  const auto one = generate_scenario(demo_5x3(), 7, 1, 3, 3);
  REQUIRE(one.events.size() == 1);
  CHECK(one.events[0].delta_t == 3);
  CHECK(one.seed == 7);
  CHECK(generate_scenario(demo_5x3(), 7, 0, 3, 3).events.empty());
  const Instance ta = load_instance("ta11", kData);
  const auto a = generate_scenario(ta, 1, 20, 5, 50);
  const auto b = generate_scenario(ta, 1, 20, 5, 50);
  CHECK(a == b);
  CHECK_FALSE(a == generate_scenario(ta, 2, 20, 5, 50));
  const Time h = makespan(schedule_with_rule(ta, {RuleKind::SPT, 0}));
  REQUIRE(a.events.size() == 20);
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    const auto& e = a.events[i];
    CHECK(e.machine >= 0);
    CHECK(e.machine < ta.num_machines);
    CHECK(e.t_d >= 0);
    CHECK(e.t_d < h);
    CHECK(e.delta_t >= 5);
    CHECK(e.delta_t <= 50);
    if (i) CHECK(a.events[i - 1].t_d <= e.t_d);
  }
  CHECK_THROWS_AS(generate_scenario(ta, 1, 2, 5, 4), InvalidArgument);
  CHECK_THROWS_AS(generate_scenario(ta, 1, 2, 0, 4), InvalidArgument);
  CHECK_THROWS_AS(generate_scenario(ta, 1, -1, 1, 4), InvalidArgument);
}

TEST_CASE("empty scenario keeps the base schedule") {
  EventLog log;
  const auto r = run_scenario(demo_5x3(), demo_5x3_schedule(), {}, {}, &log);
  CHECK(r.metrics.makespan == 19);
  CHECK(r.metrics.messages == 0);
  CHECK(r.schedule == demo_5x3_schedule());
  CHECK(log.entries().size() == 15);
  CHECK(replay(log.entries()) == demo_5x3_schedule());
}

TEST_CASE("single breakdown scenario on the demo instances") {
  DisruptionScenario sc;
  sc.events = {{1, 5, 3}};
  const auto r = run_scenario(demo_5x3(), demo_5x3_schedule(), sc, {});
  CHECK(r.metrics.makespan == 21);
  const auto v = run_scenario(long_tail_demo(), long_tail_schedule(), sc, {});
  CHECK(v.metrics.makespan == 22);
  CHECK(v.metrics.wip_moves == 1);
  REQUIRE(v.per_event.size() == 1);
  CHECK(v.per_event[0].phase_trace.size() == 5);
}

TEST_CASE("replay of the long-tail run rebuilds its final schedule") {
  DisruptionScenario sc;
  sc.events = {{1, 5, 3}};
  EventLog log;
  const auto r = run_scenario(long_tail_demo(), long_tail_schedule(), sc, {}, &log);
  const Schedule back = replay(log.entries());
  CHECK(back == r.schedule);
  const ScheduledOp* j43 = back.find(3, 2);
  REQUIRE(j43 != nullptr);
  CHECK(j43->start == 19);
  CHECK(j43->end == 22);
  // Round trip through text.
  CHECK(replay(parse_event_log(log.to_jsonl())) == r.schedule);
}

TEST_CASE("log entries are sequential and well formed") {
  DisruptionScenario sc;
  sc.events = {{1, 5, 3}, {0, 9, 2}};
  EventLog log;
  run_scenario(demo_5x3(), demo_5x3_schedule(), sc, {}, &log);
  const auto& e = log.entries();
  REQUIRE_FALSE(e.empty());
  for (std::size_t i = 0; i < e.size(); ++i) CHECK(e[i].seq == static_cast<std::int64_t>(i) + 1);
  CHECK(e.front().kind == EventKind::Scheduled);
  CHECK(e.back().kind == EventKind::RepairDone);
  int starts = 0;
  int done = 0;
  for (const auto& x : e) {
    starts += x.kind == EventKind::BreakdownStart;
    done += x.kind == EventKind::RepairDone;
  }
  CHECK(starts == 2);
  CHECK(done == 2);
  const std::string line = to_json_line(e.front());
  CHECK(line.rfind("{\"seq\":1,\"t\":0,\"kind\":\"Scheduled\",\"payload\":{", 0) == 0);
  for (int k = 0; k < 7; ++k) {
    const auto kind = static_cast<EventKind>(k);
    CHECK(parse_event_kind(to_string(kind)) == kind);
  }
  CHECK_FALSE(parse_event_kind("Bogus").has_value());
}

TEST_CASE("corrupt logs report the last valid seq") {
  DisruptionScenario sc;
  sc.events = {{1, 5, 3}};
  EventLog log;
  run_scenario(demo_5x3(), demo_5x3_schedule(), sc, {}, &log);
  const std::string text = log.to_jsonl();

  SUBCASE("seq gap") {
    try {
      parse_event_log(replace_line(text, 17, ""));
      FAIL("expected LogError");
    } catch (const LogError& e) {
      CHECK(e.last_valid_seq() == 16);
    }
  }
  SUBCASE("garbage line") {
    try {
      parse_event_log(replace_line(text, 3, "{not json"));
      FAIL("expected LogError");
    } catch (const LogError& e) {
      CHECK(e.last_valid_seq() == 2);
    }
  }
  SUBCASE("truncated tail") {
    const std::string cut = text.substr(0, text.size() - 10);
    CHECK_THROWS_AS(parse_event_log(cut), LogError);
  }
  SUBCASE("unknown kind") {
    std::string bad = text;
    const auto pos = bad.find("\"Scheduled\"");
    bad.replace(pos, 11, "\"Schedulez\"");
    CHECK_THROWS_AS(parse_event_log(bad), LogError);
  }
  SUBCASE("replay checks seq order too") {
    auto entries = parse_event_log(text);
    entries.erase(entries.begin() + 4);
    CHECK_THROWS_AS(replay(entries), LogError);
  }
  SUBCASE("retiming an unknown op") {
    auto entries = parse_event_log(text);
    std::vector<EventLogEntry> tail(entries.begin() + 15, entries.end());
    for (std::size_t i = 0; i < tail.size(); ++i) tail[i].seq = static_cast<std::int64_t>(i) + 1;
    CHECK_THROWS_AS(replay(tail), LogError);
  }
}

TEST_CASE("empty log replays to the base") {
  CHECK(replay({}, demo_5x3_schedule()) == demo_5x3_schedule());
  CHECK(parse_event_log("").empty());
  CHECK(parse_event_log("\n\n").empty());
}

TEST_CASE("file sink matches the in-memory log") {
  const auto path = std::filesystem::temp_directory_path() / "shopfloor_sim_test.jsonl";
  std::string in_memory;
  {
    EventLog log(path);
    DisruptionScenario sc;
    sc.events = {{1, 5, 3}};
    run_scenario(demo_5x3(), demo_5x3_schedule(), sc, {}, &log);
    in_memory = log.to_jsonl();
  }
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == in_memory);
  std::filesystem::remove(path);
  CHECK_THROWS(EventLog(std::filesystem::path("/nonexistent/dir/log.jsonl")));
}

TEST_CASE("twenty failures on a 20x15 instance") {
  const Instance ta = load_instance("ta11", kData);
  const Schedule base = schedule_with_rule(ta, {RuleKind::SPT, 0});
  const auto sc = generate_scenario(ta, 1, 20, 5, 50);
  EventLog log;
  const auto r = run_scenario(ta, base, sc, {}, &log);
  CHECK(validate_schedule(ta, r.schedule, r.windows).ok);
  for (const auto& b : sc.events) {
    CHECK(validate_schedule(ta, r.schedule, std::vector<Breakdown>{b}).ok);
  }
  CHECK(replay(log.entries()) == r.schedule);
  CHECK(r.per_event.size() == 20);
  CHECK(r.metrics.makespan >= lower_bound(ta));

  RepairConfig delay_only;
  delay_only.swap_budget = 0;
  const auto d = run_scenario(ta, base, sc, delay_only);
  CHECK(d.metrics.makespan >= makespan(base));
}

TEST_CASE("run_scenario rejects an invalid base") {
  Schedule s = demo_5x3_schedule();
  s.ops.pop_back();
  CHECK_THROWS_AS(run_scenario(demo_5x3(), s, {}, {}), InvalidArgument);
}
