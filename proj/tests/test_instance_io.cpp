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
#include <string>

#include "oracles.hpp"
#include "shopfloor/instance_io.hpp"

using namespace shopfloor;

namespace {

const std::filesystem::path kData = SHOPFLOOR_TEST_DATA_DIR;

}  // namespace

TEST_CASE("standard layout round trip") {
  const Instance demo = demo_5x3();
  const std::string text = write_standard(demo);
  CHECK(text.rfind("5 3\n0 3 1 2 2 2\n", 0) == 0);
  const Instance back = parse_standard(text, "demo_5x3");
  CHECK(same_content(demo, back));
  CHECK(back.name == "demo_5x3");
}

TEST_CASE("standard layout tolerates comments and loose whitespace") {
  const Instance inst = parse_standard(
      "# two jobs\n\n2   2\n0 5\t1 3\n  # inner comment\n1 2 0 4\n", "tiny");
  CHECK(inst.num_jobs() == 2);
  CHECK(inst.num_machines == 2);
  CHECK(inst.op(1, 1).machine == 0);
  CHECK(inst.op(1, 1).duration == 4);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_standard("2 2\n0 5 1 x\n1 2 0 4\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 7);
  }
  CHECK_THROWS_AS(parse_standard("2 2\n0 5 1 3\n"), ParseError);
  CHECK_THROWS_AS(parse_standard("1 2\n0 5 2 3\n"), ParseError);
  CHECK_THROWS_AS(parse_standard("1 2\n0 5 1 3 9\n"), ParseError);
  CHECK_THROWS_AS(parse_standard("1 2\n0 -5 1 3\n"), ParseError);
  CHECK_THROWS_AS(parse_standard(""), ParseError);
}

TEST_CASE("bundled ta01 matches the Taillard generator") {
  const Instance ta01 = load_instance("ta01", kData);
  const auto gen = oracle::taillard_generate(15, 15, 840612802, 398197754);
  REQUIRE(ta01.num_jobs() == 15);
  REQUIRE(ta01.num_machines == 15);
  for (int j = 0; j < 15; ++j) {
    for (int s = 0; s < 15; ++s) {
      CHECK(ta01.op(j, s).duration == gen.times[j][s]);
      CHECK(ta01.op(j, s).machine == gen.machines[j][s]);
    }
  }
}

TEST_CASE("Taillard layout parses to the same instance as the standard file") {
  const Instance a = load_instance("ta01", kData);
  const Instance b = parse_instance(
      read_file(kData / "taillard" / "tai15_15_01.txt"), "tai15_15_01");
  CHECK(same_content(a, b));
}

TEST_CASE("Taillard layout without captions and with several instances") {
  const std::string one =
      "2 2\n"
      "5 3\n"
      "2 4\n"
      "1 2\n"
      "2 1\n";
  const Instance inst = parse_taillard(one, "x");
  CHECK(inst.op(0, 0).machine == 0);
  CHECK(inst.op(1, 0).machine == 1);
  CHECK(inst.op(1, 1).duration == 4);
  const std::string two =
      "Nb of jobs, Nb of Machines\n 1 2\nTimes\n 5 3\nMachines\n 1 2\n"
      "Nb of jobs, Nb of Machines\n 1 2\nTimes\n 7 8\nMachines\n 2 1\n";
  const auto all = parse_taillard_all(two, "set");
  REQUIRE(all.size() == 2);
  CHECK(all[1].op(0, 0).duration == 7);
  CHECK(all[1].op(0, 0).machine == 1);
  CHECK(all[0].name != all[1].name);
  CHECK_THROWS_AS(parse_taillard("1 2\nTimes\n5 3\nMachines\n0 1\n"), ParseError);
}

TEST_CASE("bounds registry") {
  const BoundsRegistry r = load_bounds("# ub\nTA01 1231\nta02 1244\nta01 1230\n");
  CHECK(r.find("ta01") == Time{1230});
  CHECK(r.find("TA02") == Time{1244});
  CHECK_FALSE(r.find("ta03").has_value());
  CHECK(r.warnings.size() == 1);
  CHECK_THROWS_AS(load_bounds("ta01\n"), ParseError);
  const BoundsRegistry bundled = load_bounds(read_file(kData / "bounds.txt"));
  CHECK(bundled.find("ta01") == Time{1231});
}

TEST_CASE("aliases are case-insensitive") {
  const auto a = load_aliases("# c\nFoo ta01\n");
  CHECK(a.at("foo") == "ta01");
}

TEST_CASE("load_instance resolves demo, names and paths") {
  CHECK(same_content(load_instance("demo:5x3", kData), demo_5x3()));
  CHECK(load_instance("TA02", kData).num_jobs() == 15);
  CHECK(load_instance((kData / "instances" / "ta11.txt").string(), kData)
            .num_jobs() == 20);
  CHECK_THROWS_AS(load_instance("missing.txt", kData), NotFoundError);
  CHECK_THROWS_AS(read_file(kData / "nope.txt"), std::runtime_error);
}
