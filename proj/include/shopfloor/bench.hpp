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

#ifndef SHOPFLOOR_BENCH_HPP_
#define SHOPFLOOR_BENCH_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "shopfloor/core.hpp"
#include "shopfloor/dispatch.hpp"
#include "shopfloor/instance_io.hpp"

namespace shopfloor {

// Gap to the upper bound in hundredths of a percent,
// 100 * (makespan - ub) / ub rounded half-even. Throws InvalidArgument when
// ub <= 0.
std::int64_t gap_hundredths(Time makespan, Time ub);

// Half-even mean of a non-empty list of hundredths.
std::int64_t mean_hundredths(const std::vector<std::int64_t>& values);

// 97 -> "0.97", -5 -> "-0.05".
std::string format_hundredths(std::int64_t value);

// A solving pipeline: a dispatch rule, optionally local search, optionally
// a disruption scenario repaired with the reactive protocol.
// Textual form: "<rule>[+improve[:budget]][+lrcp]".
struct Method {
  std::string name;
  Rule rule;
  bool improve = false;
  int improve_budget = 200;
  bool lrcp = false;
};

// Throws InvalidArgument on unknown rules or suffixes.
Method parse_method(std::string_view text, std::uint64_t seed = 1);

struct SuiteParams {
  std::uint64_t seed = 1;  // random rule and scenario generation
  int failures = 20;
  Time min_dur = 5;
  Time max_dur = 50;
  RepairConfig config;
};

struct BenchRow {
  std::string instance;
  std::string method;
  Time makespan = 0;
  std::optional<std::int64_t> gap;  // hundredths of a percent
  std::int64_t wip_moves = 0;
  std::int64_t messages = 0;
  double ms = 0.0;
  bool valid = true;
};

struct MethodSummary {
  std::string method;
  int rows = 0;
  int rows_with_gap = 0;
  std::optional<std::int64_t> mean_gap;  // over rows with a gap
};

struct SuiteResult {
  std::vector<BenchRow> rows;  // instance-major, methods in given order
  std::vector<MethodSummary> summary;
  std::vector<std::string> warnings;
};

SuiteResult run_suite(const std::vector<Instance>& instances,
                      const std::vector<Method>& methods,
                      const SuiteParams& params, const BoundsRegistry& bounds);

// instance,method,makespan,gap,wip,messages,ms
std::string to_csv(const SuiteResult& result, bool include_timing = true);

// J jobs, each visiting every machine once in a random order, durations
// uniform in [1, 99].
Instance random_instance(int jobs, int machines, std::mt19937_64& rng,
                         std::string name = {});

struct ProbeSize {
  int jobs = 0;
  int machines = 0;
};

struct ProbeTrial {
  int jobs = 0;
  int machines = 0;
  int o_max = 0;
  Breakdown breakdown;
  std::int64_t messages = 0;
  double ms = 0.0;
};

struct ProbeResult {
  std::vector<ProbeTrial> trials;
  double c_max = 0.0;  // max messages / (J * M * O_max)
  double c_ls = 0.0;   // least-squares slope through the origin
  bool within_ceiling = true;
};

// Per size, `trials` random instances with one random breakdown each on
// the SPT schedule; delta_t uniform in [1, max(1, H / 10)]. Throws
// InvalidArgument on an empty size list.
ProbeResult complexity_probe(const std::vector<ProbeSize>& sizes, int trials,
                             std::uint64_t seed,
                             const RepairConfig& config = {});

}  // namespace shopfloor

#endif  // SHOPFLOOR_BENCH_HPP_
