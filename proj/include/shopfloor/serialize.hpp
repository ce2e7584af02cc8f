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

// JSON forms of the library's values. Steps are 1-based on the wire.

#ifndef SHOPFLOOR_SERIALIZE_HPP_
#define SHOPFLOOR_SERIALIZE_HPP_

#include <string_view>
#include <vector>

#include <json.hpp>

#include "shopfloor/bench.hpp"
#include "shopfloor/core.hpp"
#include "shopfloor/improve.hpp"
#include "shopfloor/lrcp.hpp"
#include "shopfloor/simulate.hpp"
#include "shopfloor/validate.hpp"

namespace shopfloor {

using Json = nlohmann::ordered_json;

// [{job, step, machine, start, end[, carried]}...] in canonical order.
Json schedule_to_json(const Schedule& schedule);
// Accepts the array form or any object with a "schedule" array. Throws
// InvalidArgument on missing or mistyped fields.
Schedule schedule_from_json(const Json& j);
// Parses text first; malformed JSON raises ParseError.
Schedule parse_schedule(std::string_view text);

Json windows_to_json(const std::vector<Window>& windows);
std::vector<Window> windows_from_json(const Json& j);

Json instance_info(const Instance& instance);
Json report_to_json(const ValidationReport& report);
Json trace_to_json(const IterationTrace& trace);

Json outcome_to_json(const RepairOutcome& outcome, const Breakdown& breakdown,
                     const RepairConfig& config);

// {seed, events:[{machine, t_d, delta_t}]}
Json scenario_to_json(const DisruptionScenario& scenario);
DisruptionScenario scenario_from_json(const Json& j);

Json scenario_report_to_json(const ScenarioReport& report);

Json suite_to_json(const SuiteResult& result, bool include_timing = true);
Json probe_to_json(const ProbeResult& result, bool include_timing = true);

}  // namespace shopfloor

#endif  // SHOPFLOOR_SERIALIZE_HPP_
