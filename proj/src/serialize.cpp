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

#include "shopfloor/serialize.hpp"

#include <algorithm>

#include "shopfloor/instance_io.hpp"

namespace shopfloor {

namespace {

template <typename T>
T field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InvalidArgument(where + ": missing field '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument(where + ": field '" + key + "' has the wrong type");
  }
}

Json phase_trace_json(const std::vector<PhaseMark>& trace) {
  Json arr = Json::array();
  for (const auto& p : trace) {
    arr.push_back({{"phase", p.phase}, {"makespan", p.makespan}});
  }
  return arr;
}

Json breakdown_json(const Breakdown& b) {
  return {{"machine", b.machine}, {"t_d", b.t_d}, {"delta_t", b.delta_t}};
}

}  // namespace

Json schedule_to_json(const Schedule& schedule) {
  Schedule s = schedule;
  s.sort_canonical();
  Json arr = Json::array();
  for (const auto& op : s.ops) {
    Json o;
    o["job"] = op.job;
    o["step"] = op.step + 1;
    o["machine"] = op.machine;
    o["start"] = op.start;
    o["end"] = op.end;
    if (op.carried != 0) o["carried"] = op.carried;
    arr.push_back(std::move(o));
  }
  return arr;
}

Schedule schedule_from_json(const Json& j) {
  const Json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("schedule")) {
      throw InvalidArgument("schedule JSON object has no 'schedule' field");
    }
    arr = &j.at("schedule");
  }
  if (!arr->is_array()) throw InvalidArgument("schedule must be an array");
  Schedule s;
  for (std::size_t i = 0; i < arr->size(); ++i) {
    const Json& o = (*arr)[i];
    const std::string where = "schedule entry " + std::to_string(i);
    ScheduledOp op;
    op.job = field<int>(o, "job", where);
    op.step = field<int>(o, "step", where) - 1;
    op.machine = field<int>(o, "machine", where);
    op.start = field<Time>(o, "start", where);
    op.end = field<Time>(o, "end", where);
    if (o.contains("carried")) op.carried = field<Time>(o, "carried", where);
    if (op.step < 0) throw InvalidArgument(where + ": step is 1-based");
    s.ops.push_back(op);
  }
  s.sort_canonical();
  return s;
}

Schedule parse_schedule(std::string_view text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("schedule is not valid JSON", 0, 0);
  return schedule_from_json(j);
}

Json windows_to_json(const std::vector<Window>& windows) {
  Json arr = Json::array();
  for (const auto& w : windows) {
    arr.push_back({{"machine", w.machine}, {"start", w.start}, {"end", w.end}});
  }
  return arr;
}

std::vector<Window> windows_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("windows must be an array");
  std::vector<Window> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "window " + std::to_string(i);
    out.push_back({field<int>(j[i], "machine", where),
                   field<Time>(j[i], "start", where),
                   field<Time>(j[i], "end", where)});
  }
  return out;
}

Json instance_info(const Instance& instance) {
  Json j;
  j["name"] = instance.name;
  j["jobs"] = instance.num_jobs();
  j["machines"] = instance.num_machines;
  j["operations"] = instance.num_operations();
  j["o_max"] = instance.max_ops_per_job();
  j["lower_bound"] = lower_bound(instance);
  return j;
}

Json report_to_json(const ValidationReport& report) {
  Json j;
  j["ok"] = report.ok;
  Json arr = Json::array();
  for (const auto& v : report.violations) {
    Json o;
    o["kind"] = to_string(v.kind);
    o["job"] = v.job;
    o["step"] = v.step >= 0 ? v.step + 1 : v.step;
    o["machine"] = v.machine;
    o["detail"] = v.detail;
    arr.push_back(std::move(o));
  }
  j["violations"] = std::move(arr);
  return j;
}

Json trace_to_json(const IterationTrace& trace) {
  Json arr = Json::array();
  for (const auto& r : trace) {
    arr.push_back(
        {{"iteration", r.iteration}, {"makespan", r.makespan}, {"valid", r.valid}});
  }
  return arr;
}

Json outcome_to_json(const RepairOutcome& outcome, const Breakdown& breakdown,
                     const RepairConfig& config) {
  Json j;
  j["makespan"] = makespan(outcome.schedule);
  j["wip_moves"] = outcome.wip_moves;
  j["messages"] = outcome.messages;
  j["breakdown"] = breakdown_json(breakdown);
  Json cfg;
  cfg["t_wip"] = config.t_wip;
  if (config.swap_budget) {
    cfg["swap_budget"] = *config.swap_budget;
  } else {
    cfg["swap_budget"] = nullptr;
  }
  cfg["restart_policy"] = config.restart_policy == RestartPolicy::RestartFull
                              ? "restart_full"
                              : "resume_remaining";
  j["config"] = std::move(cfg);
  j["phase_trace"] = phase_trace_json(outcome.phase_trace);
  Json swaps = Json::array();
  for (const auto& s : outcome.swap_log) {
    swaps.push_back({{"machine", s.machine},
                     {"pos_a", s.pos_a},
                     {"pos_b", s.pos_b},
                     {"job", s.job},
                     {"step", s.step + 1},
                     {"delta", s.delta}});
  }
  j["swap_log"] = std::move(swaps);
  j["evaluations"] = outcome.evaluations;
  j["windows"] = windows_to_json(outcome.windows);
  j["schedule"] = schedule_to_json(outcome.schedule);
  return j;
}

Json scenario_to_json(const DisruptionScenario& scenario) {
  Json j;
  j["seed"] = scenario.seed;
  Json arr = Json::array();
  for (const auto& b : scenario.events) arr.push_back(breakdown_json(b));
  j["events"] = std::move(arr);
  return j;
}

DisruptionScenario scenario_from_json(const Json& j) {
  DisruptionScenario sc;
  sc.seed = j.contains("seed") ? field<std::uint64_t>(j, "seed", "scenario") : 0;
  if (!j.is_object() || !j.contains("events") || !j.at("events").is_array()) {
    throw InvalidArgument("scenario: 'events' must be an array");
  }
  const Json& arr = j.at("events");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "scenario event " + std::to_string(i);
    Breakdown b{field<int>(arr[i], "machine", where),
                field<Time>(arr[i], "t_d", where),
                field<Time>(arr[i], "delta_t", where)};
    if (b.delta_t < 1) throw InvalidArgument(where + ": delta_t must be >= 1");
    if (b.t_d < 0) throw InvalidArgument(where + ": t_d must be >= 0");
    sc.events.push_back(b);
  }
  std::stable_sort(sc.events.begin(), sc.events.end(),
                   [](const Breakdown& a, const Breakdown& b) {
                     return a.t_d < b.t_d;
                   });
  return sc;
}

Json scenario_report_to_json(const ScenarioReport& report) {
  Json j;
  j["instance"] = report.instance;
  j["seed"] = report.seed;
  j["base_makespan"] = report.base_makespan;
  j["makespan"] = report.metrics.makespan;
  j["wip_moves"] = report.metrics.wip_moves;
  j["messages"] = report.metrics.messages;
  Json events = Json::array();
  for (const auto& e : report.per_event) {
    Json o;
    o["breakdown"] = breakdown_json(e.breakdown);
    o["makespan"] = e.makespan_after;
    o["wip_moves"] = e.wip_moves;
    o["messages"] = e.messages;
    o["phase_trace"] = phase_trace_json(e.phase_trace);
    events.push_back(std::move(o));
  }
  j["per_event"] = std::move(events);
  j["windows"] = windows_to_json(report.windows);
  j["schedule"] = schedule_to_json(report.schedule);
  return j;
}

Json suite_to_json(const SuiteResult& result, bool include_timing) {
  Json j;
  Json rows = Json::array();
  for (const auto& r : result.rows) {
    Json o;
    o["instance"] = r.instance;
    o["method"] = r.method;
    o["makespan"] = r.makespan;
    if (r.gap) {
      o["gap"] = format_hundredths(*r.gap);
    } else {
      o["gap"] = nullptr;
    }
    o["wip"] = r.wip_moves;
    o["messages"] = r.messages;
    o["ms"] = include_timing ? r.ms : 0.0;
    o["valid"] = r.valid;
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  Json summary = Json::array();
  for (const auto& s : result.summary) {
    Json o;
    o["method"] = s.method;
    o["rows"] = s.rows;
    o["rows_with_gap"] = s.rows_with_gap;
    if (s.mean_gap) {
      o["mean_gap"] = format_hundredths(*s.mean_gap);
    } else {
      o["mean_gap"] = nullptr;
    }
    summary.push_back(std::move(o));
  }
  j["summary"] = std::move(summary);
  j["warnings"] = result.warnings;
  return j;
}

Json probe_to_json(const ProbeResult& result, bool include_timing) {
  Json j;
  j["c_max"] = result.c_max;
  j["c_ls"] = result.c_ls;
  j["within_ceiling"] = result.within_ceiling;
  Json trials = Json::array();
  for (const auto& t : result.trials) {
    Json o;
    o["jobs"] = t.jobs;
    o["machines"] = t.machines;
    o["o_max"] = t.o_max;
    o["breakdown"] = breakdown_json(t.breakdown);
    o["messages"] = t.messages;
    o["ms"] = include_timing ? t.ms : 0.0;
    trials.push_back(std::move(o));
  }
  j["trials"] = std::move(trials);
  return j;
}

}  // namespace shopfloor
