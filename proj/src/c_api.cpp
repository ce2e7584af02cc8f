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

#include "shopfloor/shopfloor.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <optional>
#include <string>

#include "shopfloor/bench.hpp"
#include "shopfloor/dispatch.hpp"
#include "shopfloor/gantt.hpp"
#include "shopfloor/improve.hpp"
#include "shopfloor/instance_io.hpp"
#include "shopfloor/lrcp.hpp"
#include "shopfloor/serialize.hpp"
#include "shopfloor/simulate.hpp"
#include "shopfloor/validate.hpp"

#ifndef SHOPFLOOR_DEFAULT_DATA_DIR
#define SHOPFLOOR_DEFAULT_DATA_DIR "data"
#endif

struct sf_instance {
  shopfloor::Instance value;
};

struct sf_schedule {
  shopfloor::Schedule value;
};

namespace {

using shopfloor::Json;

thread_local std::string g_last_error;

sf_status fail(sf_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename F>
sf_status guard(F&& body) {
  g_last_error.clear();
  try {
    body();
    return SF_OK;
  } catch (const shopfloor::LogError& e) {
    return fail(SF_ERR_PARSE, e.what());
  } catch (const shopfloor::ParseError& e) {
    std::string msg = e.what();
    if (e.line() > 0) {
      msg += " (line " + std::to_string(e.line()) + ", column " +
             std::to_string(e.column()) + ")";
    }
    return fail(SF_ERR_PARSE, msg);
  } catch (const shopfloor::NotFoundError& e) {
    return fail(SF_ERR_NOT_FOUND, e.what());
  } catch (const shopfloor::InvalidArgument& e) {
    return fail(SF_ERR_INVALID_ARGUMENT, e.what());
  } catch (const shopfloor::InvariantError& e) {
    return fail(SF_ERR_INVARIANT, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(SF_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SF_ERR_INTERNAL, "out of memory");
  } catch (const std::runtime_error& e) {
    return fail(SF_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(SF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SF_ERR_INTERNAL, "unknown error");
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void require(const void* p, const char* what) {
  if (!p) throw shopfloor::InvalidArgument(std::string(what) + " is NULL");
}

Json parse_json(const char* text, const char* what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw shopfloor::ParseError(std::string(what) + " is not valid JSON", 0, 0);
  }
  return j;
}

std::filesystem::path data_dir_or_default(const char* dir) {
  return dir && *dir ? std::filesystem::path(dir)
                     : std::filesystem::path(SHOPFLOOR_DEFAULT_DATA_DIR);
}

shopfloor::RepairConfig to_config(const sf_repair_config* c) {
  shopfloor::RepairConfig cfg;
  if (!c) return cfg;
  if (c->t_wip < 0) throw shopfloor::InvalidArgument("t_wip must be >= 0");
  cfg.t_wip = c->t_wip;
  if (c->swap_budget >= 0) cfg.swap_budget = c->swap_budget;
  cfg.restart_policy = c->resume_remaining
                           ? shopfloor::RestartPolicy::ResumeRemaining
                           : shopfloor::RestartPolicy::RestartFull;
  return cfg;
}

shopfloor::RepairConfig config_from_request(const Json& req) {
  sf_repair_config c;
  sf_repair_config_default(&c);
  c.t_wip = req.value("t_wip", c.t_wip);
  c.swap_budget = req.value("swap_budget", c.swap_budget);
  return to_config(&c);
}

shopfloor::Rule rule_from(const char* name, std::uint64_t seed) {
  require(name, "rule");
  const auto kind = shopfloor::parse_rule(name);
  if (!kind) {
    throw shopfloor::InvalidArgument(std::string("unknown rule '") + name + "'");
  }
  return {*kind, seed};
}

}  // namespace

extern "C" {

const char* sf_version(void) { return "0.1.0"; }

const char* sf_status_name(sf_status status) {
  switch (status) {
    case SF_OK: return "ok";
    case SF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SF_ERR_PARSE: return "parse error";
    case SF_ERR_IO: return "i/o error";
    case SF_ERR_INVARIANT: return "invariant violated";
    case SF_ERR_NOT_FOUND: return "not found";
    case SF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* sf_last_error(void) { return g_last_error.c_str(); }

void sf_string_free(char* s) { std::free(s); }

const char* sf_default_data_dir(void) { return SHOPFLOOR_DEFAULT_DATA_DIR; }

sf_status sf_instance_load(const char* ref, const char* data_dir,
                           sf_instance** out) {
  return guard([&] {
    require(ref, "ref");
    require(out, "out");
    auto inst = shopfloor::load_instance(ref, data_dir_or_default(data_dir));
    inst.check();
    *out = new sf_instance{std::move(inst)};
  });
}

sf_status sf_instance_parse(const char* text, const char* name,
                            sf_instance** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    auto inst = shopfloor::parse_instance(text, name ? name : "");
    inst.check();
    *out = new sf_instance{std::move(inst)};
  });
}

void sf_instance_free(sf_instance* instance) { delete instance; }

sf_status sf_instance_info(const sf_instance* instance, char** json) {
  return guard([&] {
    require(instance, "instance");
    require(json, "json");
    *json = dup(shopfloor::instance_info(instance->value).dump());
  });
}

sf_status sf_instance_to_standard(const sf_instance* instance, char** text) {
  return guard([&] {
    require(instance, "instance");
    require(text, "text");
    *text = dup(shopfloor::write_standard(instance->value));
  });
}

sf_status sf_schedule_from_json(const char* json, sf_schedule** out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    *out = new sf_schedule{shopfloor::parse_schedule(json)};
  });
}

sf_status sf_schedule_to_json(const sf_schedule* schedule, char** json) {
  return guard([&] {
    require(schedule, "schedule");
    require(json, "json");
    *json = dup(shopfloor::schedule_to_json(schedule->value).dump());
  });
}

sf_status sf_schedule_demo(sf_schedule** out) {
  return guard([&] {
    require(out, "out");
    *out = new sf_schedule{shopfloor::demo_5x3_schedule()};
  });
}

int64_t sf_schedule_makespan(const sf_schedule* schedule) {
  return schedule ? shopfloor::makespan(schedule->value) : 0;
}

void sf_schedule_free(sf_schedule* schedule) { delete schedule; }

sf_status sf_solve(const sf_instance* instance, const char* rule,
                   uint64_t seed, int improve_budget, sf_schedule** out,
                   char** trace_json) {
  return guard([&] {
    require(instance, "instance");
    require(out, "out");
    shopfloor::Schedule s =
        shopfloor::schedule_with_rule(instance->value, rule_from(rule, seed));
    Json trace = Json::array();
    if (improve_budget >= 0) {
      auto r = shopfloor::improve(instance->value, s, improve_budget, seed);
      s = std::move(r.schedule);
      trace = shopfloor::trace_to_json(r.trace);
    }
    const auto report = shopfloor::validate_schedule(instance->value, s);
    if (!report.ok) {
      throw shopfloor::InvariantError("solver produced an infeasible schedule: " +
                                      report.to_text());
    }
    char* t = trace_json ? dup(trace.dump()) : nullptr;
    *out = new sf_schedule{std::move(s)};
    if (trace_json) *trace_json = t;
  });
}

sf_status sf_validate(const sf_instance* instance, const sf_schedule* schedule,
                      const char* windows_json, int* ok, char** report_json) {
  return guard([&] {
    require(instance, "instance");
    require(schedule, "schedule");
    std::vector<shopfloor::Window> windows;
    if (windows_json) {
      windows = shopfloor::windows_from_json(parse_json(windows_json, "windows"));
    }
    const auto report =
        shopfloor::validate_schedule(instance->value, schedule->value, windows);
    if (report_json) *report_json = dup(shopfloor::report_to_json(report).dump());
    if (ok) *ok = report.ok ? 1 : 0;
  });
}

void sf_repair_config_default(sf_repair_config* config) {
  if (!config) return;
  config->t_wip = 1;
  config->swap_budget = -1;
  config->resume_remaining = 0;
}

sf_status sf_repair(const sf_instance* instance, const sf_schedule* schedule,
                    int machine, int64_t t_d, int64_t delta_t,
                    const sf_repair_config* config, sf_schedule** out,
                    char** outcome_json) {
  return guard([&] {
    require(instance, "instance");
    require(schedule, "schedule");
    const shopfloor::RepairConfig cfg = to_config(config);
    const shopfloor::Breakdown b{machine, t_d, delta_t};
    auto outcome = shopfloor::repair(instance->value, schedule->value, b, cfg);
    char* j = outcome_json
                  ? dup(shopfloor::outcome_to_json(outcome, b, cfg).dump())
                  : nullptr;
    if (out) *out = new sf_schedule{std::move(outcome.schedule)};
    if (outcome_json) *outcome_json = j;
  });
}

sf_status sf_generate_scenario(const sf_instance* instance, uint64_t seed,
                               int failures, int64_t min_dur, int64_t max_dur,
                               char** scenario_json) {
  return guard([&] {
    require(instance, "instance");
    require(scenario_json, "scenario_json");
    const auto sc = shopfloor::generate_scenario(instance->value, seed,
                                                 failures, min_dur, max_dur);
    *scenario_json = dup(shopfloor::scenario_to_json(sc).dump());
  });
}

sf_status sf_simulate(const sf_instance* instance, const sf_schedule* base,
                      const char* scenario_json,
                      const sf_repair_config* config, const char* log_path,
                      char** report_json, char** log_jsonl) {
  return guard([&] {
    require(instance, "instance");
    require(base, "base");
    require(scenario_json, "scenario_json");
    require(report_json, "report_json");
    const auto sc =
        shopfloor::scenario_from_json(parse_json(scenario_json, "scenario"));
    std::optional<shopfloor::EventLog> log;
    if (log_path && *log_path) {
      log.emplace(std::filesystem::path(log_path));
    } else {
      log.emplace();
    }
    const auto report = shopfloor::run_scenario(
        instance->value, base->value, sc, to_config(config), &*log);
    char* r = dup(shopfloor::scenario_report_to_json(report).dump());
    char* l = log_jsonl ? dup(log->to_jsonl()) : nullptr;
    *report_json = r;
    if (log_jsonl) *log_jsonl = l;
  });
}

sf_status sf_replay(const char* log_jsonl, const sf_schedule* base,
                    sf_schedule** out, int64_t* last_valid_seq) {
  return guard([&] {
    require(log_jsonl, "log_jsonl");
    require(out, "out");
    try {
      const auto entries = shopfloor::parse_event_log(log_jsonl);
      shopfloor::Schedule s =
          shopfloor::replay(entries, base ? base->value : shopfloor::Schedule{});
      *out = new sf_schedule{std::move(s)};
    } catch (const shopfloor::LogError& e) {
      if (last_valid_seq) *last_valid_seq = e.last_valid_seq();
      throw;
    }
  });
}

sf_status sf_bench(const char* request_json, char** result_json, char** csv) {
  return guard([&] {
    require(request_json, "request_json");
    require(result_json, "result_json");
    const Json req = parse_json(request_json, "bench request");
    if (!req.is_object()) {
      throw shopfloor::InvalidArgument("bench request must be an object");
    }
    if (!req.contains("instances") || !req.contains("methods")) {
      throw shopfloor::InvalidArgument("bench needs instances and methods");
    }
    const auto dir = data_dir_or_default(
        req.contains("data_dir") ? req.at("data_dir").get<std::string>().c_str()
                                 : nullptr);
    shopfloor::SuiteParams params;
    params.seed = req.value("seed", std::uint64_t{1});
    params.failures = req.value("failures", params.failures);
    params.min_dur = req.value("min_dur", params.min_dur);
    params.max_dur = req.value("max_dur", params.max_dur);
    params.config = config_from_request(req);
    const bool timing = req.value("timing", true);

    std::vector<shopfloor::Instance> instances;
    for (const auto& ref : req.at("instances")) {
      auto inst = shopfloor::load_instance(ref.get<std::string>(), dir);
      inst.check();
      instances.push_back(std::move(inst));
    }
    std::vector<shopfloor::Method> methods;
    for (const auto& m : req.at("methods")) {
      methods.push_back(
          shopfloor::parse_method(m.get<std::string>(), params.seed));
    }
    if (instances.empty() || methods.empty()) {
      throw shopfloor::InvalidArgument("bench needs instances and methods");
    }
    shopfloor::BoundsRegistry bounds;
    std::filesystem::path bounds_path = dir / "bounds.txt";
    if (req.contains("bounds")) {
      bounds_path = req.at("bounds").get<std::string>();
      bounds = shopfloor::load_bounds(shopfloor::read_file(bounds_path));
    } else if (std::filesystem::is_regular_file(bounds_path)) {
      bounds = shopfloor::load_bounds(shopfloor::read_file(bounds_path));
    }
    auto result = shopfloor::run_suite(instances, methods, params, bounds);
    result.warnings.insert(result.warnings.begin(), bounds.warnings.begin(),
                           bounds.warnings.end());
    char* r = dup(shopfloor::suite_to_json(result, timing).dump());
    char* c = csv ? dup(shopfloor::to_csv(result, timing)) : nullptr;
    *result_json = r;
    if (csv) *csv = c;
  });
}

sf_status sf_probe(const char* request_json, char** result_json) {
  return guard([&] {
    require(request_json, "request_json");
    require(result_json, "result_json");
    const Json req = parse_json(request_json, "probe request");
    if (!req.is_object() || !req.contains("sizes")) {
      throw shopfloor::InvalidArgument("probe request needs 'sizes'");
    }
    std::vector<shopfloor::ProbeSize> sizes;
    for (const auto& s : req.at("sizes")) {
      sizes.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
    }
    const auto result = shopfloor::complexity_probe(
        sizes, req.value("trials", 10), req.value("seed", std::uint64_t{1}),
        config_from_request(req));
    *result_json =
        dup(shopfloor::probe_to_json(result, req.value("timing", true)).dump());
  });
}

sf_status sf_gantt_svg(const sf_schedule* schedule, int num_machines,
                       const char* windows_json, const char* title,
                       char** svg) {
  return guard([&] {
    require(schedule, "schedule");
    require(svg, "svg");
    std::vector<shopfloor::Window> windows;
    if (windows_json) {
      windows = shopfloor::windows_from_json(parse_json(windows_json, "windows"));
    }
    shopfloor::GanttOptions opts;
    if (title) opts.title = title;
    *svg = dup(shopfloor::render_gantt_svg(schedule->value, num_machines,
                                           windows, opts));
  });
}

}  // extern "C"
