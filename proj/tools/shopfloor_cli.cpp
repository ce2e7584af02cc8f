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

// shopfloor command-line tool. Exit codes: 0 ok, 2 input or usage error,
// 3 internal invariant breach.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "shopfloor/shopfloor.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct CliFailure {
  int code;
  std::string message;
};

int exit_code_for(sf_status s) {
  switch (s) {
    case SF_OK: return kExitOk;
    case SF_ERR_INVARIANT:
    case SF_ERR_INTERNAL: return kExitInternal;
    default: return kExitInput;
  }
}

void check(sf_status s, const std::string& context) {
  if (s == SF_OK) return;
  throw CliFailure{exit_code_for(s), context + ": " + sf_status_name(s) + ": " +
                                         sf_last_error()};
}

struct InstanceDeleter {
  void operator()(sf_instance* p) const { sf_instance_free(p); }
};
struct ScheduleDeleter {
  void operator()(sf_schedule* p) const { sf_schedule_free(p); }
};
using InstancePtr = std::unique_ptr<sf_instance, InstanceDeleter>;
using SchedulePtr = std::unique_ptr<sf_schedule, ScheduleDeleter>;

// Takes ownership of a library string.
std::string take(char* s) {
  if (!s) return {};
  std::string out(s);
  sf_string_free(s);
  return out;
}

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure{kExitInput, "cannot read '" + path + "'"};
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliFailure{kExitInput, "cannot write '" + path + "'"};
  out << text;
  if (!out.flush()) throw CliFailure{kExitInput, "write failed for '" + path + "'"};
}

Json parse_or_fail(const std::string& text, const std::string& what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw CliFailure{kExitInput, what + " is not valid JSON"};
  return j;
}

struct Globals {
  std::string data_dir;
};

InstancePtr load_instance(const Globals& g, const std::string& ref) {
  sf_instance* p = nullptr;
  check(sf_instance_load(ref.c_str(), g.data_dir.empty() ? nullptr
                                                         : g.data_dir.c_str(),
                         &p),
        "loading instance '" + ref + "'");
  return InstancePtr(p);
}

Json instance_info(const sf_instance* inst) {
  char* s = nullptr;
  check(sf_instance_info(inst, &s), "instance info");
  return Json::parse(take(s));
}

SchedulePtr schedule_from_text(const std::string& text,
                               const std::string& what) {
  sf_schedule* p = nullptr;
  check(sf_schedule_from_json(text.c_str(), &p), "reading " + what);
  return SchedulePtr(p);
}

std::string schedule_json(const sf_schedule* s) {
  char* out = nullptr;
  check(sf_schedule_to_json(s, &out), "serializing schedule");
  return take(out);
}

bool is_demo(const std::string& ref) {
  return ref == "demo:5x3" || ref == "demo_5x3";
}

SchedulePtr demo_schedule() {
  sf_schedule* p = nullptr;
  check(sf_schedule_demo(&p), "demo schedule");
  return SchedulePtr(p);
}

sf_repair_config repair_config(std::int64_t t_wip, int swap_budget,
                               bool resume) {
  sf_repair_config c;
  sf_repair_config_default(&c);
  c.t_wip = t_wip;
  c.swap_budget = swap_budget;
  c.resume_remaining = resume ? 1 : 0;
  return c;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

const std::vector<std::string>& all_rule_names() {
  static const std::vector<std::string> names = {
      "random", "spt", "lpt", "stpt", "mpsr", "lso", "sptxtwk", "spttwkr"};
  return names;
}

// solve --------------------------------------------------------------------

struct SolveArgs {
  std::string instance;
  std::string rule = "spt";
  std::uint64_t seed = 1;
  bool improve = false;
  int budget = 200;
  std::string out;
  std::string trace;
};

int cmd_solve(const Globals& g, const SolveArgs& a) {
  auto inst = load_instance(g, a.instance);
  sf_schedule* raw = nullptr;
  char* trace = nullptr;
  check(sf_solve(inst.get(), a.rule.c_str(), a.seed, a.improve ? a.budget : -1,
                 &raw, &trace),
        "solve");
  SchedulePtr sched(raw);
  const std::string trace_text = take(trace);
  Json out;
  out["instance"] = instance_info(inst.get())["name"];
  out["makespan"] = sf_schedule_makespan(sched.get());
  out["algorithm"] = a.rule + (a.improve ? "+improve" : "");
  Json params;
  params["rule"] = a.rule;
  params["seed"] = a.seed;
  params["improve"] = a.improve;
  if (a.improve) params["budget"] = a.budget;
  out["params"] = std::move(params);
  out["schedule"] = Json::parse(schedule_json(sched.get()));
  write_output(a.out, out.dump(2) + "\n");
  if (!a.trace.empty()) write_output(a.trace, trace_text + "\n");
  return kExitOk;
}

// repair -------------------------------------------------------------------

struct RepairArgs {
  std::string instance = "demo:5x3";
  std::string schedule;
  int machine = -1;
  std::int64_t td = -1;
  std::int64_t dt = 0;
  std::int64_t twip = 1;
  int swap_budget = -1;
  bool resume = false;
  std::string out;
  std::string svg;
};

int cmd_repair(const Globals& g, const RepairArgs& a) {
  if (a.dt < 1) throw CliFailure{kExitInput, "--dt must be >= 1"};
  if (a.td < 0) throw CliFailure{kExitInput, "--td must be >= 0"};
  auto inst = load_instance(g, a.instance);
  SchedulePtr base;
  if (!a.schedule.empty()) {
    base = schedule_from_text(read_input(a.schedule), "schedule");
  } else if (is_demo(a.instance)) {
    base = demo_schedule();
  } else {
    throw CliFailure{kExitInput, "--schedule is required for " + a.instance};
  }
  const sf_repair_config cfg = repair_config(a.twip, a.swap_budget, a.resume);
  char* outcome = nullptr;
  check(sf_repair(inst.get(), base.get(), a.machine, a.td, a.dt, &cfg, nullptr,
                  &outcome),
        "repair");
  const std::string text = take(outcome);
  const Json j = Json::parse(text);
  write_output(a.out, j.dump(2) + "\n");
  if (!a.svg.empty()) {
    auto repaired = schedule_from_text(text, "repaired schedule");
    const int m = instance_info(inst.get())["machines"].get<int>();
    char* svg = nullptr;
    check(sf_gantt_svg(repaired.get(), m, j.at("windows").dump().c_str(),
                       nullptr, &svg),
          "gantt");
    write_output(a.svg, take(svg));
  }
  return kExitOk;
}

// simulate -----------------------------------------------------------------

struct SimulateArgs {
  std::string instance;
  int failures = 20;
  std::uint64_t seed = 1;
  std::int64_t min_dur = 5;
  std::int64_t max_dur = 50;
  std::string scenario;
  std::string save_scenario;
  std::string schedule;
  std::string rule = "spt";
  std::string log;
  std::string report;
  std::int64_t twip = 1;
  int swap_budget = -1;
  bool resume = false;
  bool json = false;
};

int cmd_simulate(const Globals& g, const SimulateArgs& a) {
  auto inst = load_instance(g, a.instance);
  const Json info = instance_info(inst.get());
  SchedulePtr base;
  if (!a.schedule.empty()) {
    base = schedule_from_text(read_input(a.schedule), "schedule");
  } else {
    sf_schedule* raw = nullptr;
    check(sf_solve(inst.get(), a.rule.c_str(), a.seed, -1, &raw, nullptr),
          "base schedule");
    base.reset(raw);
  }
  std::string scenario;
  if (!a.scenario.empty()) {
    scenario = read_input(a.scenario);
  } else {
    char* s = nullptr;
    check(sf_generate_scenario(inst.get(), a.seed, a.failures, a.min_dur,
                               a.max_dur, &s),
          "scenario");
    scenario = take(s);
  }
  if (!a.save_scenario.empty()) {
    write_output(a.save_scenario, parse_or_fail(scenario, "scenario").dump(2) + "\n");
  }
  const std::string log_path =
      a.log.empty() ? info["name"].get<std::string>() + ".events.jsonl" : a.log;
  const sf_repair_config cfg = repair_config(a.twip, a.swap_budget, a.resume);
  char* report = nullptr;
  check(sf_simulate(inst.get(), base.get(), scenario.c_str(), &cfg,
                    log_path.c_str(), &report, nullptr),
        "simulate");
  Json r = Json::parse(take(report));
  if (!a.report.empty()) write_output(a.report, r.dump(2) + "\n");
  if (a.json) {
    Json out = r;
    out["log"] = log_path;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "instance " << r["instance"].get<std::string>() << "  seed "
              << r["seed"] << "  events " << r["per_event"].size() << "\n"
              << "base makespan   " << r["base_makespan"] << "\n"
              << "final makespan  " << r["makespan"] << "\n"
              << "wip moves       " << r["wip_moves"] << "\n"
              << "messages        " << r["messages"] << "\n"
              << "event log       " << log_path << "\n";
  }
  return kExitOk;
}

// replay -------------------------------------------------------------------

struct ReplayArgs {
  std::string log;
  std::string base;
  std::string out;
};

int cmd_replay(const Globals&, const ReplayArgs& a) {
  const std::string text = read_input(a.log);
  SchedulePtr base;
  if (!a.base.empty()) base = schedule_from_text(read_input(a.base), "base");
  sf_schedule* raw = nullptr;
  std::int64_t last = 0;
  const sf_status s = sf_replay(text.c_str(), base.get(), &raw, &last);
  if (s != SF_OK) {
    throw CliFailure{exit_code_for(s), "replay: " + std::string(sf_last_error())};
  }
  SchedulePtr sched(raw);
  Json out;
  out["makespan"] = sf_schedule_makespan(sched.get());
  out["schedule"] = Json::parse(schedule_json(sched.get()));
  write_output(a.out, out.dump(2) + "\n");
  return kExitOk;
}

// bench --------------------------------------------------------------------

struct BenchArgs {
  std::string instances;
  std::string rules;
  std::string methods;
  std::uint64_t seed = 1;
  int failures = 20;
  std::int64_t min_dur = 5;
  std::int64_t max_dur = 50;
  std::string bounds;
  std::string csv;
  bool json = false;
  bool no_timing = false;
};

int cmd_bench(const Globals& g, const BenchArgs& a) {
  std::vector<std::string> methods;
  if (!a.rules.empty()) {
    if (a.rules == "all") {
      methods = all_rule_names();
    } else {
      methods = split_list(a.rules);
    }
  }
  for (const auto& m : split_list(a.methods)) methods.push_back(m);
  if (methods.empty()) methods = {"spt"};
  Json req;
  req["instances"] = split_list(a.instances);
  req["methods"] = methods;
  if (!g.data_dir.empty()) req["data_dir"] = g.data_dir;
  if (!a.bounds.empty()) req["bounds"] = a.bounds;
  req["seed"] = a.seed;
  req["failures"] = a.failures;
  req["min_dur"] = a.min_dur;
  req["max_dur"] = a.max_dur;
  req["timing"] = !a.no_timing;
  char* result = nullptr;
  char* csv = nullptr;
  check(sf_bench(req.dump().c_str(), &result, &csv), "bench");
  const Json r = Json::parse(take(result));
  const std::string table = take(csv);
  for (const auto& w : r["warnings"]) {
    std::cerr << "warning: " << w.get<std::string>() << "\n";
  }
  if (!a.csv.empty()) write_output(a.csv, table);
  if (a.json) {
    std::cout << r.dump(2) << "\n";
  } else {
    std::cout << table << "\nmethod,rows,rows_with_gap,mean_gap\n";
    for (const auto& s : r["summary"]) {
      std::cout << s["method"].get<std::string>() << ',' << s["rows"] << ','
                << s["rows_with_gap"] << ','
                << (s["mean_gap"].is_null() ? std::string()
                                            : s["mean_gap"].get<std::string>())
                << "\n";
    }
  }
  for (const auto& row : r["rows"]) {
    if (!row["valid"].get<bool>()) {
      throw CliFailure{kExitInternal, "bench produced an infeasible schedule"};
    }
  }
  return kExitOk;
}

// gantt --------------------------------------------------------------------

struct GanttArgs {
  std::string instance = "demo:5x3";
  std::string schedule;
  std::string title;
  std::string out;
};

int cmd_gantt(const Globals& g, const GanttArgs& a) {
  auto inst = load_instance(g, a.instance);
  const int machines = instance_info(inst.get())["machines"].get<int>();
  SchedulePtr sched;
  std::string windows;
  if (!a.schedule.empty()) {
    const std::string text = read_input(a.schedule);
    const Json j = parse_or_fail(text, "schedule");
    if (j.is_object() && j.contains("windows")) windows = j.at("windows").dump();
    sched = schedule_from_text(text, "schedule");
  } else if (is_demo(a.instance)) {
    sched = demo_schedule();
  } else {
    throw CliFailure{kExitInput, "--schedule is required for " + a.instance};
  }
  char* svg = nullptr;
  check(sf_gantt_svg(sched.get(), machines,
                     windows.empty() ? nullptr : windows.c_str(),
                     a.title.empty() ? nullptr : a.title.c_str(), &svg),
        "gantt");
  write_output(a.out, take(svg));
  return kExitOk;
}

// validate -----------------------------------------------------------------

struct ValidateArgs {
  std::string instance;
  std::string schedule;
  bool json = false;
};

int cmd_validate(const Globals& g, const ValidateArgs& a) {
  auto inst = load_instance(g, a.instance);
  const std::string text = read_input(a.schedule);
  const Json j = parse_or_fail(text, "schedule");
  std::string windows;
  if (j.is_object() && j.contains("windows")) windows = j.at("windows").dump();
  auto sched = schedule_from_text(text, "schedule");
  int ok = 0;
  char* report = nullptr;
  check(sf_validate(inst.get(), sched.get(),
                    windows.empty() ? nullptr : windows.c_str(), &ok, &report),
        "validate");
  const Json r = Json::parse(take(report));
  if (a.json) {
    Json out = r;
    out["makespan"] = sf_schedule_makespan(sched.get());
    std::cout << out.dump(2) << "\n";
  } else if (ok) {
    std::cout << "ok  makespan " << sf_schedule_makespan(sched.get()) << "\n";
  } else {
    for (const auto& v : r["violations"]) {
      std::cout << v["kind"].get<std::string>() << " J" << v["job"] << " step "
                << v["step"] << ": " << v["detail"].get<std::string>() << "\n";
    }
  }
  return ok ? kExitOk : kExitInput;
}

// probe --------------------------------------------------------------------

struct ProbeArgs {
  std::string sizes = "5x3,10x5,20x10,30x15";
  int trials = 10;
  std::uint64_t seed = 1;
  bool json = false;
};

int cmd_probe(const Globals&, const ProbeArgs& a) {
  Json sizes = Json::array();
  for (const auto& s : split_list(a.sizes)) {
    const auto x = s.find('x');
    int j = 0;
    int m = 0;
    if (x == std::string::npos ||
        std::sscanf(s.c_str(), "%dx%d", &j, &m) != 2) {
      throw CliFailure{kExitInput, "size '" + s + "' is not JxM"};
    }
    sizes.push_back({j, m});
  }
  Json req;
  req["sizes"] = sizes;
  req["trials"] = a.trials;
  req["seed"] = a.seed;
  char* result = nullptr;
  check(sf_probe(req.dump().c_str(), &result), "probe");
  const Json r = Json::parse(take(result));
  if (a.json) {
    std::cout << r.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "jobs,machines,o_max,messages,ms\n";
  for (const auto& t : r["trials"]) {
    std::cout << t["jobs"] << ',' << t["machines"] << ',' << t["o_max"] << ','
              << t["messages"] << ',' << t["ms"].get<double>() << "\n";
  }
  std::cout << "c_max " << r["c_max"].get<double>() << "\nc_ls "
            << r["c_ls"].get<double>() << "\n";
  return kExitOk;
}

// info ---------------------------------------------------------------------

int cmd_info(const Globals& g, const std::string& ref) {
  auto inst = load_instance(g, ref);
  std::cout << instance_info(inst.get()).dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shopfloor: job-shop scheduling, reactive repair and benchmarks"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--data-dir", g.data_dir,
                 "Directory with instances/, bounds.txt and aliases.txt");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Build a schedule with a dispatching rule");
  s->add_option("instance", solve.instance, "demo:5x3, a file or a bundled name")
      ->required();
  s->add_option("--rule", solve.rule, "random spt lpt stpt mpsr lso sptxtwk spttwkr");
  s->add_option("--seed", solve.seed, "Seed for the random rule and tie breaks");
  s->add_flag("--improve", solve.improve, "Run critical-path local search");
  s->add_option("--budget", solve.budget, "Local search iterations")
      ->check(CLI::NonNegativeNumber);
  s->add_option("--out", solve.out, "Write JSON here instead of stdout");
  s->add_option("--trace", solve.trace, "Write the iteration trace JSON here");

  RepairArgs rep;
  auto* r = app.add_subcommand("repair", "Repair a schedule after a breakdown");
  r->add_option("--instance", rep.instance, "Instance (default demo:5x3)");
  r->add_option("--schedule", rep.schedule, "Schedule JSON file, '-' for stdin");
  r->add_option("--machine", rep.machine, "Broken machine")->required();
  r->add_option("--td", rep.td, "Breakdown time")->required();
  r->add_option("--dt", rep.dt, "Breakdown duration (>= 1)")->required();
  r->add_option("--twip", rep.twip, "WIP staging time")->check(CLI::NonNegativeNumber);
  r->add_option("--swap-budget", rep.swap_budget,
                "Reorder evaluations per queue (default: one per job)")
      ->check(CLI::NonNegativeNumber);
  r->add_flag("--resume", rep.resume, "Resume interrupted work instead of restarting");
  r->add_option("--out", rep.out, "Write JSON here instead of stdout");
  r->add_option("--svg", rep.svg, "Also write a Gantt chart of the result");

  SimulateArgs sim;
  auto* m = app.add_subcommand("simulate", "Run a multi-breakdown scenario");
  m->add_option("instance", sim.instance, "Instance")->required();
  m->add_option("--failures", sim.failures, "Number of breakdowns")
      ->check(CLI::NonNegativeNumber);
  m->add_option("--seed", sim.seed, "Scenario seed");
  m->add_option("--min-dur", sim.min_dur, "Shortest breakdown");
  m->add_option("--max-dur", sim.max_dur, "Longest breakdown");
  m->add_option("--scenario", sim.scenario, "Load scenario JSON instead of generating");
  m->add_option("--save-scenario", sim.save_scenario, "Write the scenario JSON");
  m->add_option("--schedule", sim.schedule, "Base schedule JSON (default: --rule)");
  m->add_option("--rule", sim.rule, "Rule for the base schedule");
  m->add_option("--log", sim.log, "Event log path (default <instance>.events.jsonl)");
  m->add_option("--report", sim.report, "Write the scenario report JSON here");
  m->add_option("--twip", sim.twip, "WIP staging time")->check(CLI::NonNegativeNumber);
  m->add_option("--swap-budget", sim.swap_budget, "Reorder evaluations per queue")
      ->check(CLI::NonNegativeNumber);
  m->add_flag("--resume", sim.resume, "Resume interrupted work");
  m->add_flag("--json", sim.json, "Print the report as JSON");

  ReplayArgs rp;
  auto* p = app.add_subcommand("replay", "Rebuild a schedule from an event log");
  p->add_option("log", rp.log, "Event log, '-' for stdin")->required();
  p->add_option("--base", rp.base, "Schedule the log starts from");
  p->add_option("--out", rp.out, "Write JSON here instead of stdout");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Benchmark methods over instances");
  b->add_option("--instances", bench.instances, "Comma-separated instances")->required();
  b->add_option("--rules", bench.rules, "Comma-separated rules or 'all'");
  b->add_option("--methods", bench.methods,
                "Comma-separated methods, e.g. spt+improve,spt+lrcp");
  b->add_option("--seed", bench.seed, "Seed for random rule and scenarios");
  b->add_option("--failures", bench.failures, "Breakdowns for +lrcp methods");
  b->add_option("--min-dur", bench.min_dur, "Shortest breakdown");
  b->add_option("--max-dur", bench.max_dur, "Longest breakdown");
  b->add_option("--bounds", bench.bounds, "Upper bound file");
  b->add_option("--csv", bench.csv, "Write the CSV table here");
  b->add_flag("--json", bench.json, "Print JSON instead of tables");
  b->add_flag("--no-timing", bench.no_timing, "Report 0 for wall times");

  GanttArgs gantt;
  auto* gt = app.add_subcommand("gantt", "Render a schedule as SVG");
  gt->add_option("--instance", gantt.instance, "Instance (default demo:5x3)");
  gt->add_option("--schedule", gantt.schedule, "Schedule or repair outcome JSON");
  gt->add_option("--title", gantt.title, "Chart title");
  gt->add_option("--out", gantt.out, "Write SVG here instead of stdout");

  ValidateArgs val;
  auto* v = app.add_subcommand("validate", "Check a schedule for feasibility");
  v->add_option("instance", val.instance, "Instance")->required();
  v->add_option("schedule", val.schedule, "Schedule JSON, '-' for stdin")->required();
  v->add_flag("--json", val.json, "Print the report as JSON");

  ProbeArgs probe;
  auto* pr = app.add_subcommand("probe", "Measure repair message counts by size");
  pr->add_option("--sizes", probe.sizes, "Comma-separated JxM sizes");
  pr->add_option("--trials", probe.trials, "Trials per size")
      ->check(CLI::NonNegativeNumber);
  pr->add_option("--seed", probe.seed, "Seed");
  pr->add_flag("--json", probe.json, "Print JSON");

  std::string info_ref;
  auto* in = app.add_subcommand("info", "Describe an instance");
  in->add_option("instance", info_ref, "Instance")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*s) return cmd_solve(g, solve);
    if (*r) return cmd_repair(g, rep);
    if (*m) return cmd_simulate(g, sim);
    if (*p) return cmd_replay(g, rp);
    if (*b) return cmd_bench(g, bench);
    if (*gt) return cmd_gantt(g, gantt);
    if (*v) return cmd_validate(g, val);
    if (*pr) return cmd_probe(g, probe);
    if (*in) return cmd_info(g, info_ref);
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}
