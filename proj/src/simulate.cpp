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

#include "shopfloor/simulate.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <random>
#include <sstream>

#include "shopfloor/dispatch.hpp"
#include "shopfloor/validate.hpp"

namespace shopfloor {

using json = nlohmann::ordered_json;

DisruptionScenario generate_scenario(const Instance& instance,
                                     std::uint64_t seed, int n_failures,
                                     Time min_dur, Time max_dur) {
  if (n_failures < 0) throw InvalidArgument("failure count must be >= 0");
  if (min_dur < 1) throw InvalidArgument("minimum duration must be >= 1");
  if (max_dur < min_dur) {
    throw InvalidArgument("maximum duration below minimum duration");
  }
  DisruptionScenario sc;
  sc.seed = seed;
  if (n_failures == 0) return sc;
  if (instance.num_machines <= 0) {
    throw InvalidArgument("cannot place failures on an instance without machines");
  }
  const Time horizon =
      makespan(schedule_with_rule(instance, {RuleKind::SPT, 0}));
  std::mt19937_64 rng(seed);
  const auto span = static_cast<std::uint64_t>(max_dur - min_dur + 1);
  for (int i = 0; i < n_failures; ++i) {
    Breakdown b;
    b.machine = static_cast<int>(rng() % static_cast<std::uint64_t>(
                                             instance.num_machines));
    const std::uint64_t draw = rng();
    b.t_d = horizon > 0
                ? static_cast<Time>(draw % static_cast<std::uint64_t>(horizon))
                : 0;
    b.delta_t = min_dur + static_cast<Time>(rng() % span);
    sc.events.push_back(b);
  }
  std::stable_sort(sc.events.begin(), sc.events.end(),
                   [](const Breakdown& a, const Breakdown& b) {
                     return a.t_d < b.t_d;
                   });
  return sc;
}

namespace {

constexpr const char* kKindNames[] = {
    "Scheduled",    "BreakdownStart", "Rescheduled", "DelaySent",
    "DelayApplied", "SwapApplied",    "RepairDone",
};

json op_payload(const ScheduledOp& op) {
  json p;
  p["job"] = op.job;
  p["step"] = op.step + 1;
  p["machine"] = op.machine;
  p["start"] = op.start;
  p["end"] = op.end;
  if (op.carried != 0) p["carried"] = op.carried;
  return p;
}

json event_payload(const RepairEvent& ev) {
  json p;
  p["phase"] = ev.phase;
  switch (ev.kind) {
    case RepairEvent::Kind::Rescheduled:
    case RepairEvent::Kind::DelayApplied:
      p["job"] = ev.job;
      p["step"] = ev.step + 1;
      p["machine"] = ev.machine;
      p["start"] = ev.start;
      p["end"] = ev.end;
      if (ev.carried != 0) p["carried"] = ev.carried;
      break;
    case RepairEvent::Kind::DelaySent:
      p["job"] = ev.job;
      p["step"] = ev.step + 1;
      p["new_end"] = ev.new_end;
      p["from_machine"] = ev.machine;
      p["to_machine"] = ev.to_machine;
      break;
    case RepairEvent::Kind::SwapApplied:
      p["machine"] = ev.machine;
      p["pos_a"] = ev.pos_a;
      p["pos_b"] = ev.pos_b;
      p["job"] = ev.job;
      p["step"] = ev.step + 1;
      p["delta"] = ev.delta;
      break;
  }
  return p;
}

EventKind map_kind(RepairEvent::Kind k) {
  switch (k) {
    case RepairEvent::Kind::Rescheduled: return EventKind::Rescheduled;
    case RepairEvent::Kind::DelaySent: return EventKind::DelaySent;
    case RepairEvent::Kind::DelayApplied: return EventKind::DelayApplied;
    case RepairEvent::Kind::SwapApplied: return EventKind::SwapApplied;
  }
  return EventKind::Rescheduled;
}

void write_all(int fd, const std::string& data) {
  const char* p = data.data();
  std::size_t left = data.size();
  while (left > 0) {
    const ssize_t n = ::write(fd, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw std::runtime_error(std::string("event log write failed: ") +
                               std::strerror(errno));
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
}

}  // namespace

const char* to_string(EventKind kind) {
  return kKindNames[static_cast<int>(kind)];
}

std::optional<EventKind> parse_event_kind(std::string_view name) {
  for (int i = 0; i < 7; ++i) {
    if (name == kKindNames[i]) return static_cast<EventKind>(i);
  }
  return std::nullopt;
}

LogError::LogError(const std::string& what, std::int64_t last_valid_seq)
    : std::runtime_error(what + " (last valid seq " +
                         std::to_string(last_valid_seq) + ")"),
      last_valid_seq_(last_valid_seq) {}

EventLog::EventLog(const std::filesystem::path& path) {
  fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_APPEND, 0644);
  if (fd_ < 0) {
    throw std::runtime_error("cannot open event log '" + path.string() +
                             "': " + std::strerror(errno));
  }
}

EventLog::~EventLog() {
  if (fd_ >= 0) {
    ::fsync(fd_);
    ::close(fd_);
  }
}

const EventLogEntry& EventLog::append(Time t, EventKind kind, json payload) {
  EventLogEntry e;
  e.seq = static_cast<std::int64_t>(entries_.size()) + 1;
  e.t = t;
  e.kind = kind;
  e.payload = std::move(payload);
  entries_.push_back(std::move(e));
  if (fd_ >= 0) {
    write_all(fd_, to_json_line(entries_.back()) + "\n");
    if (kind == EventKind::RepairDone && ::fsync(fd_) != 0) {
      throw std::runtime_error(std::string("event log fsync failed: ") +
                               std::strerror(errno));
    }
  }
  return entries_.back();
}

std::string EventLog::to_jsonl() const {
  std::string out;
  for (const auto& e : entries_) out += to_json_line(e) + "\n";
  return out;
}

std::string to_json_line(const EventLogEntry& entry) {
  json j;
  j["seq"] = entry.seq;
  j["t"] = entry.t;
  j["kind"] = to_string(entry.kind);
  j["payload"] = entry.payload;
  return j.dump();
}

std::vector<EventLogEntry> parse_event_log(std::string_view text) {
  std::vector<EventLogEntry> out;
  std::int64_t last = 0;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw LogError(where + "malformed JSON", last);
    }
    EventLogEntry e;
    try {
      e.seq = j.at("seq").get<std::int64_t>();
      e.t = j.at("t").get<Time>();
      const auto kind = parse_event_kind(j.at("kind").get<std::string>());
      if (!kind) throw LogError(where + "unknown kind", last);
      e.kind = *kind;
      e.payload = j.at("payload");
    } catch (const json::exception& ex) {
      throw LogError(where + "missing or mistyped field (" + ex.what() + ")",
                     last);
    }
    if (e.seq != last + 1) {
      throw LogError(where + "seq gap: expected " + std::to_string(last + 1) +
                         ", found " + std::to_string(e.seq),
                     last);
    }
    last = e.seq;
    out.push_back(std::move(e));
  }
  return out;
}

Schedule replay(const std::vector<EventLogEntry>& log, const Schedule& base) {
  Schedule s = base;
  std::int64_t last = 0;
  auto find = [&](int job, int step) -> ScheduledOp* {
    for (auto& op : s.ops) {
      if (op.job == job && op.step == step) return &op;
    }
    return nullptr;
  };
  for (const auto& e : log) {
    if (e.seq != last + 1) {
      throw LogError("seq gap before seq " + std::to_string(e.seq), last);
    }
    try {
      if (e.kind == EventKind::Scheduled || e.kind == EventKind::Rescheduled ||
          e.kind == EventKind::DelayApplied) {
        const auto& p = e.payload;
        ScheduledOp op;
        op.job = p.at("job").get<int>();
        op.step = p.at("step").get<int>() - 1;
        op.machine = p.at("machine").get<int>();
        op.start = p.at("start").get<Time>();
        op.end = p.at("end").get<Time>();
        op.carried = p.value("carried", Time{0});
        ScheduledOp* cur = find(op.job, op.step);
        if (e.kind == EventKind::Scheduled) {
          if (cur) {
            *cur = op;
          } else {
            s.ops.push_back(op);
          }
        } else {
          if (!cur || cur->machine != op.machine) {
            throw LogError("seq " + std::to_string(e.seq) +
                               " retimes an operation that was never scheduled",
                           last);
          }
          *cur = op;
        }
      } else if (e.kind == EventKind::RepairDone) {
        const Time expected = e.payload.at("makespan").get<Time>();
        if (makespan(s) != expected) {
          throw LogError("seq " + std::to_string(e.seq) +
                             ": replayed makespan " +
                             std::to_string(makespan(s)) +
                             " differs from logged " +
                             std::to_string(expected),
                         last);
        }
      }
    } catch (const nlohmann::json::exception& ex) {
      throw LogError("seq " + std::to_string(e.seq) + ": bad payload (" +
                         ex.what() + ")",
                     last);
    }
    last = e.seq;
  }
  s.sort_canonical();
  return s;
}

ScenarioReport run_scenario(const Instance& instance, const Schedule& base,
                            const DisruptionScenario& scenario,
                            const RepairConfig& config, EventLog* log) {
  const ValidationReport input = validate_schedule(instance, base);
  if (!input.ok) {
    throw InvalidArgument("base schedule is invalid: " +
                          input.violations.front().detail);
  }
  ScenarioReport report;
  report.instance = instance.name;
  report.seed = scenario.seed;
  report.base_makespan = makespan(base);
  report.schedule = base;
  report.schedule.sort_canonical();

  if (log) {
    for (const auto& op : report.schedule.ops) {
      log->append(0, EventKind::Scheduled, op_payload(op));
    }
  }

  std::vector<Breakdown> events = scenario.events;
  std::stable_sort(events.begin(), events.end(),
                   [](const Breakdown& a, const Breakdown& b) {
                     return a.t_d < b.t_d;
                   });
  for (const auto& b : events) {
    if (log) {
      json p;
      p["machine"] = b.machine;
      p["t_d"] = b.t_d;
      p["delta_t"] = b.delta_t;
      log->append(b.t_d, EventKind::BreakdownStart, std::move(p));
    }
    RepairOutcome out =
        repair(instance, report.schedule, b, config, report.windows);
    if (log) {
      for (const auto& ev : out.events) {
        log->append(b.t_d, map_kind(ev.kind), event_payload(ev));
      }
    }
    report.windows = out.windows;
    report.schedule = std::move(out.schedule);
    report.metrics.wip_moves += out.wip_moves;
    report.metrics.messages += out.messages;
    const Time mk = makespan(report.schedule);
    report.per_event.push_back(
        {b, mk, out.wip_moves, out.messages, out.phase_trace});
    const ValidationReport check =
        validate_schedule(instance, report.schedule, report.windows);
    if (!check.ok) {
      throw InvariantError("schedule invalid after breakdown at t=" +
                           std::to_string(b.t_d) + ": " +
                           check.violations.front().detail);
    }
    if (log) {
      json p;
      p["makespan"] = mk;
      p["wip_moves"] = out.wip_moves;
      p["messages"] = out.messages;
      log->append(b.t_d, EventKind::RepairDone, std::move(p));
    }
  }
  report.metrics.makespan = makespan(report.schedule);
  return report;
}

}  // namespace shopfloor
