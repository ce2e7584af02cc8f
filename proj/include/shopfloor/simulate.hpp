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

#ifndef SHOPFLOOR_SIMULATE_HPP_
#define SHOPFLOOR_SIMULATE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "shopfloor/core.hpp"
#include "shopfloor/lrcp.hpp"

namespace shopfloor {

struct DisruptionScenario {
  std::uint64_t seed = 0;
  std::vector<Breakdown> events;  // ascending t_d

  friend bool operator==(const DisruptionScenario&,
                         const DisruptionScenario&) = default;
};

// Draws from std::mt19937_64(seed), per event in this order:
//   machine = rng() % M
//   t_d     = rng() % H, H the SPT makespan of the instance
//   delta_t = min_dur + rng() % (max_dur - min_dur + 1)
// then stable-sorts by t_d.
DisruptionScenario generate_scenario(const Instance& instance,
                                     std::uint64_t seed, int n_failures,
                                     Time min_dur, Time max_dur);

enum class EventKind {
  Scheduled,
  BreakdownStart,
  Rescheduled,
  DelaySent,
  DelayApplied,
  SwapApplied,
  RepairDone,
};

const char* to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view name);

struct EventLogEntry {
  std::int64_t seq = 0;
  Time t = 0;
  EventKind kind = EventKind::Scheduled;
  nlohmann::ordered_json payload;
};

// Corrupt or truncated log. last_valid_seq is 0 when nothing was valid.
class LogError : public std::runtime_error {
 public:
  LogError(const std::string& what, std::int64_t last_valid_seq);
  std::int64_t last_valid_seq() const { return last_valid_seq_; }

 private:
  std::int64_t last_valid_seq_;
};

// Append-only log with seq starting at 1. With a file sink every entry is
// written as one JSON line; the file is fsync'ed after RepairDone.
class EventLog {
 public:
  EventLog() = default;
  explicit EventLog(const std::filesystem::path& path);
  ~EventLog();
  EventLog(const EventLog&) = delete;
  EventLog& operator=(const EventLog&) = delete;

  const EventLogEntry& append(Time t, EventKind kind,
                              nlohmann::ordered_json payload);
  const std::vector<EventLogEntry>& entries() const { return entries_; }
  std::string to_jsonl() const;

 private:
  std::vector<EventLogEntry> entries_;
  int fd_ = -1;
};

// {"seq":..,"t":..,"kind":..,"payload":{..}}
std::string to_json_line(const EventLogEntry& entry);

// Parses line-delimited JSON; throws LogError on malformed lines, unknown
// kinds or seq gaps.
std::vector<EventLogEntry> parse_event_log(std::string_view text);

// Rebuilds the final schedule from Scheduled entries (on top of `base`)
// and the timing payloads of Rescheduled and DelayApplied entries.
Schedule replay(const std::vector<EventLogEntry>& log,
                const Schedule& base = {});

struct EventOutcome {
  Breakdown breakdown;
  Time makespan_after = 0;
  std::int64_t wip_moves = 0;
  std::int64_t messages = 0;
  std::vector<PhaseMark> phase_trace;
};

struct ScenarioReport {
  std::string instance;
  std::uint64_t seed = 0;
  Time base_makespan = 0;
  Metrics metrics;
  std::vector<EventOutcome> per_event;
  std::vector<Window> windows;
  Schedule schedule;
};

// Repairs each breakdown in turn, carrying earlier downtime forward.
// Throws InvariantError if any intermediate schedule fails validation.
ScenarioReport run_scenario(const Instance& instance, const Schedule& base,
                            const DisruptionScenario& scenario,
                            const RepairConfig& config,
                            EventLog* log = nullptr);

}  // namespace shopfloor

#endif  // SHOPFLOOR_SIMULATE_HPP_
