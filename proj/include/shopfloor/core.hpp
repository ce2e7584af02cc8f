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

#ifndef SHOPFLOOR_CORE_HPP_
#define SHOPFLOOR_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shopfloor {

// Discrete time. Every benchmark and every Gantt chart we reproduce is
// integral, so there is no fractional time anywhere in the engine.
using Time = std::int64_t;

// Raised when an argument violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an internal invariant is found broken (a bug, not bad input).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Operation {
  int job = 0;
  int step = 0;  // 0-based; external formats print step + 1
  int machine = 0;
  Time duration = 0;

  friend bool operator==(const Operation&, const Operation&) = default;
};

// J jobs on M machines; jobs[j] is the ordered route of job j.
struct Instance {
  std::string name;
  int num_machines = 0;
  std::vector<std::vector<Operation>> jobs;

  int num_jobs() const { return static_cast<int>(jobs.size()); }
  std::size_t num_operations() const;
  int max_ops_per_job() const;
  const Operation& op(int job, int step) const { return jobs.at(job).at(step); }
  bool is_terminal(int job, int step) const {
    return step + 1 == static_cast<int>(jobs.at(job).size());
  }
  // Total processing time of a job.
  Time job_work(int job) const;

  // Checks ids, step numbering and durations; throws InvalidArgument.
  void check() const;
};

// Equality on content: the name is metadata and is not compared.
bool same_content(const Instance& a, const Instance& b);

struct ScheduledOp {
  int job = 0;
  int step = 0;
  int machine = 0;
  Time start = 0;
  Time end = 0;
  // Units processed before an interruption under ResumeRemaining.
  Time carried = 0;

  friend bool operator==(const ScheduledOp&, const ScheduledOp&) = default;
};

// Canonical order of ops is (job, step); see sort_canonical().
struct Schedule {
  std::vector<ScheduledOp> ops;

  bool empty() const { return ops.empty(); }
  void sort_canonical();
  // Linear search; returns nullptr when absent.
  const ScheduledOp* find(int job, int step) const;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

Time makespan(const Schedule& schedule);

// max(heaviest machine load, longest job).
Time lower_bound(const Instance& instance);

// Builds a schedule from per-operation start times laid out in (job, step)
// order, i.e. starts[k] belongs to the k-th operation of the flattened jobs.
Schedule schedule_from_starts(const Instance& instance,
                              const std::vector<Time>& starts);

enum class OpStatus : int { Waiting = 0, InProgress = 1, Completed = 2 };

const char* to_string(OpStatus status);

enum class RestartPolicy { RestartFull, ResumeRemaining };

struct RepairConfig {
  // Duration of the staging move charged to an operation pulled earlier than
  // planned. It occupies its machine just before the operation starts.
  Time t_wip = 1;
  // Reorder evaluations allowed per machine queue; nullopt means one per job.
  std::optional<int> swap_budget;
  RestartPolicy restart_policy = RestartPolicy::RestartFull;

  int resolved_swap_budget(int num_jobs) const {
    return swap_budget ? *swap_budget : num_jobs;
  }
};

struct Metrics {
  Time makespan = 0;
  std::int64_t wip_moves = 0;
  std::int64_t messages = 0;
  std::optional<double> gap_percent;
};

// Downtime of one machine over the half-open interval [start, end).
struct Window {
  int machine = 0;
  Time start = 0;
  Time end = 0;

  friend bool operator==(const Window&, const Window&) = default;
};

// Machine `machine` is down over [t_d, t_d + delta_t).
struct Breakdown {
  int machine = 0;
  Time t_d = 0;
  Time delta_t = 0;

  Window window() const { return {machine, t_d, t_d + delta_t}; }
  friend bool operator==(const Breakdown&, const Breakdown&) = default;
};

struct TrackerEntry {
  ScheduledOp op;
  Time duration = 0;  // processing time still owed at op.start
  OpStatus status = OpStatus::Waiting;
  bool frozen = false;       // started before the disruption; never moved
  bool interrupted = false;  // was running on the broken machine
  Time ref_start = 0;        // planned start before queue reordering
  bool wip_charged = false;  // advanced and its staging move was not masked
};

// Execution tracker: one entry per operation plus per-machine queues ordered
// by start time.
class ExecutionTracker {
 public:
  ExecutionTracker() = default;

  std::size_t size() const { return entries_.size(); }
  int num_jobs() const { return static_cast<int>(job_offset_.size()) - 1; }
  int num_machines() const { return static_cast<int>(queues_.size()); }
  int job_length(int job) const;

  std::size_t index(int job, int step) const;
  bool has(int job, int step) const;

  TrackerEntry& entry(std::size_t idx) { return entries_.at(idx); }
  const TrackerEntry& entry(std::size_t idx) const { return entries_.at(idx); }
  TrackerEntry& at(int job, int step) { return entries_[index(job, step)]; }
  const TrackerEntry& at(int job, int step) const {
    return entries_[index(job, step)];
  }
  const std::vector<TrackerEntry>& entries() const { return entries_; }

  const std::vector<std::size_t>& queue(int machine) const {
    return queues_.at(machine);
  }
  // Replaces the processing order of one machine. `order` must be a
  // permutation of the current queue.
  void set_queue(int machine, std::vector<std::size_t> order);
  // Position of an entry inside its machine queue.
  std::size_t queue_position(std::size_t idx) const;

  // Job neighbours; nullopt at the ends of the route.
  std::optional<std::size_t> job_predecessor(std::size_t idx) const;
  std::optional<std::size_t> job_successor(std::size_t idx) const;

  const std::vector<Window>& windows() const { return windows_; }
  // Adds a downtime window, merging with overlapping or touching windows of
  // the same machine. Returns the merged window that now covers it.
  Window add_window(const Window& window);
  // Earliest s >= from such that [s - lead, s + duration) avoids every window
  // on the machine.
  Time earliest_clear(int machine, Time from, Time duration,
                      Time lead = 0) const;

  Time makespan() const;
  Schedule to_schedule() const;

 private:
  friend ExecutionTracker tracker_from_schedule(const Instance&,
                                                const Schedule&);
  std::vector<TrackerEntry> entries_;
  std::vector<std::size_t> job_offset_{0};
  std::vector<std::vector<std::size_t>> queues_;
  std::vector<std::size_t> queue_pos_;
  std::vector<Window> windows_;

  void rebuild_positions();
};

// All labels Waiting; queues ascending by start, ties by (job, step).
// Throws InvalidArgument when the schedule does not cover the instance.
ExecutionTracker tracker_from_schedule(const Instance& instance,
                                       const Schedule& schedule);

// Built-in 5x3 demonstration instance ("demo:5x3") and its static schedule
// with makespan 19.
Instance demo_5x3();
Schedule demo_5x3_schedule();

}  // namespace shopfloor

#endif  // SHOPFLOOR_CORE_HPP_
