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

#include "shopfloor/core.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace shopfloor {

std::size_t Instance::num_operations() const {
  std::size_t n = 0;
  for (const auto& route : jobs) n += route.size();
  return n;
}

int Instance::max_ops_per_job() const {
  std::size_t n = 0;
  for (const auto& route : jobs) n = std::max(n, route.size());
  return static_cast<int>(n);
}

Time Instance::job_work(int job) const {
  Time total = 0;
  for (const auto& op : jobs.at(job)) total += op.duration;
  return total;
}

void Instance::check() const {
  if (num_machines < 0) throw InvalidArgument("negative machine count");
  for (int j = 0; j < num_jobs(); ++j) {
    const auto& route = jobs[j];
    for (int s = 0; s < static_cast<int>(route.size()); ++s) {
      const Operation& op = route[s];
      if (op.job != j || op.step != s) {
        throw InvalidArgument("operation (" + std::to_string(op.job) + "," +
                              std::to_string(op.step) +
                              ") stored at job " + std::to_string(j) +
                              " step " + std::to_string(s));
      }
      if (op.machine < 0 || op.machine >= num_machines) {
        throw InvalidArgument("job " + std::to_string(j) + " step " +
                              std::to_string(s) + " uses machine " +
                              std::to_string(op.machine) + " outside [0," +
                              std::to_string(num_machines) + ")");
      }
      if (op.duration < 0) {
        throw InvalidArgument("job " + std::to_string(j) + " step " +
                              std::to_string(s) + " has negative duration");
      }
    }
  }
}

bool same_content(const Instance& a, const Instance& b) {
  return a.num_machines == b.num_machines && a.jobs == b.jobs;
}

void Schedule::sort_canonical() {
  std::sort(ops.begin(), ops.end(),
            [](const ScheduledOp& x, const ScheduledOp& y) {
              return std::tie(x.job, x.step, x.start) <
                     std::tie(y.job, y.step, y.start);
            });
}

const ScheduledOp* Schedule::find(int job, int step) const {
  for (const auto& op : ops) {
    if (op.job == job && op.step == step) return &op;
  }
  return nullptr;
}

Time makespan(const Schedule& schedule) {
  Time m = 0;
  for (const auto& op : schedule.ops) m = std::max(m, op.end);
  return m;
}

Time lower_bound(const Instance& instance) {
  std::vector<Time> load(std::max(instance.num_machines, 0), 0);
  Time best = 0;
  for (int j = 0; j < instance.num_jobs(); ++j) {
    best = std::max(best, instance.job_work(j));
    for (const auto& op : instance.jobs[j]) load.at(op.machine) += op.duration;
  }
  for (Time l : load) best = std::max(best, l);
  return best;
}

Schedule schedule_from_starts(const Instance& instance,
                              const std::vector<Time>& starts) {
  if (starts.size() != instance.num_operations()) {
    throw InvalidArgument("start vector does not match operation count");
  }
  Schedule s;
  s.ops.reserve(starts.size());
  std::size_t k = 0;
  for (const auto& route : instance.jobs) {
    for (const auto& op : route) {
      s.ops.push_back({op.job, op.step, op.machine, starts[k],
                       starts[k] + op.duration, 0});
      ++k;
    }
  }
  return s;
}

const char* to_string(OpStatus status) {
  switch (status) {
    case OpStatus::Waiting: return "waiting";
    case OpStatus::InProgress: return "in_progress";
    case OpStatus::Completed: return "completed";
  }
  return "?";
}

// --- ExecutionTracker -------------------------------------------------------

int ExecutionTracker::job_length(int job) const {
  return static_cast<int>(job_offset_.at(job + 1) - job_offset_.at(job));
}

bool ExecutionTracker::has(int job, int step) const {
  return job >= 0 && job < num_jobs() && step >= 0 && step < job_length(job);
}

std::size_t ExecutionTracker::index(int job, int step) const {
  if (!has(job, step)) {
    throw InvalidArgument("no operation job=" + std::to_string(job) +
                          " step=" + std::to_string(step));
  }
  return job_offset_[job] + static_cast<std::size_t>(step);
}

void ExecutionTracker::set_queue(int machine, std::vector<std::size_t> order) {
  auto& q = queues_.at(machine);
  if (order.size() != q.size()) {
    throw InvalidArgument("queue reorder changes queue length");
  }
  q = std::move(order);
  for (std::size_t p = 0; p < q.size(); ++p) queue_pos_.at(q[p]) = p;
}

std::size_t ExecutionTracker::queue_position(std::size_t idx) const {
  return queue_pos_.at(idx);
}

std::optional<std::size_t> ExecutionTracker::job_predecessor(
    std::size_t idx) const {
  const auto& op = entries_.at(idx).op;
  if (op.step == 0) return std::nullopt;
  return idx - 1;
}

std::optional<std::size_t> ExecutionTracker::job_successor(
    std::size_t idx) const {
  const auto& op = entries_.at(idx).op;
  if (op.step + 1 >= job_length(op.job)) return std::nullopt;
  return idx + 1;
}

Window ExecutionTracker::add_window(const Window& window) {
  if (window.machine < 0 || window.machine >= num_machines()) {
    throw InvalidArgument("window machine out of range");
  }
  Window merged = window;
  std::vector<Window> kept;
  kept.reserve(windows_.size() + 1);
  for (const auto& w : windows_) {
    if (w.machine == merged.machine && w.start <= merged.end &&
        merged.start <= w.end) {
      merged.start = std::min(merged.start, w.start);
      merged.end = std::max(merged.end, w.end);
    } else {
      kept.push_back(w);
    }
  }
  kept.push_back(merged);
  std::sort(kept.begin(), kept.end(), [](const Window& a, const Window& b) {
    return std::tie(a.machine, a.start) < std::tie(b.machine, b.start);
  });
  windows_ = std::move(kept);
  return merged;
}

Time ExecutionTracker::earliest_clear(int machine, Time from, Time duration,
                                      Time lead) const {
  Time s = from;
  // Windows are sorted by start per machine, so one forward sweep suffices.
  for (const auto& w : windows_) {
    if (w.machine != machine || w.end <= w.start) continue;
    const Time busy_from = s - lead;
    const Time busy_to = s + duration;
    const bool empty_interval = busy_to <= busy_from;
    if (!empty_interval && busy_from < w.end && w.start < busy_to) {
      s = w.end + lead;
    }
  }
  return s;
}

Time ExecutionTracker::makespan() const {
  Time m = 0;
  for (const auto& e : entries_) m = std::max(m, e.op.end);
  return m;
}

Schedule ExecutionTracker::to_schedule() const {
  Schedule s;
  s.ops.reserve(entries_.size());
  for (const auto& e : entries_) s.ops.push_back(e.op);
  return s;
}

void ExecutionTracker::rebuild_positions() {
  queue_pos_.assign(entries_.size(), 0);
  for (const auto& q : queues_) {
    for (std::size_t p = 0; p < q.size(); ++p) queue_pos_[q[p]] = p;
  }
}

ExecutionTracker tracker_from_schedule(const Instance& instance,
                                       const Schedule& schedule) {
  ExecutionTracker t;
  t.queues_.assign(std::max(instance.num_machines, 0), {});
  t.job_offset_.assign(1, 0);
  for (const auto& route : instance.jobs) {
    t.job_offset_.push_back(t.job_offset_.back() + route.size());
  }
  t.entries_.resize(instance.num_operations());
  std::vector<char> seen(t.entries_.size(), 0);
  for (const auto& op : schedule.ops) {
    if (!t.has(op.job, op.step)) {
      throw InvalidArgument("schedule names unknown operation job=" +
                            std::to_string(op.job) +
                            " step=" + std::to_string(op.step));
    }
    const std::size_t idx = t.index(op.job, op.step);
    if (seen[idx]) {
      throw InvalidArgument("operation scheduled twice: job=" +
                            std::to_string(op.job) +
                            " step=" + std::to_string(op.step));
    }
    seen[idx] = 1;
    if (op.machine != instance.op(op.job, op.step).machine) {
      throw InvalidArgument("operation on wrong machine: job=" +
                            std::to_string(op.job) +
                            " step=" + std::to_string(op.step));
    }
    TrackerEntry& e = t.entries_[idx];
    e.op = op;
    e.duration = op.end - op.start;
    e.ref_start = op.start;
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw InvalidArgument("schedule is incomplete");
  }
  for (std::size_t i = 0; i < t.entries_.size(); ++i) {
    t.queues_.at(t.entries_[i].op.machine).push_back(i);
  }
  for (auto& q : t.queues_) {
    std::sort(q.begin(), q.end(), [&](std::size_t a, std::size_t b) {
      const auto& x = t.entries_[a].op;
      const auto& y = t.entries_[b].op;
      return std::tie(x.start, x.job, x.step) <
             std::tie(y.start, y.job, y.step);
    });
  }
  t.rebuild_positions();
  return t;
}

Instance demo_5x3() {
  // Routes as (machine, duration); jobs J1..J5 map to ids 0..4.
  const std::vector<std::vector<std::pair<int, Time>>> routes = {
      {{0, 3}, {1, 2}, {2, 2}},
      {{0, 2}, {2, 1}, {1, 4}},
      {{1, 4}, {2, 3}, {0, 2}},
      {{2, 2}, {0, 1}, {1, 3}},
      {{1, 2}, {0, 4}, {2, 1}},
  };
  Instance inst;
  inst.name = "demo_5x3";
  inst.num_machines = 3;
  for (int j = 0; j < static_cast<int>(routes.size()); ++j) {
    std::vector<Operation> route;
    for (int s = 0; s < static_cast<int>(routes[j].size()); ++s) {
      route.push_back({j, s, routes[j][s].first, routes[j][s].second});
    }
    inst.jobs.push_back(std::move(route));
  }
  return inst;
}

Schedule demo_5x3_schedule() {
  // Starts in (job, step) order.
  const std::vector<Time> starts = {3,  14, 17,   // J1
                                    0,  2,  3,    // J2
                                    10, 14, 17,   // J3
                                    0,  2,  7,    // J4
                                    0,  6,  10};  // J5
  return schedule_from_starts(demo_5x3(), starts);
}

}  // namespace shopfloor
