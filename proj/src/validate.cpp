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

#include "shopfloor/validate.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace shopfloor {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Precedence: return "Precedence";
    case ViolationKind::Capacity: return "Capacity";
    case ViolationKind::Completeness: return "Completeness";
    case ViolationKind::BreakdownOverlap: return "BreakdownOverlap";
    case ViolationKind::DurationMismatch: return "DurationMismatch";
    case ViolationKind::NegativeStart: return "NegativeStart";
  }
  return "?";
}

std::string ValidationReport::to_text() const {
  if (ok) return "ok\n";
  std::ostringstream out;
  for (const auto& v : violations) {
    out << to_string(v.kind) << " job=" << v.job << " step=" << v.step + 1
        << " machine=" << v.machine << ": " << v.detail << '\n';
  }
  return out.str();
}

namespace {

std::string label(const ScheduledOp& op) {
  return "J" + std::to_string(op.job) + "(" + std::to_string(op.step + 1) +
         ")";
}

std::string interval(Time a, Time b) {
  return "[" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

ValidationReport validate_schedule(const Instance& instance,
                                   const Schedule& schedule,
                                   const std::vector<Window>& windows) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, const ScheduledOp& op, std::string d) {
    report.violations.push_back({kind, op.job, op.step, op.machine,
                                 std::move(d)});
  };

  // Completeness: map every scheduled op onto the instance.
  std::vector<std::vector<const ScheduledOp*>> placed(instance.jobs.size());
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    placed[j].assign(instance.jobs[j].size(), nullptr);
  }
  std::vector<const ScheduledOp*> known;
  known.reserve(schedule.ops.size());
  for (const auto& op : schedule.ops) {
    if (op.job < 0 || op.job >= instance.num_jobs() || op.step < 0 ||
        op.step >= static_cast<int>(instance.jobs[op.job].size())) {
      add(ViolationKind::Completeness, op, "operation not in instance");
      continue;
    }
    if (placed[op.job][op.step]) {
      add(ViolationKind::Completeness, op, label(op) + " scheduled twice");
      continue;
    }
    const Operation& ref = instance.op(op.job, op.step);
    if (op.machine != ref.machine) {
      add(ViolationKind::Completeness, op,
          label(op) + " placed on machine " + std::to_string(op.machine) +
              ", route says " + std::to_string(ref.machine));
      continue;
    }
    placed[op.job][op.step] = &op;
    known.push_back(&op);
  }
  for (const auto& route : instance.jobs) {
    for (const auto& o : route) {
      if (!placed[o.job][o.step]) {
        report.violations.push_back(
            {ViolationKind::Completeness, o.job, o.step, o.machine,
             "J" + std::to_string(o.job) + "(" + std::to_string(o.step + 1) +
                 ") missing"});
      }
    }
  }

  for (const ScheduledOp* op : known) {
    const Operation& ref = instance.op(op->job, op->step);
    if (op->start < 0) {
      add(ViolationKind::NegativeStart, *op,
          label(*op) + " starts at " + std::to_string(op->start));
    }
    const Time expected = ref.duration - op->carried;
    if (op->carried < 0 || op->carried > ref.duration ||
        op->end - op->start != expected) {
      add(ViolationKind::DurationMismatch, *op,
          label(*op) + " lasts " + std::to_string(op->end - op->start) +
              ", expected " + std::to_string(expected));
    }
    for (const auto& w : windows) {
      if (w.machine != op->machine || op->end <= op->start) continue;
      if (op->start < w.end && w.start < op->end) {
        add(ViolationKind::BreakdownOverlap, *op,
            label(*op) + " " + interval(op->start, op->end) +
                " overlaps downtime " + interval(w.start, w.end));
      }
    }
  }

  for (std::size_t j = 0; j < placed.size(); ++j) {
    for (std::size_t s = 1; s < placed[j].size(); ++s) {
      const ScheduledOp* prev = placed[j][s - 1];
      const ScheduledOp* cur = placed[j][s];
      if (prev && cur && cur->start < prev->end) {
        add(ViolationKind::Precedence, *cur,
            label(*cur) + " starts at " + std::to_string(cur->start) +
                " before " + label(*prev) + " ends at " +
                std::to_string(prev->end));
      }
    }
  }

  std::vector<std::vector<const ScheduledOp*>> by_machine(
      std::max(instance.num_machines, 0));
  for (const ScheduledOp* op : known) {
    if (op->end > op->start) by_machine[op->machine].push_back(op);
  }
  for (auto& ops : by_machine) {
    std::sort(ops.begin(), ops.end(),
              [](const ScheduledOp* a, const ScheduledOp* b) {
                return std::tie(a->start, a->job, a->step) <
                       std::tie(b->start, b->job, b->step);
              });
    const ScheduledOp* latest = nullptr;
    for (const ScheduledOp* op : ops) {
      if (latest && op->start < latest->end) {
        add(ViolationKind::Capacity, *op,
            label(*op) + " " + interval(op->start, op->end) + " overlaps " +
                label(*latest) + " " + interval(latest->start, latest->end));
      }
      if (!latest || op->end > latest->end) latest = op;
    }
  }

  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const Violation& a, const Violation& b) {
                     return std::tie(a.kind, a.job, a.step) <
                            std::tie(b.kind, b.job, b.step);
                   });
  report.ok = report.violations.empty();
  return report;
}

ValidationReport validate_schedule(const Instance& instance,
                                   const Schedule& schedule,
                                   const std::vector<Breakdown>& breakdowns) {
  std::vector<Window> windows;
  windows.reserve(breakdowns.size());
  for (const auto& b : breakdowns) windows.push_back(b.window());
  return validate_schedule(instance, schedule, windows);
}

}  // namespace shopfloor
