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

#include "shopfloor/lrcp.hpp"

#include <algorithm>
#include <optional>

#include "shopfloor/validate.hpp"

namespace shopfloor {

const char* to_string(RepairEvent::Kind kind) {
  switch (kind) {
    case RepairEvent::Kind::Rescheduled: return "Rescheduled";
    case RepairEvent::Kind::DelaySent: return "DelaySent";
    case RepairEvent::Kind::DelayApplied: return "DelayApplied";
    case RepairEvent::Kind::SwapApplied: return "SwapApplied";
  }
  return "?";
}

namespace {

void check_breakdown(const ExecutionTracker& tracker, const Breakdown& b) {
  if (b.machine < 0 || b.machine >= tracker.num_machines()) {
    throw InvalidArgument("breakdown machine " + std::to_string(b.machine) +
                          " out of range");
  }
  if (b.t_d < 0) throw InvalidArgument("breakdown time must be >= 0");
  if (b.delta_t < 1) throw InvalidArgument("breakdown duration must be >= 1");
}

void record_timing(RepairContext& ctx, RepairEvent::Kind kind,
                   const ScheduledOp& op) {
  if (!ctx.record) return;
  RepairEvent ev;
  ev.kind = kind;
  ev.phase = ctx.phase;
  ev.job = op.job;
  ev.step = op.step;
  ev.machine = op.machine;
  ev.start = op.start;
  ev.end = op.end;
  ev.carried = op.carried;
  ctx.events.push_back(ev);
}

// Notifies the machine of the job successor that `idx` now ends later.
void notify(const ExecutionTracker& tracker, RepairContext& ctx,
            std::size_t idx) {
  const auto succ = tracker.job_successor(idx);
  if (!succ || tracker.entry(*succ).status == OpStatus::Completed) return;
  const ScheduledOp& op = tracker.entry(idx).op;
  ctx.outbox.push_back({op.job, op.step, op.end});
  ++ctx.messages_sent;
  if (ctx.record) {
    RepairEvent ev;
    ev.kind = RepairEvent::Kind::DelaySent;
    ev.phase = ctx.phase;
    ev.job = op.job;
    ev.step = op.step;
    ev.machine = op.machine;
    ev.new_end = op.end;
    ev.to_machine = tracker.entry(*succ).op.machine;
    ctx.events.push_back(ev);
  }
}

// Recomputes the start of one op from its job and queue predecessors.
// Returns true when the start moved.
bool retime(ExecutionTracker& tracker, std::size_t idx, CascadeMode mode,
            const RepairContext& ctx) {
  TrackerEntry& e = tracker.entry(idx);
  if (e.frozen) return false;
  const int m = e.op.machine;
  const Time t_d = ctx.breakdown.t_d;
  const Time wip = ctx.config.t_wip;
  const auto pred = tracker.job_predecessor(idx);
  const Time pred_end = pred ? tracker.entry(*pred).op.end : 0;
  const std::size_t pos = tracker.queue_position(idx);
  const TrackerEntry* prev =
      pos > 0 ? &tracker.entry(tracker.queue(m)[pos - 1]) : nullptr;
  const Time prev_end = prev ? prev->op.end : 0;
  const Time lower = std::max({t_d, pred_end, prev_end});

  Time s = 0;
  if (mode == CascadeMode::Push) {
    s = tracker.earliest_clear(m, std::max(lower, e.op.start), e.duration);
  } else {
    const Time e0 = tracker.earliest_clear(m, lower, e.duration);
    bool charged = false;
    if (e0 >= e.ref_start) {
      s = e0;
    } else {
      const bool flow = pred && pred_end == e0;
      const bool overlap = prev && prev->op.end == e0 &&
                           prev->op.start <= e0 - wip &&
                           (!pred || pred_end <= e0 - wip) && e0 - wip >= t_d;
      if (flow || overlap) {
        s = e0;
      } else {
        const Time from = std::max({lower, prev_end + wip, t_d + wip});
        const Time staged = tracker.earliest_clear(m, from, e.duration, wip);
        if (staged < e.ref_start) {
          s = staged;
          charged = true;
        } else {
          s = tracker.earliest_clear(m, std::max(lower, e.ref_start),
                                     e.duration);
        }
      }
    }
    e.wip_charged = charged;
  }
  if (s == e.op.start && e.op.end == s + e.duration) return false;
  e.op.start = s;
  e.op.end = s + e.duration;
  return true;
}

void retime_queue(ExecutionTracker& tracker, int machine, std::size_t from,
                  CascadeMode mode, RepairContext& ctx,
                  RepairEvent::Kind kind) {
  const auto& q = tracker.queue(machine);
  for (std::size_t p = from; p < q.size(); ++p) {
    const std::size_t idx = q[p];
    if (retime(tracker, idx, mode, ctx)) {
      record_timing(ctx, kind, tracker.entry(idx).op);
      notify(tracker, ctx, idx);
    }
  }
}

void check_positions(const ExecutionTracker& tracker, int machine,
                     std::size_t pos_a, std::size_t pos_b) {
  if (machine < 0 || machine >= tracker.num_machines()) {
    throw InvalidArgument("machine " + std::to_string(machine) +
                          " out of range");
  }
  const std::size_t n = tracker.queue(machine).size();
  if (!(pos_a < pos_b && pos_b < n)) {
    throw InvalidArgument("queue positions " + std::to_string(pos_a) + "," +
                          std::to_string(pos_b) + " invalid for queue of " +
                          std::to_string(n));
  }
}

// Moves the op at pos_a to just after the op at pos_b, then retimes the
// affected part of the queue.
void apply_move(ExecutionTracker& tracker, RepairContext& ctx, int machine,
                std::size_t pos_a, std::size_t pos_b) {
  std::vector<std::size_t> order = tracker.queue(machine);
  const std::size_t moved = order[pos_a];
  order.erase(order.begin() + static_cast<std::ptrdiff_t>(pos_a));
  order.insert(order.begin() + static_cast<std::ptrdiff_t>(pos_b), moved);
  tracker.set_queue(machine, std::move(order));
  retime_queue(tracker, machine, pos_a, CascadeMode::Advance, ctx,
               RepairEvent::Kind::Rescheduled);
}

Time settled_makespan(const ExecutionTracker& tracker,
                      const RepairContext& ctx) {
  if (ctx.outbox.empty()) return tracker.makespan();
  ExecutionTracker copy = tracker;
  RepairContext c = ctx;
  c.record = false;
  c.events.clear();
  phase4_cascade(copy, c, CascadeMode::Advance);
  return copy.makespan();
}

Time eval_against(const ExecutionTracker& tracker, const RepairContext& ctx,
                  int machine, std::size_t pos_a, std::size_t pos_b,
                  Time baseline) {
  ExecutionTracker copy = tracker;
  RepairContext c = ctx;
  c.record = false;
  c.events.clear();
  apply_move(copy, c, machine, pos_a, pos_b);
  phase4_cascade(copy, c, CascadeMode::Advance);
  return copy.makespan() - baseline;
}

}  // namespace

std::vector<std::size_t> phase1_status_update(ExecutionTracker& tracker,
                                              RepairContext& ctx) {
  const Breakdown& b = ctx.breakdown;
  check_breakdown(tracker, b);
  for (std::size_t i = 0; i < tracker.size(); ++i) {
    TrackerEntry& e = tracker.entry(i);
    e.interrupted = false;
    e.wip_charged = false;
    if (e.op.end <= b.t_d) {
      e.status = OpStatus::Completed;
      e.frozen = true;
    } else if (e.op.start <= b.t_d) {
      e.status = OpStatus::InProgress;
      e.interrupted = e.op.machine == b.machine;
      e.frozen = !e.interrupted;
    } else {
      e.status = OpStatus::Waiting;
      e.frozen = false;
    }
  }
  tracker.add_window(b.window());

  std::vector<std::size_t> rescheduled;
  Time prev_end = 0;
  for (std::size_t idx : tracker.queue(b.machine)) {
    TrackerEntry& e = tracker.entry(idx);
    if (!e.frozen) {
      const Time old_start = e.op.start;
      const Time old_duration = e.duration;
      if (e.interrupted &&
          ctx.config.restart_policy == RestartPolicy::ResumeRemaining) {
        e.op.carried += b.t_d - e.op.start;
        e.duration = e.op.end - b.t_d;
      }
      const Time lower = std::max({e.op.start, prev_end, b.t_d});
      const Time s = tracker.earliest_clear(b.machine, lower, e.duration);
      if (s != old_start || e.duration != old_duration) {
        e.op.start = s;
        e.op.end = s + e.duration;
        rescheduled.push_back(idx);
        record_timing(ctx, RepairEvent::Kind::Rescheduled, e.op);
      }
    }
    prev_end = std::max(prev_end, e.op.end);
  }
  return rescheduled;
}

std::vector<DelayNotify> phase2_propagate(
    const ExecutionTracker& tracker, const std::vector<std::size_t>& rescheduled,
    RepairContext& ctx) {
  const std::size_t first = ctx.outbox.size();
  for (std::size_t idx : rescheduled) notify(tracker, ctx, idx);
  return {ctx.outbox.begin() + static_cast<std::ptrdiff_t>(first),
          ctx.outbox.end()};
}

std::int64_t phase4_cascade(ExecutionTracker& tracker, RepairContext& ctx,
                            CascadeMode mode) {
  const std::int64_t n = static_cast<std::int64_t>(tracker.size());
  const std::int64_t cap = 64 * (n + 1) * (n + 1);
  std::int64_t processed = 0;
  while (!ctx.outbox.empty()) {
    const DelayNotify msg = ctx.outbox.front();
    ctx.outbox.pop_front();
    if (++processed > cap) {
      throw InvariantError("delay cascade did not settle");
    }
    if (!tracker.has(msg.job, msg.step)) {
      throw InvalidArgument("DelayNotify names unknown operation job=" +
                            std::to_string(msg.job) +
                            " step=" + std::to_string(msg.step));
    }
    const auto succ = tracker.job_successor(tracker.index(msg.job, msg.step));
    if (!succ) continue;
    if (!retime(tracker, *succ, mode, ctx)) continue;
    const TrackerEntry& target = tracker.entry(*succ);
    record_timing(ctx, RepairEvent::Kind::DelayApplied, target.op);
    notify(tracker, ctx, *succ);
    retime_queue(tracker, target.op.machine,
                 tracker.queue_position(*succ) + 1, mode, ctx,
                 RepairEvent::Kind::DelayApplied);
  }
  return processed;
}

Time eval_swap(const ExecutionTracker& tracker, const RepairContext& ctx,
               int machine, std::size_t pos_a, std::size_t pos_b) {
  check_positions(tracker, machine, pos_a, pos_b);
  return eval_against(tracker, ctx, machine, pos_a, pos_b,
                      settled_makespan(tracker, ctx));
}

Phase3Result phase3_queue_reorder(ExecutionTracker& tracker,
                                  RepairContext& ctx) {
  Phase3Result result;
  const int machines = tracker.num_machines();
  result.evaluations.assign(machines, 0);
  for (std::size_t i = 0; i < tracker.size(); ++i) {
    tracker.entry(i).ref_start = tracker.entry(i).op.start;
  }
  const int budget = ctx.config.resolved_swap_budget(tracker.num_jobs());

  while (true) {
    const Time baseline = settled_makespan(tracker, ctx);
    struct Best {
      Time delta;
      int machine;
      std::size_t pos_a;
      std::size_t pos_b;
    };
    std::optional<Best> best;
    for (int m = 0; m < machines; ++m) {
      const auto& q = tracker.queue(m);
      if (q.size() < 2) continue;
      const std::size_t tail = q.size() - 1;
      for (std::size_t a = 0; a < tail; ++a) {
        if (result.evaluations[m] >= budget) break;
        const TrackerEntry& e = tracker.entry(q[a]);
        if (e.frozen || tracker.job_successor(q[a])) continue;
        ++result.evaluations[m];
        const Time delta = eval_against(tracker, ctx, m, a, tail, baseline);
        if (!best || delta < best->delta) best = Best{delta, m, a, tail};
      }
    }
    if (!best || best->delta >= 0) break;

    const ScheduledOp moved = tracker.entry(tracker.queue(best->machine)[best->pos_a]).op;
    result.swap_log.push_back({best->machine, best->pos_a, best->pos_b,
                               moved.job, moved.step, best->delta});
    if (ctx.record) {
      RepairEvent ev;
      ev.kind = RepairEvent::Kind::SwapApplied;
      ev.phase = ctx.phase;
      ev.job = moved.job;
      ev.step = moved.step;
      ev.machine = best->machine;
      ev.pos_a = best->pos_a;
      ev.pos_b = best->pos_b;
      ev.delta = best->delta;
      ctx.events.push_back(ev);
    }
    apply_move(tracker, ctx, best->machine, best->pos_a, best->pos_b);
  }
  for (const auto& e : tracker.entries()) result.wip_moves += e.wip_charged;
  return result;
}

RepairOutcome repair(const Instance& instance, const Schedule& schedule,
                     const Breakdown& breakdown, const RepairConfig& config,
                     const std::vector<Window>& prior) {
  instance.check();
  if (config.t_wip < 0) throw InvalidArgument("t_wip must be >= 0");
  if (config.swap_budget && *config.swap_budget < 0) {
    throw InvalidArgument("swap budget must be >= 0");
  }
  const ValidationReport input = validate_schedule(instance, schedule, prior);
  if (!input.ok) {
    throw InvalidArgument("input schedule is invalid: " +
                          input.violations.front().detail);
  }
  ExecutionTracker tracker = tracker_from_schedule(instance, schedule);
  check_breakdown(tracker, breakdown);
  for (const auto& w : prior) tracker.add_window(w);
  const std::vector<TrackerEntry> before = tracker.entries();

  RepairContext ctx;
  ctx.breakdown = breakdown;
  ctx.config = config;
  RepairOutcome out;

  ctx.phase = 1;
  const auto rescheduled = phase1_status_update(tracker, ctx);
  for (std::size_t idx : rescheduled) {
    out.broken_machine_shift +=
        tracker.entry(idx).op.start - before[idx].op.start;
  }
  out.phase_trace.push_back({"phase1", tracker.makespan()});

  ctx.phase = 2;
  phase2_propagate(tracker, rescheduled, ctx);
  out.phase_trace.push_back({"phase2", tracker.makespan()});

  ctx.phase = 4;
  phase4_cascade(tracker, ctx, CascadeMode::Push);
  out.phase_trace.push_back({"phase4", tracker.makespan()});

  ctx.phase = 3;
  if (!rescheduled.empty()) {
    Phase3Result p3 = phase3_queue_reorder(tracker, ctx);
    out.swap_log = std::move(p3.swap_log);
    out.evaluations = std::move(p3.evaluations);
  } else {
    out.evaluations.assign(tracker.num_machines(), 0);
  }
  out.phase_trace.push_back({"phase3", tracker.makespan()});

  ctx.phase = 4;
  phase4_cascade(tracker, ctx, CascadeMode::Advance);
  out.phase_trace.push_back({"phase4", tracker.makespan()});

  for (const auto& e : tracker.entries()) {
    out.wip_moves += e.wip_charged;
    out.status.push_back(e.status);
  }
  out.messages = ctx.messages_sent;
  out.windows = tracker.windows();
  out.schedule = tracker.to_schedule();
  out.schedule.sort_canonical();
  out.events = std::move(ctx.events);

  for (std::size_t i = 0; i < before.size(); ++i) {
    const TrackerEntry& now = tracker.entry(i);
    if (now.frozen && now.op != before[i].op) {
      throw InvariantError("started operation was moved by repair");
    }
  }
  const ValidationReport report =
      validate_schedule(instance, out.schedule, out.windows);
  if (!report.ok) {
    throw InvariantError("repaired schedule is invalid: " +
                         report.violations.front().detail);
  }
  return out;
}

}  // namespace shopfloor
