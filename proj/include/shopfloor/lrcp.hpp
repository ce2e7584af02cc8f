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

// Local reactive repair of a running schedule after a machine breakdown.
//
// Each machine acts as an agent owning its queue. A repair runs
//   1. status update: label ops, freeze started work, clear the window
//   2. propagation: the broken machine notifies downstream machines
//   4. cascade (push): notified machines delay successors until quiet
//   3. queue reorder: defer terminal ops to the queue tail when it pays
//   4. cascade (advance): reorder effects reach the other machines
// Every DelayNotify sent is counted once.

#ifndef SHOPFLOOR_LRCP_HPP_
#define SHOPFLOOR_LRCP_HPP_

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "shopfloor/core.hpp"

namespace shopfloor {

struct DelayNotify {
  int job = 0;
  int step = 0;  // the delayed op; its successor step + 1 is the target
  Time new_end = 0;

  friend bool operator==(const DelayNotify&, const DelayNotify&) = default;
};

enum class CascadeMode {
  Push,     // ops only move later
  Advance,  // ops settle at their earliest start, paying WIP when pulled in
};

struct RepairEvent {
  enum class Kind { Rescheduled, DelaySent, DelayApplied, SwapApplied };
  Kind kind = Kind::Rescheduled;
  int phase = 0;
  int job = -1;
  int step = -1;
  int machine = -1;
  Time start = 0;
  Time end = 0;
  Time carried = 0;
  Time new_end = 0;       // DelaySent
  int to_machine = -1;    // DelaySent
  std::size_t pos_a = 0;  // SwapApplied
  std::size_t pos_b = 0;
  Time delta = 0;
};

const char* to_string(RepairEvent::Kind kind);

// Mutable state threaded through the phases of one repair.
struct RepairContext {
  Breakdown breakdown;
  RepairConfig config;
  std::deque<DelayNotify> outbox;
  std::int64_t messages_sent = 0;
  int phase = 0;
  bool record = true;
  std::vector<RepairEvent> events;
};

struct SwapRecord {
  int machine = 0;
  std::size_t pos_a = 0;
  std::size_t pos_b = 0;
  int job = 0;
  int step = 0;
  Time delta = 0;
};

struct PhaseMark {
  std::string phase;
  Time makespan = 0;
};

struct Phase3Result {
  std::int64_t wip_moves = 0;
  std::vector<SwapRecord> swap_log;
  std::vector<int> evaluations;  // per machine
};

struct RepairOutcome {
  Schedule schedule;
  std::int64_t wip_moves = 0;
  std::int64_t messages = 0;
  std::vector<PhaseMark> phase_trace;
  std::vector<SwapRecord> swap_log;
  std::vector<int> evaluations;  // per machine
  std::vector<Window> windows;   // downtime known after this repair
  std::vector<OpStatus> status;  // per op in (job, step) order
  Time broken_machine_shift = 0;  // total right shift applied in phase 1
  std::vector<RepairEvent> events;
};

// Phase I. Labels ops, freezes work that started before t_d, registers the
// window and right-shifts the broken machine's queue past it. Returns the
// rescheduled entries in queue order.
std::vector<std::size_t> phase1_status_update(ExecutionTracker& tracker,
                                              RepairContext& ctx);

// Phase II. Queues a DelayNotify for every rescheduled op with a successor.
std::vector<DelayNotify> phase2_propagate(
    const ExecutionTracker& tracker, const std::vector<std::size_t>& rescheduled,
    RepairContext& ctx);

// Phase IV. Drains ctx.outbox in FIFO order; returns messages processed.
std::int64_t phase4_cascade(ExecutionTracker& tracker, RepairContext& ctx,
                            CascadeMode mode);

// Makespan change of moving the op at pos_a to just after pos_b on
// `machine`, after cascading pending and resulting messages, relative to
// cascading the pending messages alone. Pure.
Time eval_swap(const ExecutionTracker& tracker, const RepairContext& ctx,
               int machine, std::size_t pos_a, std::size_t pos_b);

// Phase III. Sets each op's WIP reference to its current start, then
// repeatedly applies the best improving tail deferral of a job-terminal op
// within the per-queue evaluation budget.
Phase3Result phase3_queue_reorder(ExecutionTracker& tracker,
                                  RepairContext& ctx);

// Phases 1, 2, 4, 3, 4. `prior` holds downtime from earlier breakdowns.
// Throws InvalidArgument on bad input and InvariantError if the result
// fails validation.
RepairOutcome repair(const Instance& instance, const Schedule& schedule,
                     const Breakdown& breakdown, const RepairConfig& config,
                     const std::vector<Window>& prior = {});

}  // namespace shopfloor

#endif  // SHOPFLOOR_LRCP_HPP_
