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

#include "shopfloor/improve.hpp"

#include <algorithm>
#include <random>
#include <tuple>

#include "shopfloor/validate.hpp"

namespace shopfloor {

namespace {

struct Graph {
  std::vector<std::size_t> offset;  // first flat index of each job
  std::vector<const Operation*> ops;
};

Graph flatten(const Instance& instance) {
  Graph g;
  g.offset.push_back(0);
  for (const auto& route : instance.jobs) {
    for (const auto& op : route) g.ops.push_back(&op);
    g.offset.push_back(g.ops.size());
  }
  return g;
}

struct Timing {
  std::vector<Time> head;  // earliest start
  std::vector<Time> tail;  // longest path from end of op to the sink
  Time makespan = 0;
};

// Forward and backward longest-path passes; nullopt on a cycle.
std::optional<Timing> time_graph(const Graph& g,
                                 const MachineSequences& seq) {
  const std::size_t n = g.ops.size();
  std::vector<std::size_t> mach_next(n, n), mach_prev(n, n);
  for (const auto& q : seq) {
    for (std::size_t p = 0; p + 1 < q.size(); ++p) {
      mach_next[q[p]] = q[p + 1];
      mach_prev[q[p + 1]] = q[p];
    }
  }
  auto job_next = [&](std::size_t i) {
    const Operation* op = g.ops[i];
    return i + 1 < g.offset[op->job + 1] ? i + 1 : n;
  };
  std::vector<int> indeg(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (g.ops[i]->step > 0) ++indeg[i];
    if (mach_prev[i] != n) ++indeg[i];
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (indeg[i] == 0) order.push_back(i);
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    for (std::size_t nx : {job_next(i), mach_next[i]}) {
      if (nx != n && --indeg[nx] == 0) order.push_back(nx);
    }
  }
  if (order.size() != n) return std::nullopt;

  Timing t;
  t.head.assign(n, 0);
  t.tail.assign(n, 0);
  for (std::size_t i : order) {
    const Time end = t.head[i] + g.ops[i]->duration;
    t.makespan = std::max(t.makespan, end);
    for (std::size_t nx : {job_next(i), mach_next[i]}) {
      if (nx != n) t.head[nx] = std::max(t.head[nx], end);
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t i = *it;
    for (std::size_t nx : {job_next(i), mach_next[i]}) {
      if (nx != n) {
        t.tail[i] = std::max(t.tail[i], g.ops[nx]->duration + t.tail[nx]);
      }
    }
  }
  return t;
}

Schedule to_schedule(const Graph& g, const Timing& t) {
  Schedule s;
  s.ops.reserve(g.ops.size());
  for (std::size_t i = 0; i < g.ops.size(); ++i) {
    const Operation* op = g.ops[i];
    s.ops.push_back({op->job, op->step, op->machine, t.head[i],
                     t.head[i] + op->duration, 0});
  }
  return s;
}

}  // namespace

MachineSequences sequences_from_schedule(const Instance& instance,
                                         const Schedule& schedule) {
  const Graph g = flatten(instance);
  MachineSequences seq(std::max(instance.num_machines, 0));
  std::vector<std::pair<const ScheduledOp*, std::size_t>> items;
  for (const auto& op : schedule.ops) {
    items.push_back({&op, g.offset.at(op.job) + op.step});
  }
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first->start, a.first->job, a.first->step) <
           std::tie(b.first->start, b.first->job, b.first->step);
  });
  for (const auto& [op, idx] : items) seq.at(op->machine).push_back(idx);
  return seq;
}

std::optional<Schedule> semi_active(const Instance& instance,
                                    const MachineSequences& sequences) {
  const Graph g = flatten(instance);
  auto t = time_graph(g, sequences);
  if (!t) return std::nullopt;
  return to_schedule(g, *t);
}

ImproveResult improve(const Instance& instance, const Schedule& initial,
                      int budget, std::uint64_t seed) {
  const ValidationReport report = validate_schedule(instance, initial);
  if (!report.ok) {
    throw InvalidArgument("initial schedule is invalid: " +
                          report.violations.front().detail);
  }
  ImproveResult result;
  result.schedule = initial;
  Time best = makespan(initial);
  result.trace.push_back({0, best, true});

  const Graph g = flatten(instance);
  MachineSequences seq = sequences_from_schedule(instance, initial);
  std::mt19937_64 rng(seed);

  for (int iter = 1; iter <= budget; ++iter) {
    const auto timing = time_graph(g, seq);
    if (!timing) throw InvariantError("accepted sequence became cyclic");
    const Timing& t = *timing;

    // Critical adjacent pairs: both on a longest path and tight.
    struct Move {
      int machine;
      std::size_t pos;
      Timing timing;
    };
    std::vector<Move> best_moves;
    Time best_neighbour = best;
    for (int m = 0; m < static_cast<int>(seq.size()); ++m) {
      auto& q = seq[m];
      for (std::size_t p = 0; p + 1 < q.size(); ++p) {
        const std::size_t u = q[p], v = q[p + 1];
        const Time du = g.ops[u]->duration, dv = g.ops[v]->duration;
        const bool critical = t.head[u] + du + t.tail[u] == t.makespan &&
                              t.head[v] + dv + t.tail[v] == t.makespan &&
                              t.head[u] + du == t.head[v] &&
                              t.tail[u] == dv + t.tail[v];
        if (!critical) continue;
        std::swap(q[p], q[p + 1]);
        auto nt = time_graph(g, seq);
        std::swap(q[p], q[p + 1]);
        if (!nt || nt->makespan > best_neighbour) continue;
        if (nt->makespan < best_neighbour) {
          best_neighbour = nt->makespan;
          best_moves.clear();
        }
        if (nt->makespan < best) best_moves.push_back({m, p, std::move(*nt)});
      }
    }
    if (best_moves.empty()) break;
    const Move& mv = best_moves[rng() % best_moves.size()];
    Schedule candidate = to_schedule(g, mv.timing);
    if (!validate_schedule(instance, candidate).ok) {
      throw InvariantError("semi-active rebuild produced an invalid schedule");
    }
    std::swap(seq[mv.machine][mv.pos], seq[mv.machine][mv.pos + 1]);
    best = mv.timing.makespan;
    result.schedule = std::move(candidate);
    result.trace.push_back({iter, best, true});
  }
  return result;
}

}  // namespace shopfloor
