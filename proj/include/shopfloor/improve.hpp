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

#ifndef SHOPFLOOR_IMPROVE_HPP_
#define SHOPFLOOR_IMPROVE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "shopfloor/core.hpp"

namespace shopfloor {

struct IterationRecord {
  int iteration = 0;
  Time makespan = 0;
  bool valid = true;
};

using IterationTrace = std::vector<IterationRecord>;

struct ImproveResult {
  Schedule schedule;
  IterationTrace trace;  // entry 0 is the initial schedule
};

// Per-machine processing orders as flat operation indices in (job, step)
// order.
using MachineSequences = std::vector<std::vector<std::size_t>>;

MachineSequences sequences_from_schedule(const Instance& instance,
                                         const Schedule& schedule);

// Semi-active timing for the given orders; nullopt when job and machine
// orders form a cycle.
std::optional<Schedule> semi_active(const Instance& instance,
                                    const MachineSequences& sequences);

// Steepest descent over adjacent swaps of critical machine pairs. Only
// strictly improving neighbours are accepted; `seed` breaks ties between
// equally good neighbours. Throws InvalidArgument if `initial` is invalid.
ImproveResult improve(const Instance& instance, const Schedule& initial,
                      int budget, std::uint64_t seed = 0);

}  // namespace shopfloor

#endif  // SHOPFLOOR_IMPROVE_HPP_
