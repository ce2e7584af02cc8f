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

#ifndef SHOPFLOOR_VALIDATE_HPP_
#define SHOPFLOOR_VALIDATE_HPP_

#include <string>
#include <vector>

#include "shopfloor/core.hpp"

namespace shopfloor {

// Declaration order is the report sort order.
enum class ViolationKind {
  Precedence,
  Capacity,
  Completeness,
  BreakdownOverlap,
  DurationMismatch,
  NegativeStart,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind = ViolationKind::Completeness;
  int job = -1;
  int step = -1;  // 0-based
  int machine = -1;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;  // sorted by (kind, job, step)

  // One line per violation, or "ok".
  std::string to_text() const;
};

// Total function: every problem becomes a report entry. Intervals and
// windows are half-open; an op with `carried` units is expected to last
// duration - carried.
ValidationReport validate_schedule(const Instance& instance,
                                   const Schedule& schedule,
                                   const std::vector<Window>& windows = {});

ValidationReport validate_schedule(const Instance& instance,
                                   const Schedule& schedule,
                                   const std::vector<Breakdown>& breakdowns);

}  // namespace shopfloor

#endif  // SHOPFLOOR_VALIDATE_HPP_
