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

#ifndef SHOPFLOOR_DISPATCH_HPP_
#define SHOPFLOOR_DISPATCH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shopfloor/core.hpp"

namespace shopfloor {

enum class RuleKind { Random, SPT, LPT, STPT, MPSR, LSO, SPTxTWK, SPTdivTWKR };

struct Rule {
  RuleKind kind = RuleKind::SPT;
  std::uint64_t seed = 0;  // Random only

  friend bool operator==(const Rule&, const Rule&) = default;
};

// CLI names: random spt lpt stpt mpsr lso sptxtwk spttwkr.
std::string rule_name(RuleKind kind);
std::optional<RuleKind> parse_rule(std::string_view name);
// All eight rules in the order above.
const std::vector<RuleKind>& all_rules();

// Non-delay serial schedule generation. Each step takes the earliest time t
// at which some job's next operation can start, picks among the operations
// startable at t by the rule key, ties by job id, and places it at t.
//
// Keys (d = duration of the candidate, W = total work of its job,
// R = remaining work of its job counting the candidate):
//   SPT min d, LPT max d, STPT min W, MPSR max remaining op count,
//   LSO max (R - d), SPTxTWK min d*W, SPTdivTWKR min d/R.
// Random draws index rng() % n with std::mt19937_64(seed) over the
// candidates in job order.
Schedule schedule_with_rule(const Instance& instance, const Rule& rule);

}  // namespace shopfloor

#endif  // SHOPFLOOR_DISPATCH_HPP_
