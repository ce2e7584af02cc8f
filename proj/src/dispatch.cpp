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

#include "shopfloor/dispatch.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <random>

namespace shopfloor {

namespace {

struct RuleEntry {
  RuleKind kind;
  const char* name;
};

constexpr RuleEntry kRules[] = {
    {RuleKind::Random, "random"}, {RuleKind::SPT, "spt"},
    {RuleKind::LPT, "lpt"},       {RuleKind::STPT, "stpt"},
    {RuleKind::MPSR, "mpsr"},     {RuleKind::LSO, "lso"},
    {RuleKind::SPTxTWK, "sptxtwk"}, {RuleKind::SPTdivTWKR, "spttwkr"},
};

struct Candidate {
  int job;
  Time duration;
  Time job_work;
  Time remaining_work;  // including the candidate
  int remaining_ops;    // including the candidate
};

// True when a should be dispatched before b (strictly better key).
bool better(RuleKind kind, const Candidate& a, const Candidate& b) {
  switch (kind) {
    case RuleKind::SPT: return a.duration < b.duration;
    case RuleKind::LPT: return a.duration > b.duration;
    case RuleKind::STPT: return a.job_work < b.job_work;
    case RuleKind::MPSR: return a.remaining_ops > b.remaining_ops;
    case RuleKind::LSO:
      return a.remaining_work - a.duration > b.remaining_work - b.duration;
    case RuleKind::SPTxTWK:
      return a.duration * a.job_work < b.duration * b.job_work;
    case RuleKind::SPTdivTWKR:
      return a.duration * b.remaining_work < b.duration * a.remaining_work;
    case RuleKind::Random: return false;
  }
  return false;
}

}  // namespace

std::string rule_name(RuleKind kind) {
  for (const auto& r : kRules) {
    if (r.kind == kind) return r.name;
  }
  return "?";
}

std::optional<RuleKind> parse_rule(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  for (const auto& r : kRules) {
    if (lower == r.name) return r.kind;
  }
  if (lower == "spt/twkr" || lower == "sptdivtwkr") return RuleKind::SPTdivTWKR;
  if (lower == "spt*twk" || lower == "sptxtwk") return RuleKind::SPTxTWK;
  return std::nullopt;
}

const std::vector<RuleKind>& all_rules() {
  static const std::vector<RuleKind> rules = [] {
    std::vector<RuleKind> v;
    for (const auto& r : kRules) v.push_back(r.kind);
    return v;
  }();
  return rules;
}

Schedule schedule_with_rule(const Instance& instance, const Rule& rule) {
  instance.check();
  const int jobs = instance.num_jobs();
  std::vector<int> next(jobs, 0);
  std::vector<Time> job_ready(jobs, 0);
  std::vector<Time> remaining(jobs, 0);
  std::vector<Time> work(jobs, 0);
  for (int j = 0; j < jobs; ++j) remaining[j] = work[j] = instance.job_work(j);
  std::vector<Time> machine_free(std::max(instance.num_machines, 0), 0);
  std::mt19937_64 rng(rule.seed);

  Schedule out;
  out.ops.reserve(instance.num_operations());
  std::vector<Candidate> cands;
  for (std::size_t placed = 0; placed < instance.num_operations(); ++placed) {
    Time t = std::numeric_limits<Time>::max();
    for (int j = 0; j < jobs; ++j) {
      if (next[j] >= static_cast<int>(instance.jobs[j].size())) continue;
      const Operation& op = instance.jobs[j][next[j]];
      t = std::min(t, std::max(job_ready[j], machine_free[op.machine]));
    }
    cands.clear();
    for (int j = 0; j < jobs; ++j) {
      const int len = static_cast<int>(instance.jobs[j].size());
      if (next[j] >= len) continue;
      const Operation& op = instance.jobs[j][next[j]];
      if (std::max(job_ready[j], machine_free[op.machine]) != t) continue;
      cands.push_back({j, op.duration, work[j], remaining[j], len - next[j]});
    }
    std::size_t pick = 0;
    if (rule.kind == RuleKind::Random) {
      pick = static_cast<std::size_t>(rng() % cands.size());
    } else {
      for (std::size_t c = 1; c < cands.size(); ++c) {
        if (better(rule.kind, cands[c], cands[pick])) pick = c;
      }
    }
    const int j = cands[pick].job;
    const Operation& op = instance.jobs[j][next[j]];
    out.ops.push_back({j, op.step, op.machine, t, t + op.duration, 0});
    job_ready[j] = t + op.duration;
    machine_free[op.machine] = t + op.duration;
    remaining[j] -= op.duration;
    ++next[j];
  }
  out.sort_canonical();
  return out;
}

}  // namespace shopfloor
