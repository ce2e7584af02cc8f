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

#include "shopfloor/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "shopfloor/improve.hpp"
#include "shopfloor/lrcp.hpp"
#include "shopfloor/simulate.hpp"
#include "shopfloor/validate.hpp"

namespace shopfloor {

namespace {

// num / den rounded half-even, den > 0.
std::int64_t div_half_even(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  std::int64_t r = num % den;
  if (r < 0) {
    q -= 1;
    r += den;
  }
  const std::int64_t twice = 2 * r;
  if (twice > den || (twice == den && (q % 2 != 0))) ++q;
  return q;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

std::int64_t gap_hundredths(Time makespan, Time ub) {
  if (ub <= 0) throw InvalidArgument("upper bound must be positive");
  return div_half_even(10000 * (makespan - ub), ub);
}

std::int64_t mean_hundredths(const std::vector<std::int64_t>& values) {
  if (values.empty()) throw InvalidArgument("mean of an empty list");
  const std::int64_t sum =
      std::accumulate(values.begin(), values.end(), std::int64_t{0});
  return div_half_even(sum, static_cast<std::int64_t>(values.size()));
}

std::string format_hundredths(std::int64_t value) {
  const bool neg = value < 0;
  const std::int64_t a = neg ? -value : value;
  std::string frac = std::to_string(a % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  return (neg ? "-" : "") + std::to_string(a / 100) + "." + frac;
}

Method parse_method(std::string_view text, std::uint64_t seed) {
  Method m;
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == '+') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  const auto kind = parse_rule(parts.front());
  if (!kind) {
    throw InvalidArgument("unknown rule '" + parts.front() + "'");
  }
  m.rule = {*kind, seed};
  m.name = rule_name(*kind);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::string p = to_lower(parts[i]);
    if (p.rfind("improve", 0) == 0) {
      m.improve = true;
      if (p.size() > 7) {
        if (p[7] != ':') throw InvalidArgument("bad method suffix '" + p + "'");
        int budget = 0;
        const char* b = p.data() + 8;
        const char* e = p.data() + p.size();
        const auto [ptr, ec] = std::from_chars(b, e, budget);
        if (ec != std::errc() || ptr != e || b == e || budget < 0) {
          throw InvalidArgument("bad improve budget in '" + p + "'");
        }
        m.improve_budget = budget;
        m.name += "+improve:" + std::to_string(budget);
      } else {
        m.name += "+improve";
      }
    } else if (p == "lrcp") {
      m.lrcp = true;
      m.name += "+lrcp";
    } else {
      throw InvalidArgument("bad method suffix '" + p + "'");
    }
  }
  return m;
}

SuiteResult run_suite(const std::vector<Instance>& instances,
                      const std::vector<Method>& methods,
                      const SuiteParams& params, const BoundsRegistry& bounds) {
  SuiteResult out;
  for (const auto& inst : instances) {
    const std::optional<Time> ub = bounds.find(inst.name);
    if (!ub) {
      out.warnings.push_back("no upper bound for '" + inst.name +
                             "'; gap omitted");
    }
    for (const auto& method : methods) {
      BenchRow row;
      row.instance = inst.name;
      row.method = method.name;
      const auto t0 = std::chrono::steady_clock::now();
      Schedule s = schedule_with_rule(inst, method.rule);
      if (method.improve) {
        s = improve(inst, s, method.improve_budget, params.seed).schedule;
      }
      std::vector<Window> windows;
      if (method.lrcp) {
        const DisruptionScenario sc = generate_scenario(
            inst, params.seed, params.failures, params.min_dur,
            params.max_dur);
        ScenarioReport rep = run_scenario(inst, s, sc, params.config);
        row.wip_moves = rep.metrics.wip_moves;
        row.messages = rep.metrics.messages;
        windows = std::move(rep.windows);
        s = std::move(rep.schedule);
      }
      row.ms = elapsed_ms(t0);
      row.makespan = makespan(s);
      row.valid = validate_schedule(inst, s, windows).ok;
      if (!row.valid) {
        out.warnings.push_back("infeasible schedule for " + inst.name + " / " +
                               method.name);
      }
      if (ub && *ub > 0) row.gap = gap_hundredths(row.makespan, *ub);
      out.rows.push_back(std::move(row));
    }
  }
  for (const auto& method : methods) {
    MethodSummary sum;
    sum.method = method.name;
    std::vector<std::int64_t> gaps;
    for (const auto& row : out.rows) {
      if (row.method != method.name) continue;
      ++sum.rows;
      if (row.gap) gaps.push_back(*row.gap);
    }
    sum.rows_with_gap = static_cast<int>(gaps.size());
    if (!gaps.empty()) sum.mean_gap = mean_hundredths(gaps);
    out.summary.push_back(std::move(sum));
  }
  return out;
}

std::string to_csv(const SuiteResult& result, bool include_timing) {
  std::ostringstream os;
  os << "instance,method,makespan,gap,wip,messages,ms\n";
  for (const auto& r : result.rows) {
    os << r.instance << ',' << r.method << ',' << r.makespan << ','
       << (r.gap ? format_hundredths(*r.gap) : std::string()) << ','
       << r.wip_moves << ',' << r.messages << ',';
    if (include_timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", r.ms);
      os << buf;
    } else {
      os << '0';
    }
    os << '\n';
  }
  return os.str();
}

Instance random_instance(int jobs, int machines, std::mt19937_64& rng,
                         std::string name) {
  if (jobs < 1 || machines < 1) {
    throw InvalidArgument("random instance needs jobs >= 1 and machines >= 1");
  }
  Instance inst;
  inst.name = std::move(name);
  inst.num_machines = machines;
  std::vector<int> route(static_cast<std::size_t>(machines));
  for (int j = 0; j < jobs; ++j) {
    std::iota(route.begin(), route.end(), 0);
    for (int i = machines - 1; i > 0; --i) {
      const auto k = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
      std::swap(route[static_cast<std::size_t>(i)],
                route[static_cast<std::size_t>(k)]);
    }
    std::vector<Operation> ops;
    for (int s = 0; s < machines; ++s) {
      ops.push_back({j, s, route[static_cast<std::size_t>(s)],
                     1 + static_cast<Time>(rng() % 99)});
    }
    inst.jobs.push_back(std::move(ops));
  }
  return inst;
}

ProbeResult complexity_probe(const std::vector<ProbeSize>& sizes, int trials,
                             std::uint64_t seed, const RepairConfig& config) {
  if (sizes.empty()) throw InvalidArgument("probe needs at least one size");
  if (trials < 0) throw InvalidArgument("trial count must be >= 0");
  ProbeResult out;
  std::mt19937_64 rng(seed);
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& size : sizes) {
    for (int t = 0; t < trials; ++t) {
      const Instance inst = random_instance(size.jobs, size.machines, rng);
      const Schedule base = schedule_with_rule(inst, {RuleKind::SPT, 0});
      const Time h = makespan(base);
      Breakdown b;
      b.machine = static_cast<int>(rng() % static_cast<std::uint64_t>(
                                               size.machines));
      b.t_d = static_cast<Time>(rng() % static_cast<std::uint64_t>(h));
      b.delta_t =
          1 + static_cast<Time>(rng() % static_cast<std::uint64_t>(
                                            std::max<Time>(1, h / 10)));
      const auto t0 = std::chrono::steady_clock::now();
      const RepairOutcome r = repair(inst, base, b, config);
      ProbeTrial trial;
      trial.jobs = size.jobs;
      trial.machines = size.machines;
      trial.o_max = inst.max_ops_per_job();
      trial.breakdown = b;
      trial.messages = r.messages;
      trial.ms = elapsed_ms(t0);
      const double x = static_cast<double>(trial.jobs) * trial.machines *
                       trial.o_max;
      const double y = static_cast<double>(trial.messages);
      out.c_max = std::max(out.c_max, y / x);
      sxy += x * y;
      sxx += x * x;
      out.trials.push_back(trial);
    }
  }
  out.c_ls = sxx > 0.0 ? sxy / sxx : 0.0;
  for (const auto& t : out.trials) {
    const double x = static_cast<double>(t.jobs) * t.machines * t.o_max;
    if (static_cast<double>(t.messages) > out.c_max * x) {
      out.within_ceiling = false;
    }
  }
  return out;
}

}  // namespace shopfloor
