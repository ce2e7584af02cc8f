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

#include "shopfloor/gantt.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <tuple>

namespace shopfloor {

namespace {

constexpr int kLabelWidth = 48;
constexpr int kTop = 36;
constexpr int kAxis = 28;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string job_color(int job) {
  const int hue = (job * 137) % 360;
  return "hsl(" + std::to_string(hue) + ",60%,70%)";
}

Time tick_step(Time horizon) {
  Time step = 1;
  while (horizon / step > 20) {
    if (horizon / (step * 2) <= 20) return step * 2;
    if (horizon / (step * 5) <= 20) return step * 5;
    step *= 10;
  }
  return step;
}

}  // namespace

std::string render_gantt_svg(const Schedule& schedule, int num_machines,
                             const std::vector<Window>& windows,
                             const GanttOptions& options) {
  Time horizon = makespan(schedule);
  for (const auto& w : windows) horizon = std::max(horizon, w.end);
  horizon = std::max<Time>(horizon, 1);
  const int rows = std::max(num_machines, 0);
  const double unit = static_cast<double>(options.width) / horizon;
  const int rh = options.row_height;
  const int total_w = kLabelWidth + options.width + 16;
  const int total_h = kTop + rows * rh + kAxis;
  auto x_of = [&](Time t) { return kLabelWidth + unit * static_cast<double>(t); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total_w
     << "\" height=\"" << total_h << "\" viewBox=\"0 0 " << total_w << ' '
     << total_h << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" "
        "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">"
        "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#b22\" "
        "stroke-width=\"2\"/></pattern></defs>\n";
  if (!options.title.empty()) {
    os << "<text class=\"title\" x=\"" << kLabelWidth << "\" y=\"20\">"
       << escape(options.title) << "</text>\n";
  }
  for (int m = 0; m < rows; ++m) {
    const int y = kTop + m * rh;
    os << "<g class=\"machine\" data-machine=\"" << m << "\">"
       << "<text x=\"4\" y=\"" << y + rh / 2 + 4 << "\">M" << m << "</text>"
       << "<line x1=\"" << kLabelWidth << "\" y1=\"" << y + rh << "\" x2=\""
       << kLabelWidth + options.width << "\" y2=\"" << y + rh
       << "\" stroke=\"#ccc\"/></g>\n";
  }

  std::vector<Window> ws = windows;
  std::sort(ws.begin(), ws.end(), [](const Window& a, const Window& b) {
    return std::tie(a.machine, a.start, a.end) <
           std::tie(b.machine, b.start, b.end);
  });
  for (const auto& w : ws) {
    if (w.machine < 0 || w.machine >= rows) continue;
    const int y = kTop + w.machine * rh;
    os << "<rect class=\"down\" x=\"" << num(x_of(w.start)) << "\" y=\""
       << y + 2 << "\" width=\"" << num(unit * static_cast<double>(w.end - w.start))
       << "\" height=\"" << rh - 4
       << "\" fill=\"url(#hatch)\" stroke=\"#b22\"/>\n";
  }

  std::vector<ScheduledOp> ops = schedule.ops;
  std::sort(ops.begin(), ops.end(),
            [](const ScheduledOp& a, const ScheduledOp& b) {
              return std::tie(a.machine, a.start, a.job, a.step) <
                     std::tie(b.machine, b.start, b.job, b.step);
            });
  for (const auto& op : ops) {
    if (op.machine < 0 || op.machine >= rows) continue;
    const int y = kTop + op.machine * rh;
    const double x0 = x_of(op.start);
    const double w = unit * static_cast<double>(op.end - op.start);
    const std::string label =
        "J" + std::to_string(op.job + 1) + "(" + std::to_string(op.step + 1) + ")";
    os << "<rect class=\"op\" data-job=\"" << op.job << "\" data-step=\""
       << op.step + 1 << "\" x=\"" << num(x0) << "\" y=\"" << y + 4
       << "\" width=\"" << num(w) << "\" height=\"" << rh - 8 << "\" fill=\""
       << job_color(op.job) << "\" stroke=\"#333\"><title>" << label << ' '
       << op.start << '-' << op.end << "</title></rect>"
       << "<text class=\"label\" x=\"" << num(x0 + w / 2) << "\" y=\""
       << y + rh / 2 + 4 << "\" text-anchor=\"middle\">" << label
       << "</text>\n";
  }

  const int axis_y = kTop + rows * rh;
  const Time step = tick_step(horizon);
  os << "<g class=\"axis\">";
  for (Time t = 0; t <= horizon; t += step) {
    os << "<line x1=\"" << num(x_of(t)) << "\" y1=\"" << axis_y << "\" x2=\""
       << num(x_of(t)) << "\" y2=\"" << axis_y + 4 << "\" stroke=\"#333\"/>"
       << "<text x=\"" << num(x_of(t)) << "\" y=\"" << axis_y + 16
       << "\" text-anchor=\"middle\">" << t << "</text>";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace shopfloor
