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

#ifndef SHOPFLOOR_GANTT_HPP_
#define SHOPFLOOR_GANTT_HPP_

#include <string>
#include <vector>

#include "shopfloor/core.hpp"

namespace shopfloor {

struct GanttOptions {
  std::string title;
  int width = 960;  // drawing area in px, excluding labels
  int row_height = 28;
};

// One row per machine, one <rect class="op"> and label "J<job+1>(<step+1>)"
// per op, hatched <rect class="down"> per window. Output depends only on
// the arguments.
std::string render_gantt_svg(const Schedule& schedule, int num_machines,
                             const std::vector<Window>& windows = {},
                             const GanttOptions& options = {});

}  // namespace shopfloor

#endif  // SHOPFLOOR_GANTT_HPP_
