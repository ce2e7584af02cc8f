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

#ifndef SHOPFLOOR_INSTANCE_IO_HPP_
#define SHOPFLOOR_INSTANCE_IO_HPP_

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shopfloor/core.hpp"

namespace shopfloor {

// Input that could not be parsed. line/column are 1-based; 0 means "end of
// input".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Standard layout: "J M" header, then J rows of M "(machine duration)" pairs
// with 0-based machines. '#' starts a comment line. Tokens may be separated
// by any run of whitespace.
Instance parse_standard(std::string_view text, std::string name = {});

// Taillard layout: optional "Nb of jobs, ..." caption, a numeric line whose
// first two values are J and M, then a "Times" matrix and a "Machines"
// matrix (1-based machine ids). The "Times"/"Machines" captions may be
// omitted. Only the first instance of a multi-instance file is read.
Instance parse_taillard(std::string_view text, std::string name = {});

// Every instance in a Taillard multi-instance file.
std::vector<Instance> parse_taillard_all(std::string_view text,
                                         const std::string& name_prefix = {});

// Picks the Taillard parser when the text carries its captions.
Instance parse_instance(std::string_view text, std::string name = {});

// Inverse of parse_standard for rectangular instances (every job visits
// num_machines operations).
std::string write_standard(const Instance& instance);

// A named resource that does not exist.
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BoundsRegistry {
  std::map<std::string, Time> upper_bounds;  // keys lower-cased
  std::vector<std::string> warnings;

  std::optional<Time> find(std::string_view name) const;
};

// "name UB" per line; '#' comments; duplicates keep the last value and add a
// warning.
BoundsRegistry load_bounds(std::string_view text);

// "alias canonical" per line, '#' comments. Keys are lower-cased.
std::map<std::string, std::string> load_aliases(std::string_view text);

std::string to_lower(std::string_view s);

// Reads a whole file; throws std::runtime_error when unreadable.
std::string read_file(const std::filesystem::path& path);

// Resolves an instance reference:
//   "demo:5x3"         built-in demonstration instance
//   existing file path parsed with parse_instance
//   bare name          looked up in <data_dir>/instances (after aliasing)
// Throws NotFoundError when nothing matches.
Instance load_instance(const std::string& ref,
                       const std::filesystem::path& data_dir);

}  // namespace shopfloor

#endif  // SHOPFLOOR_INSTANCE_IO_HPP_
