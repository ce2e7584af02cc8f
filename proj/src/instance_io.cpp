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

#include "shopfloor/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace shopfloor {

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error(
          (line > 0 ? "line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ": "
                    : std::string("end of input: ")) +
          what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  int line = 0;
  int column = 0;
};

struct Line {
  std::string_view text;
  int number = 0;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view l = text.substr(pos, nl - pos);
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    lines.push_back({l, number++});
    if (nl == text.size()) break;
    pos = nl + 1;
  }
  return lines;
}

bool is_comment_or_blank(std::string_view l) {
  for (char c : l) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::vector<Token> tokenize_line(const Line& line) {
  std::vector<Token> out;
  const auto& t = line.text;
  std::size_t i = 0;
  while (i < t.size()) {
    while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
    if (i >= t.size()) break;
    std::size_t j = i;
    while (j < t.size() && !std::isspace(static_cast<unsigned char>(t[j]))) ++j;
    out.push_back({t.substr(i, j - i), line.number, static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

std::int64_t to_int(const Token& tok) {
  std::int64_t v = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("expected an integer, found '" + std::string(tok.text) +
                         "'",
                     tok.line, tok.column);
  }
  return v;
}

// Reads tokens one by one across non-comment lines.
class TokenStream {
 public:
  explicit TokenStream(std::string_view text) {
    for (const auto& line : split_lines(text)) {
      last_line_ = line.number;
      last_column_ = static_cast<int>(line.text.size()) + 1;
      if (is_comment_or_blank(line.text)) continue;
      for (auto& tok : tokenize_line(line)) tokens_.push_back(tok);
    }
  }

  bool done() const { return next_ >= tokens_.size(); }
  const Token& take(const char* expecting) {
    if (done()) {
      throw ParseError(std::string("unexpected end of input, expected ") +
                           expecting,
                       last_line_, last_column_);
    }
    return tokens_[next_++];
  }
  const Token& peek() const { return tokens_[next_]; }

 private:
  std::vector<Token> tokens_;
  std::size_t next_ = 0;
  int last_line_ = 0;
  int last_column_ = 0;
};

int checked_count(const Token& tok, const char* what) {
  const auto v = to_int(tok);
  if (v < 0 || v > 1'000'000) {
    throw ParseError(std::string("invalid ") + what + " " +
                         std::string(tok.text),
                     tok.line, tok.column);
  }
  return static_cast<int>(v);
}

bool has_alpha(std::string_view l) {
  return std::any_of(l.begin(), l.end(), [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
  });
}

struct TaillardBlock {
  std::optional<std::pair<int, int>> dims;
  Token dims_token;
  std::vector<std::pair<std::int64_t, Token>> times;
  std::vector<std::pair<std::int64_t, Token>> machines;
  int last_line = 0;
};

Instance build_taillard(const TaillardBlock& b, std::string name) {
  if (!b.dims) throw ParseError("missing dimension line", b.last_line, 1);
  const auto [jobs, machines] = *b.dims;
  const std::size_t cells = static_cast<std::size_t>(jobs) * machines;
  if (b.times.size() != cells) {
    throw ParseError("dimension mismatch: " + std::to_string(jobs) + "x" +
                         std::to_string(machines) + " needs " +
                         std::to_string(cells) + " processing times, found " +
                         std::to_string(b.times.size()),
                     b.last_line, 1);
  }
  if (b.machines.size() != cells) {
    throw ParseError("dimension mismatch: " + std::to_string(jobs) + "x" +
                         std::to_string(machines) + " needs " +
                         std::to_string(cells) + " machine ids, found " +
                         std::to_string(b.machines.size()),
                     b.last_line, 1);
  }
  Instance inst;
  inst.name = std::move(name);
  inst.num_machines = machines;
  inst.jobs.resize(jobs);
  for (int j = 0; j < jobs; ++j) {
    for (int s = 0; s < machines; ++s) {
      const auto& [d, dtok] = b.times[static_cast<std::size_t>(j) * machines + s];
      const auto& [m, mtok] =
          b.machines[static_cast<std::size_t>(j) * machines + s];
      if (d < 0) {
        throw ParseError("negative processing time", dtok.line, dtok.column);
      }
      if (m < 1 || m > machines) {
        throw ParseError("machine id " + std::to_string(m) +
                             " outside 1.." + std::to_string(machines) +
                             " (Taillard ids are 1-based)",
                         mtok.line, mtok.column);
      }
      inst.jobs[j].push_back({j, s, static_cast<int>(m - 1), d});
    }
  }
  return inst;
}

std::vector<Instance> parse_taillard_impl(std::string_view text,
                                          const std::string& name,
                                          std::size_t limit) {
  enum class Section { Auto, Times, Machines };
  std::vector<Instance> out;
  TaillardBlock block;
  Section section = Section::Auto;
  bool started = false;

  auto finish = [&]() {
    if (started) {
      std::string n = name;
      if (!out.empty() || limit != 1) {
        n = name + (name.empty() ? "" : "_") + std::to_string(out.size() + 1);
      }
      out.push_back(build_taillard(block, std::move(n)));
    }
    block = TaillardBlock{};
    section = Section::Auto;
    started = false;
  };

  for (const auto& line : split_lines(text)) {
    if (out.size() >= limit) break;
    if (is_comment_or_blank(line.text)) continue;
    block.last_line = line.number;
    if (has_alpha(line.text)) {
      const std::string l = to_lower(line.text);
      if (l.find("nb of") != std::string::npos ||
          l.find("jobs") != std::string::npos) {
        finish();
        if (out.size() >= limit) break;
        started = true;
        block.last_line = line.number;
      } else if (l.find("times") != std::string::npos) {
        if (!block.dims) throw ParseError("'Times' before dimensions", line.number, 1);
        section = Section::Times;
      } else if (l.find("machines") != std::string::npos) {
        if (!block.dims) throw ParseError("'Machines' before dimensions", line.number, 1);
        section = Section::Machines;
      } else {
        throw ParseError("unrecognised caption '" + std::string(line.text) + "'",
                         line.number, 1);
      }
      continue;
    }
    auto tokens = tokenize_line(line);
    if (!block.dims) {
      started = true;
      if (tokens.size() < 2) {
        throw ParseError("dimension line needs jobs and machines", line.number, 1);
      }
      block.dims = {checked_count(tokens[0], "job count"),
                    checked_count(tokens[1], "machine count")};
      block.dims_token = tokens[0];
      for (std::size_t i = 2; i < tokens.size(); ++i) to_int(tokens[i]);
      continue;
    }
    const std::size_t cells =
        static_cast<std::size_t>(block.dims->first) * block.dims->second;
    for (const auto& tok : tokens) {
      const std::int64_t v = to_int(tok);
      std::vector<std::pair<std::int64_t, Token>>* target = nullptr;
      switch (section) {
        case Section::Times: target = &block.times; break;
        case Section::Machines: target = &block.machines; break;
        case Section::Auto:
          target = block.times.size() < cells ? &block.times : &block.machines;
          break;
      }
      if (target->size() >= cells) {
        throw ParseError("dimension mismatch: more than " +
                             std::to_string(cells) + " values in matrix",
                         tok.line, tok.column);
      }
      target->push_back({v, tok});
    }
  }
  if (out.size() < limit) finish();
  if (out.empty()) throw ParseError("no instance found", 0, 0);
  return out;
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

Instance parse_standard(std::string_view text, std::string name) {
  TokenStream ts(text);
  const int jobs = checked_count(ts.take("job count"), "job count");
  const int machines = checked_count(ts.take("machine count"), "machine count");
  Instance inst;
  inst.name = std::move(name);
  inst.num_machines = machines;
  inst.jobs.resize(jobs);
  for (int j = 0; j < jobs; ++j) {
    for (int s = 0; s < machines; ++s) {
      const Token& mt = ts.take("machine id");
      const auto m = to_int(mt);
      if (m < 0 || m >= machines) {
        throw ParseError("machine id " + std::to_string(m) + " outside 0.." +
                             std::to_string(machines - 1),
                         mt.line, mt.column);
      }
      const Token& dt = ts.take("duration");
      const auto d = to_int(dt);
      if (d < 0) throw ParseError("negative duration", dt.line, dt.column);
      inst.jobs[j].push_back({j, s, static_cast<int>(m), d});
    }
  }
  if (!ts.done()) {
    const Token& extra = ts.peek();
    throw ParseError("unexpected trailing value '" + std::string(extra.text) +
                         "'",
                     extra.line, extra.column);
  }
  return inst;
}

Instance parse_taillard(std::string_view text, std::string name) {
  return parse_taillard_impl(text, name, 1).front();
}

std::vector<Instance> parse_taillard_all(std::string_view text,
                                         const std::string& name_prefix) {
  return parse_taillard_impl(text, name_prefix, static_cast<std::size_t>(-1));
}

Instance parse_instance(std::string_view text, std::string name) {
  for (const auto& line : split_lines(text)) {
    if (is_comment_or_blank(line.text)) continue;
    if (has_alpha(line.text)) return parse_taillard(text, std::move(name));
  }
  return parse_standard(text, std::move(name));
}

std::string write_standard(const Instance& instance) {
  std::ostringstream out;
  out << instance.num_jobs() << ' ' << instance.num_machines << '\n';
  for (const auto& route : instance.jobs) {
    if (static_cast<int>(route.size()) != instance.num_machines) {
      throw InvalidArgument(
          "standard layout needs exactly one operation per machine per job");
    }
    for (std::size_t s = 0; s < route.size(); ++s) {
      if (s) out << ' ';
      out << route[s].machine << ' ' << route[s].duration;
    }
    out << '\n';
  }
  return out.str();
}

std::optional<Time> BoundsRegistry::find(std::string_view name) const {
  auto it = upper_bounds.find(to_lower(name));
  if (it == upper_bounds.end()) return std::nullopt;
  return it->second;
}

BoundsRegistry load_bounds(std::string_view text) {
  BoundsRegistry reg;
  for (const auto& line : split_lines(text)) {
    if (is_comment_or_blank(line.text)) continue;
    auto tokens = tokenize_line(line);
    if (tokens.size() != 2) {
      throw ParseError("expected 'name UB'", line.number, 1);
    }
    const auto ub = to_int(tokens[1]);
    if (ub < 0) {
      throw ParseError("negative upper bound", tokens[1].line, tokens[1].column);
    }
    const std::string key = to_lower(tokens[0].text);
    if (reg.upper_bounds.count(key)) {
      reg.warnings.push_back("line " + std::to_string(line.number) +
                             ": duplicate bound for '" + key +
                             "', keeping the last value");
    }
    reg.upper_bounds[key] = ub;
  }
  return reg;
}

std::map<std::string, std::string> load_aliases(std::string_view text) {
  std::map<std::string, std::string> out;
  for (const auto& line : split_lines(text)) {
    if (is_comment_or_blank(line.text)) continue;
    auto tokens = tokenize_line(line);
    if (tokens.size() != 2) {
      throw ParseError("expected 'alias canonical'", line.number, 1);
    }
    out[to_lower(tokens[0].text)] = to_lower(tokens[1].text);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance load_instance(const std::string& ref,
                       const std::filesystem::path& data_dir) {
  namespace fs = std::filesystem;
  if (to_lower(ref) == "demo:5x3" || to_lower(ref) == "demo_5x3") {
    return demo_5x3();
  }
  std::error_code ec;
  if (fs::is_regular_file(ref, ec)) {
    return parse_instance(read_file(ref), fs::path(ref).stem().string());
  }
  std::string stem = to_lower(ref);
  const fs::path alias_file = data_dir / "aliases.txt";
  if (fs::is_regular_file(alias_file, ec)) {
    const auto aliases = load_aliases(read_file(alias_file));
    if (auto it = aliases.find(stem); it != aliases.end()) stem = it->second;
  }
  for (const char* ext : {"", ".txt", ".jss"}) {
    const fs::path p = data_dir / "instances" / (stem + ext);
    if (fs::is_regular_file(p, ec)) {
      return parse_instance(read_file(p), stem);
    }
  }
  throw NotFoundError("instance '" + ref + "' not found (looked for a "
                           "file and under " +
                           (data_dir / "instances").string() + ")");
}

}  // namespace shopfloor
