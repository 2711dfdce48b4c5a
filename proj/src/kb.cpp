// Copyright 2026 The qagen Authors
//
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

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qagen/generator.hpp"
#include "qagen/text.hpp"

namespace qagen {
namespace {

std::optional<double> parse_number(const std::string &s) {
  if (s.empty()) return std::nullopt;
  char *end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

void RefRangeKb::add(std::string_view lab, RefRange range) {
  if (!(range.reflow < range.refhigh))
    throw Error("kb entry " + std::string(lab) + ": reflow must be below refhigh");
  entries_[to_lower(lab)] = std::move(range);
}

const RefRange *RefRangeKb::find(std::string_view lab) const {
  auto it = entries_.find(to_lower(lab));
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<double> RefRangeKb::resolve(std::string_view path, std::string_view lab) const {
  const RefRange *r = find(lab);
  if (!r) return std::nullopt;
  std::string field = to_lower(path.substr(path.rfind('.') + 1));
  if (field == "reflow") return r->reflow;
  if (field == "refhigh") return r->refhigh;
  return std::nullopt;
}

RefRangeKb parse_kb(std::string_view text, const std::string &source) {
  RefRangeKb kb;
  std::istringstream in{std::string(text)};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> f = split(t, '\t');
    if (f.size() < 3 || f.size() > 4) throw FormatError(source, n, "expected lab, reflow, refhigh[, unit]");
    auto lo = parse_number(trim(f[1]));
    auto hi = parse_number(trim(f[2]));
    if (!lo || !hi) throw FormatError(source, n, "reference bounds must be numbers");
    if (kb.find(trim(f[0]))) throw FormatError(source, n, "duplicate lab " + trim(f[0]));
    try {
      kb.add(trim(f[0]), RefRange{*lo, *hi, f.size() == 4 ? trim(f[3]) : std::string()});
    } catch (const Error &e) {
      throw FormatError(source, n, e.what());
    }
  }
  return kb;
}

RefRangeKb load_kb(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_kb(ss.str(), path.string());
}

}  // namespace qagen
