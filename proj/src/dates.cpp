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

#include "qagen/dates.hpp"

#include <cctype>
#include <cstdio>

namespace qagen {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

int days_in_month(int year, int month) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2) {
    bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return leap ? 29 : 28;
  }
  return kDays[month - 1];
}

std::optional<Date> make(int y, int m, int d) {
  if (m < 1 || m > 12 || d < 1 || d > days_in_month(y, m)) return std::nullopt;
  return Date{y, m, d};
}

}  // namespace

std::string Date::iso() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

std::optional<Date> parse_date(std::string_view text, const DateConfig &config) {
  while (!text.empty() && (text.back() == ',' || text.back() == ';' ||
                           text.back() == '.' || text.back() == ':'))
    text.remove_suffix(1);
  if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
    auto y = text.substr(0, 4), m = text.substr(5, 2), d = text.substr(8, 2);
    if (all_digits(y) && all_digits(m) && all_digits(d)) return make(to_int(y), to_int(m), to_int(d));
    return std::nullopt;
  }
  std::size_t s1 = text.find('/');
  if (s1 == std::string_view::npos) return std::nullopt;
  std::size_t s2 = text.find('/', s1 + 1);
  if (s2 == std::string_view::npos) return std::nullopt;
  auto m = text.substr(0, s1), d = text.substr(s1 + 1, s2 - s1 - 1), y = text.substr(s2 + 1);
  if (!all_digits(m) || !all_digits(d) || !all_digits(y)) return std::nullopt;
  if (m.size() > 2 || d.size() > 2) return std::nullopt;
  int year;
  if (y.size() == 2)
    year = config.two_digit_year_base + to_int(y);
  else if (y.size() == 4)
    year = to_int(y);
  else
    return std::nullopt;
  return make(year, to_int(m), to_int(d));
}

}  // namespace qagen
