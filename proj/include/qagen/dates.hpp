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

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace qagen {

struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  auto operator<=>(const Date &) const = default;
  // YYYY-MM-DD
  std::string iso() const;
};

struct DateConfig {
  // Two-digit years map to two_digit_year_base + yy. Clinical corpora shift
  // dates into the future, so the base may be 1900, 2000 or 2100.
  int two_digit_year_base = 1900;
};

// Accepts MM/DD/YY, MM/DD/YYYY and YYYY-MM-DD. Trailing ',', ';', '.' and
// ':' are ignored so that dates can be lifted straight out of note tokens.
std::optional<Date> parse_date(std::string_view text, const DateConfig &config = {});

}  // namespace qagen
