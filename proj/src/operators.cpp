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

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "qagen/generator.hpp"

namespace qagen {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_date_field(std::string_view field) {
  return field.size() >= 4 && field.substr(field.size() - 4) == "date";
}

template <typename T>
bool holds(const T &a, lf::Comparison c, const T &b) {
  switch (c) {
    case lf::Comparison::Less: return a < b;
    case lf::Comparison::Greater: return b < a;
    case lf::Comparison::LessEqual: return !(b < a);
    case lf::Comparison::GreaterEqual: return !(a < b);
    case lf::Comparison::Equal: return !(a < b) && !(b < a);
  }
  return false;
}

bool holds(double a, lf::Comparison c, double b) {
  constexpr double eps = 1e-9;
  switch (c) {
    case lf::Comparison::Less: return a < b - eps;
    case lf::Comparison::Greater: return a > b + eps;
    case lf::Comparison::LessEqual: return a <= b + eps;
    case lf::Comparison::GreaterEqual: return a >= b - eps;
    case lf::Comparison::Equal: return std::fabs(a - b) <= eps;
  }
  return false;
}

// An operand resolved for one candidate. nullopt with kb_missing set when a
// KB path has no entry for the candidate's lab.
struct Resolved {
  std::optional<double> number;
  std::optional<Date> date;
  bool kb_missing = false;
};

Resolved resolve_operand(const lf::Operand &operand, bool temporal, const Candidate &c, const RefRangeKb &kb,
                         const DateConfig &dates) {
  Resolved r;
  if (const auto *lit = std::get_if<lf::Literal>(&operand)) {
    if (temporal) {
      r.date = parse_date(lit->text, dates);
      if (!r.date) throw Error("operand '" + lit->text + "' is not a date");
    } else {
      char *end = nullptr;
      double v = std::strtod(lit->text.c_str(), &end);
      if (lit->text.empty() || end != lit->text.c_str() + lit->text.size())
        throw Error("operand '" + lit->text + "' is not a number");
      r.number = v;
    }
    return r;
  }
  const auto &ref = std::get<lf::KbRef>(operand);
  if (temporal) throw Error("kb reference " + ref.path + " cannot bound a date");
  r.number = kb.resolve(ref.path, c.lab_name);
  r.kb_missing = !r.number;
  return r;
}

}  // namespace

OperatorResult eval_operator(const lf::Operator &op, std::string_view field, std::vector<Candidate> candidates,
                             const RefRangeKb &kb, const DateConfig &dates) {
  OperatorResult out;
  const bool temporal = is_date_field(field);
  auto date_key = [](const Candidate &c) { return c.date ? c.date : c.record_date; };
  auto has_key = [&](const Candidate &c) { return temporal ? date_key(c).has_value() : c.value.has_value(); };

  std::visit(overloaded{
                 [&](const lf::Sort &s) {
                   for (Candidate &c : candidates) {
                     if (has_key(c)) out.kept.push_back(std::move(c));
                     else ++out.unparseable;
                   }
                   bool desc = s.direction == lf::SortDirection::Descending;
                   std::stable_sort(out.kept.begin(), out.kept.end(), [&](const Candidate &a, const Candidate &b) {
                     if (temporal) return desc ? *date_key(b) < *date_key(a) : *date_key(a) < *date_key(b);
                     return desc ? *b.value < *a.value : *a.value < *b.value;
                   });
                 },
                 [&](const lf::NullCheck &n) {
                   for (Candidate &c : candidates) {
                     bool present = temporal ? c.date.has_value() : (c.value.has_value() || c.field_text.has_value());
                     if (present != n.expect_null) out.kept.push_back(std::move(c));
                   }
                 },
                 [&](const lf::Compare &cmp) {
                   for (Candidate &c : candidates) {
                     if (!has_key(c)) {
                       ++out.unparseable;
                       continue;
                     }
                     Resolved r = resolve_operand(cmp.operand, temporal, c, kb, dates);
                     if (r.kb_missing) {
                       ++out.missing_kb;
                       continue;
                     }
                     bool ok = temporal ? holds(*date_key(c), cmp.comparison, *r.date)
                                        : holds(*c.value, cmp.comparison, *r.number);
                     if (ok) out.kept.push_back(std::move(c));
                   }
                 },
                 [&](const lf::Range &range) {
                   for (Candidate &c : candidates) {
                     if (!has_key(c)) {
                       ++out.unparseable;
                       continue;
                     }
                     bool ok = true, missing = false;
                     if (range.low) {
                       Resolved r = resolve_operand(*range.low, temporal, c, kb, dates);
                       missing = missing || r.kb_missing;
                       if (!r.kb_missing)
                         ok = ok && (temporal ? holds(*date_key(c), lf::Comparison::GreaterEqual, *r.date)
                                              : holds(*c.value, lf::Comparison::GreaterEqual, *r.number));
                     }
                     if (range.high) {
                       Resolved r = resolve_operand(*range.high, temporal, c, kb, dates);
                       missing = missing || r.kb_missing;
                       if (!r.kb_missing)
                         ok = ok && (temporal ? holds(*date_key(c), lf::Comparison::LessEqual, *r.date)
                                              : holds(*c.value, lf::Comparison::LessEqual, *r.number));
                     }
                     if (missing) {
                       ++out.missing_kb;
                       continue;
                     }
                     if (ok) out.kept.push_back(std::move(c));
                   }
                 },
             },
             op);
  return out;
}

}  // namespace qagen
