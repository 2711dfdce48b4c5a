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

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qagen/baselines.hpp"
#include "qagen/text.hpp"

namespace qagen {

void WordVectors::add(std::string token, std::vector<double> vector) {
  if (vector.empty()) throw Error("word vector for '" + token + "' is empty");
  if (dimension_ == 0) dimension_ = vector.size();
  if (vector.size() != dimension_)
    throw Error("word vector for '" + token + "' has dimension " + std::to_string(vector.size()) + ", expected " +
                std::to_string(dimension_));
  table_[std::move(token)] = std::move(vector);
}

const std::vector<double> *WordVectors::find(std::string_view token) const {
  auto it = table_.find(token);
  if (it == table_.end()) it = table_.find(to_lower(token));
  return it == table_.end() ? nullptr : &it->second;
}

void WordVectors::scale(double factor) {
  for (auto &[_, v] : table_)
    for (double &x : v) x *= factor;
}

WordVectors parse_vectors(std::string_view text, const std::string &source) {
  WordVectors out;
  std::istringstream in{std::string(text)};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::vector<Token> fields = whitespace_tokens(line);
    if (fields.empty() || fields[0].text[0] == '#') continue;
    if (fields.size() < 2) throw FormatError(source, n, "expected a token followed by numbers");
    std::vector<double> v;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      char *end = nullptr;
      double x = std::strtod(fields[i].text.c_str(), &end);
      if (end != fields[i].text.c_str() + fields[i].text.size())
        throw FormatError(source, n, "'" + fields[i].text + "' is not a number");
      v.push_back(x);
    }
    try {
      out.add(fields[0].text, std::move(v));
    } catch (const Error &e) {
      throw FormatError(source, n, e.what());
    }
  }
  return out;
}

WordVectors load_vectors(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_vectors(ss.str(), path.string());
}

double SifWeights::weight(std::string_view token) const {
  auto it = probability.find(std::string(token));
  double p = it == probability.end() ? 0.0 : it->second;
  return a / (a + p);
}

SifWeights sif_weights(const std::vector<std::string> &texts, double a) {
  SifWeights w;
  w.a = a;
  std::size_t total = 0;
  std::map<std::string, std::size_t> counts;
  for (const std::string &t : texts)
    for (const std::string &tok : sentence_tokens(t)) {
      ++counts[tok];
      ++total;
    }
  for (const auto &[tok, c] : counts) w.probability[tok] = static_cast<double>(c) / static_cast<double>(total);
  return w;
}

std::vector<std::string> sentence_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (const std::string &t : tokenize(text)) out.push_back(to_lower(t));
  return out;
}

std::vector<double> sentence_vector(const WordVectors &vectors, std::string_view text, const SifWeights *sif) {
  std::vector<double> sum(vectors.dimension(), 0.0);
  std::size_t found = 0;
  for (const std::string &tok : sentence_tokens(text)) {
    const std::vector<double> *v = vectors.find(tok);
    if (!v) continue;
    double w = sif ? sif->weight(tok) : 1.0;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += w * (*v)[i];
    ++found;
  }
  if (found == 0) throw Error("no token of '" + std::string(text) + "' has a vector");
  for (double &x : sum) x /= static_cast<double>(found);
  return sum;
}

std::vector<double> first_principal_component(const std::vector<std::vector<double>> &rows, int iterations) {
  if (rows.empty()) return {};
  const std::size_t d = rows.front().size();
  std::vector<double> u(d, 1.0 / std::sqrt(static_cast<double>(d)));
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> next(d, 0.0);
    for (const std::vector<double> &r : rows) {
      double dot = 0;
      for (std::size_t i = 0; i < d; ++i) dot += r[i] * u[i];
      for (std::size_t i = 0; i < d; ++i) next[i] += dot * r[i];
    }
    double norm = 0;
    for (double x : next) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0) break;
    for (std::size_t i = 0; i < d; ++i) u[i] = next[i] / norm;
  }
  return u;
}

void remove_component(std::vector<double> &v, const std::vector<double> &component) {
  if (component.size() != v.size()) return;
  double dot = 0;
  for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * component[i];
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * component[i];
}

double cosine(const std::vector<double> &a, const std::vector<double> &b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace qagen
