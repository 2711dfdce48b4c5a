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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qagen/analysis.hpp"
#include "qagen/baselines.hpp"
#include "qagen/cli.hpp"
#include "qagen/corpus.hpp"
#include "qagen/generator.hpp"
#include "qagen/schema.hpp"
#include "qagen/templates.hpp"
#include "qagen/text.hpp"

namespace py = pybind11;
using namespace qagen;

namespace {

std::string data_path(const std::optional<std::string> &given, const char *name) {
  return given ? *given : default_data_dir() + "/" + name;
}

TemplateStore load_store(const std::optional<std::string> &templates, const std::optional<std::string> &lfs) {
  return load_templates(data_path(templates, "templates.tsv"), load_lf_templates(data_path(lfs, "lf_templates.tsv")));
}

std::vector<QARecord> parse_records(const std::vector<std::string> &lines) {
  std::vector<QARecord> out;
  for (const std::string &l : lines) out.push_back(record_from_json(l));
  return out;
}

std::vector<std::string> dump_records(const std::vector<QARecord> &records) {
  std::vector<std::string> out;
  for (const QARecord &r : records) out.push_back(record_to_json(r));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "qagen native core";

  py::register_exception<Error>(m, "QagenError");

  m.def("data_dir", &default_data_dir);
  m.def("tokenize", [](const std::string &text) { return tokenize(text); });
  m.def("parse_lf", [](const std::string &text) { return lf::serialize_lf(lf::parse_lf(text)); },
        "Parse a logical form and return its canonical serialization.");
  m.def("lf_equal", [](const std::string &a, const std::string &b) {
    return lf::lf_equal(lf::parse_lf(a), lf::parse_lf(b));
  });
  m.def(
      "validate_lf",
      [](const std::string &text, const std::optional<std::string> &schema) {
        Schema s = schema ? load_schema(*schema) : default_schema();
        return validate_lf(s, lf::parse_lf(text));
      },
      py::arg("text"), py::arg("schema") = py::none());
  m.def("classify_lf", [](const std::string &text) {
    lf::LfProperties p = lf::classify_lf(lf::parse_lf(text));
    py::dict d;
    d["fine_grained_answer"] = p.fine_grained_answer;
    d["coarse_grained_answer"] = p.coarse_grained_answer;
    d["has_operator"] = p.has_operator;
    d["needs_kb"] = p.needs_kb;
    d["relation_count"] = p.relation_count;
    return d;
  });
  m.def("preprocess_entity", [](const std::string &s) { return preprocess_entity(s); });

  m.def(
      "synth_corpus",
      [](const std::string &root, std::uint64_t seed, int patients, int notes, int relation_lines) {
        SynthParams p;
        p.patients = patients;
        p.notes_per_patient = notes;
        p.relation_lines = relation_lines;
        SynthSummary s = synth_corpus(seed, p, root);
        py::dict d;
        d["documents"] = s.documents;
        d["concepts"] = s.concepts;
        d["attributes"] = s.attributes;
        d["relations"] = s.relations;
        d["chains"] = s.chains;
        d["classes"] = s.classes;
        return d;
      },
      py::arg("root"), py::arg("seed") = 1, py::arg("patients") = 12, py::arg("notes_per_patient") = 3,
      py::arg("relation_lines") = 2);

  m.def("corpus_summary", [](const std::string &root) {
    AnnotationCorpus c = load_corpus(root);
    py::dict d;
    d["documents"] = c.documents.size();
    d["concepts"] = c.concepts.size();
    d["attributes"] = c.attributes.size();
    d["relations"] = c.relations.size();
    d["chains"] = c.chains.size();
    d["classes"] = c.classes.size();
    std::vector<std::string> violations;
    for (const IntegrityViolation &v : c.violations)
      violations.push_back(v.file + ":" + std::to_string(v.line) + ": " + v.message);
    d["violations"] = violations;
    return d;
  });

  m.def(
      "generate",
      [](const std::string &corpus_root, const std::optional<std::string> &templates,
         const std::optional<std::string> &lf_templates, const std::optional<std::string> &schema,
         const std::optional<std::string> &kb, unsigned jobs) {
        AnnotationCorpus corpus = load_corpus(corpus_root);
        TemplateStore store = load_store(templates, lf_templates);
        GeneratorConfig cfg;
        cfg.jobs = jobs;
        Dataset d = generate_dataset(corpus, store, load_schema(data_path(schema, "schema.cfg")),
                                     load_kb(data_path(kb, "kb.tsv")), cfg);
        py::dict sources;
        for (const auto &[name, c] : d.report.per_source) {
          py::dict row;
          row["qa"] = c.qa;
          row["ql"] = c.ql;
          row["notes"] = c.notes;
          sources[py::str(name)] = row;
        }
        py::dict strategies;
        for (const auto &[name, c] : d.report.per_strategy) {
          py::dict row;
          row["records"] = c.records;
          row["answered"] = c.answered;
          strategies[py::str(name)] = row;
        }
        py::dict report;
        report["per_source"] = sources;
        report["per_strategy"] = strategies;
        report["table"] = d.report.table();
        return py::make_tuple(dump_records(d.records), report);
      },
      py::arg("corpus"), py::arg("templates") = py::none(), py::arg("lf_templates") = py::none(),
      py::arg("schema") = py::none(), py::arg("kb") = py::none(), py::arg("jobs") = 1,
      "Generate records as JSON lines plus a report dict.");

  m.def(
      "split",
      [](const std::vector<std::string> &records, const std::string &strategy, double ratio, std::uint64_t seed,
         const std::optional<std::string> &templates, const std::optional<std::string> &lf_templates) {
        auto s = parse_split_strategy(strategy);
        if (!s) throw Error("unknown split strategy " + strategy);
        Split out = split_dataset(parse_records(records), load_store(templates, lf_templates), SplitSpec{*s, ratio, seed});
        return py::make_tuple(dump_records(out.train), dump_records(out.test));
      },
      py::arg("records"), py::arg("strategy") = "ql2", py::arg("ratio") = 0.8, py::arg("seed") = 42,
      py::arg("templates") = py::none(), py::arg("lf_templates") = py::none());

  m.def(
      "bleu",
      [](const std::vector<std::string> &c, const std::vector<std::string> &r, bool smoothed) {
        return bleu(c, r, smoothed ? BleuVariant::Smoothed : BleuVariant::Unsmoothed);
      },
      py::arg("candidate"), py::arg("reference"), py::arg("smoothed") = true);
  m.def("jaccard", &jaccard);
  m.def("token_f1", [](const std::string &p, const std::string &g) { return token_f1(p, g); });

  m.def(
      "eval_answers",
      [](const std::vector<std::vector<std::string>> &predictions, const std::vector<std::string> &gold_records,
         const std::string &rule) {
        std::vector<std::vector<PredictedSpan>> p;
        for (const auto &ranked : predictions) {
          std::vector<PredictedSpan> spans;
          for (const std::string &t : ranked) spans.push_back(PredictedSpan{t, std::nullopt, std::nullopt});
          p.push_back(std::move(spans));
        }
        std::vector<std::vector<EvidenceSpan>> g;
        for (const QARecord &r : parse_records(gold_records)) g.push_back(r.evidences);
        AnswerScore s = eval_answers(p, g, rule == "overlap" ? EmRule::Overlap : EmRule::Endpoint);
        return py::make_tuple(s.em, s.f1);
      },
      py::arg("predictions"), py::arg("gold_records"), py::arg("em_rule") = "endpoint");

  m.def("subset_accuracy", &subset_accuracy);

  m.def(
      "run",
      [](const std::vector<std::string> &args) {
        std::ostringstream out, err;
        int code = run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      "Run the command-line interface in-process; returns (exit code, stdout, stderr).");
}
