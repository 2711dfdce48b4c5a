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

#include "qagen/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qagen/analysis.hpp"
#include "qagen/baselines.hpp"
#include "qagen/corpus.hpp"
#include "qagen/generator.hpp"
#include "qagen/schema.hpp"
#include "qagen/templates.hpp"
#include "qagen/text.hpp"

namespace qagen {

std::string default_data_dir() {
  if (const char *env = std::getenv("QAGEN_DATA_DIR"); env && *env) return env;
  return QAGEN_DATA_DIR;
}

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string corpus;
  std::string templates = default_data_dir() + "/templates.tsv";
  std::string lf = default_data_dir() + "/lf_templates.tsv";
  std::string schema = default_data_dir() + "/schema.cfg";
  std::string kb = default_data_dir() + "/kb.tsv";
  std::string vectors = default_data_dir() + "/vectors.txt";
  std::string out;
  std::string records;
  std::string train;
  std::string test;
  std::string pred;
  std::string gold;
  std::string lexicon;
  std::string predictions_out;
  std::string strategy = "ql2";
  std::string mode = "hm1";
  std::string bleu = "smoothed";
  std::string em_rule = "endpoint";
  double ratio = 0.8;
  std::uint64_t seed = 42;
  unsigned jobs = 1;
  int year_base = 1900;
  bool strict = false;
  bool sif = false;
  int patients = 12;
  int notes = 3;
  int relation_lines = 2;
  int epochs = 300;
  double learning_rate = 1.0;
  double l2 = 1e-4;
};

std::string one_line(std::string s) {
  for (char &c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

void write_text(const fs::path &path, const std::string &text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
}

struct Inputs {
  Schema schema;
  TemplateStore store;
};

Inputs load_inputs(const Options &o) {
  Inputs in{load_schema(o.schema), {}};
  LfTemplateMap lfs = load_lf_templates(o.lf);
  for (const auto &[id, lf] : lfs) {
    std::vector<std::string> problems = validate_lf(in.schema, lf);
    if (!problems.empty()) throw Error("lf template " + id + ": " + problems.front());
  }
  in.store = load_templates(o.templates, std::move(lfs));
  return in;
}

class IntegrityError : public Error {
 public:
  using Error::Error;
};

AnnotationCorpus load_checked_corpus(const Options &o, std::ostream &err) {
  if (o.corpus.empty()) throw Error("--corpus is required");
  if (!fs::is_directory(o.corpus)) throw Error("corpus directory " + o.corpus + " does not exist");
  AnnotationCorpus corpus = load_corpus(o.corpus, CorpusOptions{DateConfig{o.year_base}});
  if (!corpus.violations.empty()) {
    const IntegrityViolation &v = corpus.violations.front();
    std::string first = v.file + ":" + std::to_string(v.line) + ": " + v.message;
    if (o.strict)
      throw IntegrityError("integrity: " + std::to_string(corpus.violations.size()) + " violations; first " + first);
    err << "warning: " << corpus.violations.size() << " integrity violations; first " << first << "\n";
  }
  return corpus;
}

std::string report_text(const GenerationReport &report) {
  std::ostringstream s;
  s << report.table() << "\n";
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-16s %10s %10s\n", "strategy", "records", "answered");
  s << buf;
  for (const auto &[name, c] : report.per_strategy) {
    std::snprintf(buf, sizeof(buf), "%-16s %10zu %10zu\n", name.c_str(), c.records, c.answered);
    s << buf;
  }
  s << "\nrejected entities " << report.rejected_entities << "\n";
  s << "excluded candidates " << report.excluded_candidates << "\n";
  for (const auto &[reason, n] : report.skipped) s << "skipped " << n << " " << reason << "\n";
  return s.str();
}

int cmd_synth(const Options &o, std::ostream &out) {
  if (o.out.empty()) throw Error("--out is required");
  SynthParams p;
  p.patients = o.patients;
  p.notes_per_patient = o.notes;
  p.relation_lines = o.relation_lines;
  SynthSummary s = synth_corpus(o.seed, p, o.out);
  out << "documents " << s.documents << "\nconcepts " << s.concepts << "\nattributes " << s.attributes
      << "\nrelations " << s.relations << "\nchains " << s.chains << "\nclasses " << s.classes << "\n";
  return kExitOk;
}

int cmd_validate(const Options &o, std::ostream &out) {
  std::size_t problems = 0;
  Schema schema = load_schema(o.schema);
  out << "schema events " << schema.events.size() << " relations " << schema.relations.size() << "\n";
  LfTemplateMap lfs = load_lf_templates(o.lf);
  for (const auto &[id, lf] : lfs)
    for (const std::string &p : validate_lf(schema, lf)) {
      out << "lf " << id << ": " << p << "\n";
      ++problems;
    }
  std::size_t n_lfs = lfs.size();
  TemplateStore store = load_templates(o.templates, std::move(lfs));
  out << "templates " << store.templates().size() << " lf templates " << n_lfs << " groups " << store.groups().size()
      << "\n";
  if (!o.kb.empty()) out << "kb entries " << load_kb(o.kb).size() << "\n";
  if (!o.corpus.empty()) {
    AnnotationCorpus c = load_corpus(o.corpus, CorpusOptions{DateConfig{o.year_base}});
    out << "documents " << c.documents.size() << " concepts " << c.concepts.size() << " attributes "
        << c.attributes.size() << " relations " << c.relations.size() << " chains " << c.chains.size() << " classes "
        << c.classes.size() << "\n";
    for (const IntegrityViolation &v : c.violations) {
      out << "violation " << v.file << ":" << v.line << ": " << v.message << "\n";
      ++problems;
    }
  }
  out << "problems " << problems << "\n";
  if (problems > 0 && o.strict) throw IntegrityError("integrity: " + std::to_string(problems) + " problems");
  return kExitOk;
}

int cmd_generate(const Options &o, std::ostream &out, std::ostream &err) {
  if (o.out.empty()) throw Error("--out is required");
  AnnotationCorpus corpus = load_checked_corpus(o, err);
  Inputs in = load_inputs(o);
  RefRangeKb kb = load_kb(o.kb);
  GeneratorConfig cfg;
  cfg.dates.two_digit_year_base = o.year_base;
  cfg.jobs = o.jobs;
  cfg.seed = o.seed;
  Dataset d = generate_dataset(corpus, in.store, in.schema, kb, cfg);
  fs::create_directories(o.out);
  save_records(fs::path(o.out) / "dataset.jsonl", d.records);
  write_text(fs::path(o.out) / "report.txt", report_text(d.report));
  std::ostringstream sample;
  for (const QARecord *r : sample_records(d.records, cfg.sample_size, o.seed))
    sample << r->record_id << "\t" << r->question << "\n";
  write_text(fs::path(o.out) / "sample.tsv", sample.str());
  out << d.report.table();
  return kExitOk;
}

int cmd_split(const Options &o, std::ostream &out, std::ostream &err) {
  if (o.records.empty() || o.out.empty()) throw Error("--records and --out are required");
  auto strategy = parse_split_strategy(o.strategy);
  if (!strategy) throw Error("unknown split strategy " + o.strategy);
  Inputs in = load_inputs(o);
  Split s = split_dataset(load_records(o.records), in.store, SplitSpec{*strategy, o.ratio, o.seed});
  fs::create_directories(o.out);
  save_records(fs::path(o.out) / "train.jsonl", s.train);
  save_records(fs::path(o.out) / "test.jsonl", s.test);
  for (const std::string &w : s.warnings) err << "warning: " << w << "\n";
  out << "strategy " << split_strategy_name(*strategy) << " train " << s.train.size() << " test " << s.test.size()
      << "\n";
  return kExitOk;
}

int cmd_analyze(const Options &o, std::ostream &out, std::ostream &err) {
  if (o.records.empty()) throw Error("--records is required");
  AnnotationCorpus corpus = load_checked_corpus(o, err);
  Inputs in = load_inputs(o);
  BleuVariant variant;
  if (o.bleu == "smoothed") variant = BleuVariant::Smoothed;
  else if (o.bleu == "unsmoothed") variant = BleuVariant::Unsmoothed;
  else throw Error("unknown bleu variant " + o.bleu);
  DatasetStats stats = corpus_stats(load_records(o.records), corpus);
  DiversityReport div = paraphrase_diversity(in.store, o.seed, variant);
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    write_text(fs::path(o.out) / "stats.txt", stats.table());
    write_text(fs::path(o.out) / "stats.json", stats.to_json() + "\n");
    write_text(fs::path(o.out) / "diversity.txt", div.table());
    write_text(fs::path(o.out) / "diversity.json", div.to_json() + "\n");
  }
  out << stats.table() << "\n" << div.table();
  return kExitOk;
}

GazetteerRecognizer load_lexicon(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot read " + path);
  GazetteerRecognizer g;
  std::string line;
  int n = 0;
  while (std::getline(f, line)) {
    ++n;
    if (trim(line).empty() || line[0] == '#') continue;
    std::vector<std::string> parts = split(line, '\t');
    if (parts.size() != 2) throw FormatError(path, n, "expected surface and entity type");
    g.add(trim(parts[0]), trim(parts[1]));
  }
  return g;
}

int cmd_eval_ql(const Options &o, std::ostream &out) {
  if (o.train.empty() || o.test.empty()) throw Error("--train and --test are required");
  Inputs in = load_inputs(o);
  std::vector<QARecord> train = load_records(o.train), test = load_records(o.test);
  HmMode mode;
  if (o.mode == "hm1") mode = HmMode::HM1;
  else if (o.mode == "hm2") mode = HmMode::HM2;
  else throw Error("unknown mode " + o.mode);
  WordVectors vectors;
  if (mode == HmMode::HM2) vectors = load_vectors(o.vectors);
  GazetteerRecognizer recognizer;
  if (!o.lexicon.empty()) {
    recognizer = load_lexicon(o.lexicon);
  } else {
    std::vector<QARecord> all = train;
    all.insert(all.end(), test.begin(), test.end());
    recognizer = oracle_recognizer(all);
  }
  HeuristicMatcher matcher(templates_of(train, in.store), in.store.lf_templates(), mode, &vectors, o.sif);
  std::vector<std::optional<lf::LogicalForm>> predictions;
  std::vector<lf::LogicalForm> gold;
  std::ostringstream pred_file;
  for (const QARecord &r : test) {
    HmPrediction p = matcher.predict(recognizer, r.question);
    pred_file << r.record_id << "\t1\t" << (p.lf ? lf::serialize_lf(*p.lf) : std::string()) << "\n";
    predictions.push_back(std::move(p.lf));
    gold.push_back(r.lf);
  }
  if (!o.predictions_out.empty()) write_text(o.predictions_out, pred_file.str());
  double acc = eval_ql_accuracy(predictions, gold);
  out << "mode " << o.mode << (mode == HmMode::HM2 ? (o.sif ? " sif" : " mean") : "") << " accuracy " << fixed4(acc)
      << " questions " << gold.size() << "\n";
  return kExitOk;
}

int cmd_eval_qa(const Options &o, std::ostream &out) {
  if (o.pred.empty() || o.gold.empty()) throw Error("--pred and --gold are required");
  EmRule rule;
  if (o.em_rule == "endpoint") rule = EmRule::Endpoint;
  else if (o.em_rule == "overlap") rule = EmRule::Overlap;
  else throw Error("unknown em rule " + o.em_rule);
  std::ifstream pf(o.pred, std::ios::binary);
  if (!pf) throw Error("cannot read " + o.pred);
  std::map<std::string, std::vector<std::string>> preds = read_predictions(pf, o.pred);
  std::vector<std::vector<PredictedSpan>> p;
  std::vector<std::vector<EvidenceSpan>> g;
  for (const QARecord &r : load_records(o.gold)) {
    std::vector<EvidenceSpan> lines;
    for (const EvidenceSpan &e : r.evidences)
      if (e.line > 0) lines.push_back(e);
    if (lines.empty()) continue;
    std::vector<PredictedSpan> ranked;
    if (auto it = preds.find(r.record_id); it != preds.end())
      for (const std::string &text : it->second) ranked.push_back(PredictedSpan{text, std::nullopt, std::nullopt});
    p.push_back(std::move(ranked));
    g.push_back(std::move(lines));
  }
  AnswerScore s = eval_answers(p, g, rule);
  out << "EM " << fixed4(s.em) << " F1 " << fixed4(s.f1) << " questions " << s.questions << "\n";
  return kExitOk;
}

ClsExample class_example(const QARecord &r) {
  ClsExample e;
  e.text = r.question;
  for (const EvidenceSpan &ev : r.evidences) e.text += "\n" + ev.line_text;
  e.labels = r.answer_class;
  return e;
}

int cmd_eval_cls(const Options &o, std::ostream &out, std::ostream &err) {
  if (o.train.empty() || o.test.empty()) throw Error("--train and --test are required");
  std::vector<ClsExample> train;
  for (const QARecord &r : load_records(o.train))
    if (!r.answer_class.empty()) train.push_back(class_example(r));
  ClsHyper hyper;
  hyper.epochs = o.epochs;
  hyper.learning_rate = o.learning_rate;
  hyper.l2 = o.l2;
  ClsModel model = train_cls(train, hyper);
  for (const std::string &w : model.warnings) err << "warning: " << w << "\n";
  std::vector<std::vector<std::string>> predicted, gold;
  for (const QARecord &r : load_records(o.test)) {
    if (r.answer_class.empty()) continue;
    ClsExample e = class_example(r);
    predicted.push_back(predict_cls(model, e.text));
    gold.push_back(e.labels);
  }
  if (!o.out.empty()) write_text(o.out, model.to_json() + "\n");
  out << "subset accuracy " << fixed4(subset_accuracy(predicted, gold)) << " questions " << gold.size()
      << " train " << train.size() << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Options o;
  CLI::App app{"Template-based clinical question answering dataset generator", "qagen"};
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "TOML/INI file with option defaults, one section per subcommand")
      ->envname("QAGEN_CONFIG");

  auto add_inputs = [&](CLI::App *sub) {
    sub->add_option("--templates", o.templates, "question templates")->capture_default_str();
    sub->add_option("--lf", o.lf, "logical form templates")->capture_default_str();
    sub->add_option("--schema", o.schema, "schema file")->capture_default_str();
  };
  auto add_seed = [&](CLI::App *sub) { sub->add_option("--seed", o.seed, "random seed")->capture_default_str(); };

  CLI::App *synth = app.add_subcommand("synth", "write a synthetic annotated corpus");
  synth->add_option("--out", o.out, "output directory");
  synth->add_option("--patients", o.patients)->capture_default_str()->check(CLI::PositiveNumber);
  synth->add_option("--notes", o.notes, "notes per patient")->capture_default_str()->check(CLI::PositiveNumber);
  synth->add_option("--relation-lines", o.relation_lines, "relation lines per note")->capture_default_str();
  add_seed(synth);

  CLI::App *validate = app.add_subcommand("validate", "check schema, templates and corpus integrity");
  validate->add_option("--corpus", o.corpus, "corpus directory");
  validate->add_option("--kb", o.kb, "reference range table")->capture_default_str();
  validate->add_option("--year-base", o.year_base, "century for two-digit years")->capture_default_str();
  validate->add_flag("--strict", o.strict, "exit 1 on any problem");
  add_inputs(validate);

  CLI::App *generate = app.add_subcommand("generate", "generate the dataset");
  generate->add_option("--corpus", o.corpus, "corpus directory");
  generate->add_option("--kb", o.kb, "reference range table")->capture_default_str();
  generate->add_option("--out", o.out, "output directory");
  generate->add_option("--jobs", o.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  generate->add_option("--year-base", o.year_base, "century for two-digit years")->capture_default_str();
  generate->add_flag("--strict", o.strict, "exit 1 on integrity violations");
  add_inputs(generate);
  add_seed(generate);

  CLI::App *split_cmd = app.add_subcommand("split", "split records into train and test");
  split_cmd->add_option("--records", o.records, "dataset.jsonl");
  split_cmd->add_option("--strategy", o.strategy, "ql1, ql2 or qa")->capture_default_str();
  split_cmd->add_option("--ratio", o.ratio, "train fraction")->capture_default_str();
  split_cmd->add_option("--out", o.out, "output directory");
  add_inputs(split_cmd);
  add_seed(split_cmd);

  CLI::App *analyze = app.add_subcommand("analyze", "dataset statistics and paraphrase diversity");
  analyze->add_option("--records", o.records, "dataset.jsonl");
  analyze->add_option("--corpus", o.corpus, "corpus directory");
  analyze->add_option("--out", o.out, "output directory");
  analyze->add_option("--bleu", o.bleu, "smoothed or unsmoothed")->capture_default_str();
  analyze->add_option("--year-base", o.year_base, "century for two-digit years")->capture_default_str();
  analyze->add_flag("--strict", o.strict, "exit 1 on integrity violations");
  add_inputs(analyze);
  add_seed(analyze);

  CLI::App *eval_ql = app.add_subcommand("eval-ql", "heuristic question to logical form matching");
  eval_ql->add_option("--train", o.train, "train records");
  eval_ql->add_option("--test", o.test, "test records");
  eval_ql->add_option("--mode", o.mode, "hm1 or hm2")->capture_default_str();
  eval_ql->add_option("--vectors", o.vectors, "word vectors")->capture_default_str();
  eval_ql->add_flag("--sif", o.sif, "SIF-weighted sentence vectors");
  eval_ql->add_option("--lexicon", o.lexicon, "surface<TAB>type entity lexicon (default: record slot fills)");
  eval_ql->add_option("--predictions-out", o.predictions_out, "write predictions here");
  add_inputs(eval_ql);

  CLI::App *eval_qa = app.add_subcommand("eval-qa", "exact match and F1 of ranked evidence predictions");
  eval_qa->add_option("--pred", o.pred, "record_id<TAB>rank<TAB>text");
  eval_qa->add_option("--gold", o.gold, "gold records");
  eval_qa->add_option("--em-rule", o.em_rule, "endpoint or overlap")->capture_default_str();

  CLI::App *eval_cls = app.add_subcommand("eval-cls", "TF-IDF logistic regression class prediction");
  eval_cls->add_option("--train", o.train, "train records");
  eval_cls->add_option("--test", o.test, "test records");
  eval_cls->add_option("--epochs", o.epochs)->capture_default_str();
  eval_cls->add_option("--lr", o.learning_rate, "learning rate")->capture_default_str();
  eval_cls->add_option("--l2", o.l2, "L2 strength")->capture_default_str();
  eval_cls->add_option("--out", o.out, "write the model as JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    err << "error: usage: " << one_line(e.what()) << "\n";
    CLI::App *target = &app;
    for (CLI::App *sub : app.get_subcommands()) target = sub;
    err << target->help();
    return kExitUsage;
  }

  try {
    if (*synth) return cmd_synth(o, out);
    if (*validate) return cmd_validate(o, out);
    if (*generate) return cmd_generate(o, out, err);
    if (*split_cmd) return cmd_split(o, out, err);
    if (*analyze) return cmd_analyze(o, out, err);
    if (*eval_ql) return cmd_eval_ql(o, out);
    if (*eval_qa) return cmd_eval_qa(o, out);
    if (*eval_cls) return cmd_eval_cls(o, out, err);
  } catch (const std::exception &e) {
    err << "error: " << one_line(e.what()) << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

int run(int argc, char **argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace qagen
