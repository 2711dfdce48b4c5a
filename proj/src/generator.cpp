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
#include <cstdio>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "qagen/generator.hpp"
#include "qagen/rng.hpp"
#include "qagen/text.hpp"

namespace qagen {

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Attribute: return "attribute";
    case Strategy::Relation: return "relation";
    case Strategy::RelationPair: return "relation_pair";
    case Strategy::EventList: return "event_list";
    case Strategy::Operator: return "operator";
    case Strategy::Class: return "class";
    case Strategy::Unsupported: return "unsupported";
  }
  return "unsupported";
}

namespace {

struct Plan {
  const QuestionTemplate *t = nullptr;
  const lf::LogicalForm *lf = nullptr;
  Strategy strategy = Strategy::Unsupported;
  std::vector<std::string> types;  // distinct placeholder types, question order
  std::set<std::string> relation_types;
  std::set<std::string> answer_types;      // entity types accepted as answers
  std::vector<std::string> answer_fields;  // x-bound attributes
  const lf::AttributeSlot *op_slot = nullptr;
  std::string left_type, right_type;
  std::string task;
  bool patient_level_class = false;
  std::string unsupported;
};

std::vector<std::string> node_placeholder_types(const lf::Node &node) {
  std::vector<std::string> out;
  for (const lf::EventNode *e : lf::leaf_events(node))
    if (const auto *p = std::get_if<lf::Placeholder>(&e->argument)) out.push_back(p->entity_type);
  return out;
}

std::set<std::string> answer_types_of(const lf::Node &node, const Schema &schema) {
  std::set<std::string> out;
  for (const lf::EventNode *e : lf::leaf_events(node)) {
    if (!std::holds_alternative<lf::AnswerVar>(e->argument)) continue;
    for (const std::string &t : schema.entity_types_for_event(e->event_name)) out.insert(t);
  }
  return out;
}

bool is_x(const lf::Binding &b) { return std::holds_alternative<lf::AnswerVar>(b); }

Plan make_plan(const QuestionTemplate &t, const lf::LogicalForm &lf, const Schema &schema,
               const AnnotationCorpus &corpus) {
  Plan plan;
  plan.t = &t;
  plan.lf = &lf;
  for (const std::string &type : t.placeholder_types)
    if (std::find(plan.types.begin(), plan.types.end(), type) == plan.types.end()) plan.types.push_back(type);

  if (auto task = t.class_task()) {
    plan.strategy = Strategy::Class;
    plan.task = *task;
    for (const ClassAnn &c : corpus.classes)
      if (c.task == plan.task && c.target_is_patient) plan.patient_level_class = true;
    return plan;
  }

  const lf::LfProperties props = lf::classify_lf(lf);
  const std::vector<const lf::EventNode *> leaves = lf::leaf_events(lf);
  auto unsupported = [&](std::string why) {
    plan.strategy = Strategy::Unsupported;
    plan.unsupported = std::move(why);
    return plan;
  };
  auto collect_slots = [&](bool want_placeholder) -> std::string {
    for (const lf::EventNode *e : leaves) {
      bool ph = std::holds_alternative<lf::Placeholder>(e->argument);
      bool x = std::holds_alternative<lf::AnswerVar>(e->argument);
      if (want_placeholder ? !ph : !x) continue;
      for (const lf::AttributeSlot &s : e->attributes) {
        if (s.op) {
          if (plan.op_slot && !(*plan.op_slot == s)) return "more than one operator";
          plan.op_slot = &s;
        } else if (is_x(s.binding) &&
                   std::find(plan.answer_fields.begin(), plan.answer_fields.end(), s.name) == plan.answer_fields.end()) {
          plan.answer_fields.push_back(s.name);
        }
      }
    }
    return {};
  };

  if (plan.types.empty()) {
    if (props.relation_count != 0) return unsupported("relation without a placeholder");
    plan.answer_types = answer_types_of(lf.root, schema);
    if (plan.answer_types.empty()) return unsupported("no answer variable");
    if (std::string why = collect_slots(false); !why.empty()) return unsupported(why);
    plan.strategy = Strategy::EventList;
    return plan;
  }

  if (plan.types.size() == 1) {
    if (props.relation_count == 0) {
      if (std::string why = collect_slots(true); !why.empty()) return unsupported(why);
      if (plan.op_slot) {
        plan.strategy = Strategy::Operator;
      } else if (!plan.answer_fields.empty()) {
        plan.strategy = Strategy::Attribute;
      } else {
        return unsupported("no answer variable");
      }
      return plan;
    }
    if (props.relation_count != 1) return unsupported("more than one relation");
    if (props.has_operator) return unsupported("operator inside a relation");
    if (lf.root.is_event() || lf.root.composite().connective.kind != lf::ConnectiveKind::Relation)
      return unsupported("relation nested under a boolean connective");
    const lf::Composite &c = lf.root.composite();
    bool left_ph = !node_placeholder_types(c.left).empty();
    bool right_ph = !node_placeholder_types(c.right).empty();
    if (left_ph == right_ph) return unsupported("placeholder on both sides of the relation");
    plan.answer_types = answer_types_of(left_ph ? c.right : c.left, schema);
    if (plan.answer_types.empty()) return unsupported("no answer variable");
    plan.relation_types = schema.aligned_relation_types(c.connective.relation);
    plan.strategy = Strategy::Relation;
    return plan;
  }

  if (plan.types.size() == 2 && props.relation_count == 1 && !props.has_operator && !lf::has_answer_var(lf) &&
      !lf.root.is_event() && lf.root.composite().connective.kind == lf::ConnectiveKind::Relation) {
    const lf::Composite &c = lf.root.composite();
    std::vector<std::string> l = node_placeholder_types(c.left), r = node_placeholder_types(c.right);
    std::set<std::string> ls(l.begin(), l.end()), rs(r.begin(), r.end());
    if (ls.size() == 1 && rs.size() == 1 && *ls.begin() != *rs.begin()) {
      plan.left_type = *ls.begin();
      plan.right_type = *rs.begin();
      plan.relation_types = schema.aligned_relation_types(c.connective.relation);
      plan.strategy = Strategy::RelationPair;
      return plan;
    }
  }
  return unsupported("unsupported placeholder layout");
}

struct Keyed {
  std::string doc;
  int line = 0;
  std::size_t seq = 0;
  QARecord record;
};

struct PatientOutput {
  std::vector<Keyed> records;
  std::map<std::string, std::size_t> skipped;
  std::size_t rejected = 0;
  std::size_t excluded = 0;
};

void dedup(std::vector<EvidenceSpan> &spans) {
  std::set<std::tuple<std::string, int, std::string>> seen;
  std::vector<EvidenceSpan> out;
  for (EvidenceSpan &e : spans)
    if (seen.insert({e.doc_id, e.line, e.answer_entity.value_or("")}).second) out.push_back(std::move(e));
  spans = std::move(out);
}

class PatientWorker {
 public:
  PatientWorker(const AnnotationCorpus &corpus, const std::vector<Plan> &plans, const RefRangeKb &kb,
                const GeneratorConfig &config, const std::string &patient)
      : corpus_(corpus), plans_(plans), kb_(kb), config_(config), patient_(patient) {
    docs_ = corpus.documents_of(patient);
    for (const Document *d : docs_)
      for (const ConceptAnn *c : corpus.concepts_in(d->id)) concepts_.push_back(c);
    std::set<std::string> doc_ids;
    for (const Document *d : docs_) doc_ids.insert(d->id);
    for (const RelationAnn &r : corpus.relations)
      if (doc_ids.count(r.doc_id)) relations_.push_back(&r);
  }

  PatientOutput run() {
    if (docs_.empty()) return std::move(out_);
    for (const Plan &plan : plans_) {
      switch (plan.strategy) {
        case Strategy::Class: run_class(plan); break;
        case Strategy::EventList: run_event_list(plan); break;
        case Strategy::Attribute:
        case Strategy::Relation: run_concepts(plan); break;
        case Strategy::Operator: run_operator(plan); break;
        case Strategy::RelationPair: run_pairs(plan); break;
        case Strategy::Unsupported: run_unsupported(plan); break;
      }
    }
    return std::move(out_);
  }

 private:
  void emit(const Plan &plan, const std::string &doc, int line, std::vector<SlotFill> fills,
            std::vector<EvidenceSpan> evidences, std::vector<std::string> answer_class = {}) {
    std::vector<SlotFill> ordered;
    for (const std::string &type : plan.t->placeholder_types) {
      auto it = std::find_if(fills.begin(), fills.end(), [&](const SlotFill &f) { return f.entity_type == type; });
      ordered.push_back(*it);
    }
    Instantiation inst = instantiate_template(*plan.t, *plan.lf, ordered);
    Keyed k;
    k.doc = doc;
    k.line = line;
    k.seq = seq_++;
    QARecord &r = k.record;
    r.patient_id = patient_;
    r.question = std::move(inst.question);
    r.lf = std::move(inst.lf);
    r.lf_template_id = plan.t->lf_template_id;
    r.question_template_id = plan.t->id;
    dedup(evidences);
    r.evidences = std::move(evidences);
    r.answer_class = std::move(answer_class);
    r.slot_fills = std::move(ordered);
    r.strategy = plan.strategy;
    out_.records.push_back(std::move(k));
  }

  std::optional<SlotFill> fill_for(const ConceptAnn &c) {
    auto surface = preprocess_entity(c.surface);
    if (!surface) {
      ++out_.rejected;
      return std::nullopt;
    }
    return SlotFill{c.entity_type, *surface, c.id};
  }

  const Document &doc_of(const ConceptAnn &c) const { return *corpus_.find_document(c.doc_id); }

  void run_class(const Plan &plan) {
    auto one = [&](const std::string &target, const std::string &anchor_doc) {
      if (auto a = answers_by_class(corpus_, target, plan.task)) {
        emit(plan, anchor_doc, 0, {}, std::move(a->evidences), std::move(a->labels));
      } else {
        emit(plan, anchor_doc, 0, {}, {});
      }
    };
    if (plan.patient_level_class) {
      one(patient_, docs_.front()->id);
    } else {
      for (const Document *d : docs_) one(d->id, d->id);
    }
  }

  Candidate candidate_for(const ConceptAnn &c, const Plan &plan) {
    const Document &doc = doc_of(c);
    Candidate cand;
    cand.lab_name = c.surface;
    cand.record_date = doc.record_date;
    if (auto v = resolve_field(corpus_, c, "result", config_.dates)) cand.value = v->number;
    if (auto v = resolve_field(corpus_, c, "date", config_.dates)) cand.date = v->date;
    std::optional<FieldValue> op_field = resolve_field(corpus_, c, plan.op_slot->name, config_.dates);
    if (op_field) {
      cand.field_text = op_field->text;
      if (plan.op_slot->name != "result" && plan.op_slot->name != "date") {
        cand.value = op_field->number;
        cand.date = op_field->date;
      }
    }
    return cand;
  }

  // Evidence for an operator candidate: the ann's line, answering with the
  // requested field when it is written there.
  EvidenceSpan operator_evidence(const ConceptAnn &c, const Plan &plan, bool list) {
    const Document &doc = doc_of(c);
    const std::string &line = doc.line(c.span.line);
    std::optional<std::string> entity;
    if (!list) {
      std::vector<std::string> fields = plan.answer_fields;
      fields.push_back(plan.op_slot->name);
      for (const std::string &f : fields) {
        if (auto v = resolve_field(corpus_, c, f, config_.dates); v && v->line == c.span.line) {
          entity = locate_in_line(line, v->text);
          if (entity) break;
        }
      }
    }
    if (!entity) entity = span_text(doc, c.span);
    return line_evidence(doc, c.span.line, entity);
  }

  std::optional<std::vector<EvidenceSpan>> filter(const Plan &plan, const std::vector<const ConceptAnn *> &concepts,
                                                  bool list) {
    std::vector<Candidate> candidates;
    for (const ConceptAnn *c : concepts) {
      Candidate cand = candidate_for(*c, plan);
      cand.evidence = operator_evidence(*c, plan, list);
      candidates.push_back(std::move(cand));
    }
    OperatorResult result;
    try {
      result = eval_operator(*plan.op_slot->op, plan.op_slot->name, std::move(candidates), kb_, config_.dates);
    } catch (const Error &e) {
      ++out_.skipped[std::string("invalid operand: ") + e.what()];
      return std::nullopt;
    }
    out_.excluded += result.unparseable + result.missing_kb;
    if (!list && result.missing_kb > 0 && result.kept.empty()) {
      ++out_.skipped["missing KB entry"];
      return std::nullopt;
    }
    if (std::holds_alternative<lf::Sort>(*plan.op_slot->op) && result.kept.size() > 1) result.kept.resize(1);
    std::vector<EvidenceSpan> spans;
    for (Candidate &c : result.kept) spans.push_back(std::move(c.evidence));
    return spans;
  }

  void run_event_list(const Plan &plan) {
    std::vector<const ConceptAnn *> chosen;
    for (const ConceptAnn *c : concepts_)
      if (plan.answer_types.count(c->entity_type)) chosen.push_back(c);
    std::vector<EvidenceSpan> spans;
    if (plan.op_slot) {
      auto filtered = filter(plan, chosen, true);
      if (!filtered) return;
      spans = std::move(*filtered);
    } else {
      for (const ConceptAnn *c : chosen) {
        const Document &doc = doc_of(*c);
        spans.push_back(line_evidence(doc, c->span.line, span_text(doc, c->span)));
      }
    }
    emit(plan, docs_.front()->id, 0, {}, std::move(spans));
  }

  void run_concepts(const Plan &plan) {
    for (const ConceptAnn *c : concepts_) {
      if (c->entity_type != plan.types.front()) continue;
      auto fill = fill_for(*c);
      if (!fill) continue;
      std::vector<EvidenceSpan> spans;
      if (plan.strategy == Strategy::Attribute) {
        for (const std::string &field : plan.answer_fields)
          for (EvidenceSpan &e : answers_by_attribute(corpus_, *c, field, config_.dates)) spans.push_back(std::move(e));
      } else {
        spans = answers_by_relation(corpus_, *c, plan.relation_types, plan.answer_types);
      }
      emit(plan, c->doc_id, c->span.line, {*fill}, std::move(spans));
    }
  }

  void run_operator(const Plan &plan) {
    // One binding per distinct entity name; every mention of it is a candidate.
    std::vector<std::string> order;
    std::map<std::string, std::vector<const ConceptAnn *>> groups;
    std::map<std::string, SlotFill> fills;
    for (const ConceptAnn *c : concepts_) {
      if (c->entity_type != plan.types.front()) continue;
      auto fill = fill_for(*c);
      if (!fill) continue;
      std::string key = to_lower(fill->surface);
      if (!groups.count(key)) {
        order.push_back(key);
        fills.emplace(key, *fill);
      }
      groups[key].push_back(c);
    }
    for (const std::string &key : order) {
      const std::vector<const ConceptAnn *> &members = groups[key];
      auto spans = filter(plan, members, false);
      if (!spans) continue;
      emit(plan, members.front()->doc_id, members.front()->span.line, {fills.at(key)}, std::move(*spans));
    }
  }

  void run_pairs(const Plan &plan) {
    for (const RelationAnn *r : relations_) {
      if (!plan.relation_types.count(r->relation_type)) continue;
      const ConceptAnn *a = corpus_.find_concept(r->head);
      const ConceptAnn *b = corpus_.find_concept(r->tail);
      if (!a || !b) continue;
      if (a->entity_type != plan.left_type) std::swap(a, b);
      if (a->entity_type != plan.left_type || b->entity_type != plan.right_type) continue;
      auto fa = fill_for(*a);
      auto fb = fill_for(*b);
      if (!fa || !fb) continue;
      std::vector<EvidenceSpan> spans = {line_evidence(doc_of(*a), a->span.line),
                                         line_evidence(doc_of(*b), b->span.line)};
      const ConceptAnn *anchor = std::tie(a->doc_id, a->span.line) <= std::tie(b->doc_id, b->span.line) ? a : b;
      emit(plan, anchor->doc_id, anchor->span.line, {*fa, *fb}, std::move(spans));
    }
  }

  void run_unsupported(const Plan &plan) {
    if (plan.types.size() > 1) return;
    if (plan.types.empty()) {
      emit(plan, docs_.front()->id, 0, {}, {});
      return;
    }
    for (const ConceptAnn *c : concepts_) {
      if (c->entity_type != plan.types.front()) continue;
      if (auto fill = fill_for(*c)) emit(plan, c->doc_id, c->span.line, {*fill}, {});
    }
  }

  const AnnotationCorpus &corpus_;
  const std::vector<Plan> &plans_;
  const RefRangeKb &kb_;
  const GeneratorConfig &config_;
  const std::string &patient_;
  std::vector<const Document *> docs_;
  std::vector<const ConceptAnn *> concepts_;
  std::vector<const RelationAnn *> relations_;
  PatientOutput out_;
  std::size_t seq_ = 0;
};

}  // namespace

SourceCounts GenerationReport::total() const {
  SourceCounts t;
  for (const auto &[_, c] : per_source) {
    t.qa += c.qa;
    t.ql += c.ql;
    t.notes += c.notes;
  }
  return t;
}

std::string GenerationReport::table() const {
  std::ostringstream out;
  auto row = [&](const std::string &name, const SourceCounts &c) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-16s %10zu %10zu %8zu\n", name.c_str(), c.qa, c.ql, c.notes);
    out << buf;
  };
  char head[160];
  std::snprintf(head, sizeof(head), "%-16s %10s %10s %8s\n", "source", "#QA", "#QL", "#notes");
  out << head;
  for (const auto &[name, c] : per_source) row(name, c);
  row("total", total());
  return out.str();
}

Dataset generate_dataset(const AnnotationCorpus &corpus, const TemplateStore &templates, const Schema &schema,
                         const RefRangeKb &kb, const GeneratorConfig &config) {
  Dataset data;
  std::vector<Plan> plans;
  for (const QuestionTemplate &t : templates.templates()) {
    plans.push_back(make_plan(t, templates.lf_for(t), schema, corpus));
    const Plan &p = plans.back();
    if (p.strategy == Strategy::Unsupported) ++data.report.skipped["unsupported template " + t.id + ": " + p.unsupported];
  }

  std::vector<std::string> patients = corpus.patients();
  std::vector<PatientOutput> outputs(patients.size());
  unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(patients.size())));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < patients.size(); i += jobs)
      outputs[i] = PatientWorker(corpus, plans, kb, config, patients[i]).run();
  };
  if (jobs <= 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (std::thread &t : threads) t.join();
  }

  std::vector<Keyed> keyed;
  for (PatientOutput &o : outputs) {
    for (Keyed &k : o.records) keyed.push_back(std::move(k));
    for (const auto &[reason, n] : o.skipped) data.report.skipped[reason] += n;
    data.report.rejected_entities += o.rejected;
    data.report.excluded_candidates += o.excluded;
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed &a, const Keyed &b) {
    return std::tie(a.doc, a.line, a.record.question_template_id, a.seq) <
           std::tie(b.doc, b.line, b.record.question_template_id, b.seq);
  });

  for (const Document &d : corpus.documents) ++data.report.per_source[d.source].notes;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    QARecord &r = keyed[i].record;
    char id[32];
    std::snprintf(id, sizeof(id), "r%06zu", i + 1);
    r.record_id = id;
    std::string source = corpus.source_of(keyed[i].doc);
    SourceCounts &sc = data.report.per_source[source];
    ++sc.ql;
    if (r.has_answer()) ++sc.qa;
    StrategyCounts &st = data.report.per_strategy[strategy_name(r.strategy)];
    ++st.records;
    if (r.has_answer()) ++st.answered;
    data.records.push_back(std::move(r));
  }
  return data;
}

std::vector<std::pair<std::string, std::string>> ql_view(const std::vector<QARecord> &records) {
  std::set<std::pair<std::string, std::string>> pairs;
  for (const QARecord &r : records) pairs.insert({r.question, lf::serialize_lf(r.lf)});
  return {pairs.begin(), pairs.end()};
}

std::vector<const QARecord *> sample_records(const std::vector<QARecord> &records, std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(records.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Rng rng(seed);
  rng.shuffle(idx);
  if (idx.size() > n) idx.resize(n);
  std::sort(idx.begin(), idx.end());
  std::vector<const QARecord *> out;
  for (std::size_t i : idx) out.push_back(&records[i]);
  return out;
}

}  // namespace qagen
