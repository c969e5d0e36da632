#include "zeroref/evaluation.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <tuple>

#include "zeroref/error.hpp"
#include "zeroref/util.hpp"

namespace zeroref {

using nlohmann::json;

namespace {

const std::string kModelNames[] = {"sem1", "sem2", "syn", "both1", "both2", "rule"};

struct FoldModels {
  std::optional<SyntacticModel> syntactic;
  std::optional<SemanticModel> semantic;
};

ScoreMode score_mode(ModelKind m) {
  switch (m) {
    case ModelKind::kSyn:
      return ScoreMode::kSyntacticOnly;
    case ModelKind::kSem1:
    case ModelKind::kSem2:
      return ScoreMode::kSemanticOnly;
    default:
      return ScoreMode::kBoth;
  }
}

FoldModels train_fold_models(const std::vector<AnalyzedDocument>& docs,
                             const std::vector<GoldAnnotation>& train_anns,
                             const Thesaurus& thes, const CooccurrenceCounts* counts,
                             const EvalConfig& cfg, const std::string& fold_id) {
  FoldModels m;
  bool needs_pairs = model_uses_syntactic(cfg.model) || model_uses_sem1(cfg.model);
  std::vector<TrainingPair> pairs;
  if (needs_pairs) {
    pairs = build_training_pairs(docs, train_anns, thes);
    if (pairs.empty()) {
      throw DataError("fold '" + fold_id + "': no training pairs");
    }
  }
  if (model_uses_syntactic(cfg.model)) {
    m.syntactic = SyntacticModel::train(pairs, cfg.lambda_syn, cfg.max_distance_bin);
  }
  if (model_uses_sem1(cfg.model)) {
    m.semantic = SemanticModel::train_annotated(pairs, thes, cfg.lambda);
  }
  if (model_uses_sem2(cfg.model)) {
    m.semantic = SemanticModel::from_cooccurrences(*counts, thes, cfg.lambda);
  }
  return m;
}

void score_record(EvalRecord& rec, const AnalyzedDocument& doc, const ZeroPronoun& zp,
                  const Thesaurus& thes, const FoldModels& models, const EvalConfig& cfg) {
  std::vector<AntecedentCandidate> cands = extract_candidates(doc, zp, cfg.window, thes);
  rec.candidate_count = static_cast<int>(cands.size());
  std::vector<ScoredCandidate> scored;
  if (cfg.model == ModelKind::kRule) {
    scored = rank_by_rules(cfg.rules, doc, zp, cands, cfg.k);
    rec.certainty = 0.0;
  } else {
    ResolutionScorer scorer;
    scorer.syntactic = models.syntactic ? &*models.syntactic : nullptr;
    scorer.semantic = models.semantic ? &*models.semantic : nullptr;
    scorer.mode = score_mode(cfg.model);
    scored = resolve(scorer, zp, cands, cfg.k);
    if (scored.empty()) {
      rec.certainty = 0.0;
    } else if (cfg.combined_certainty) {
      rec.certainty = certainty(scored, {cfg.t, 0.0});
    } else {
      double p2 = scored.size() > 1 ? scored[1].resolution_prob : 0.0;
      rec.certainty = certainty_from_probs(scored[0].resolution_prob, p2, cfg.t);
    }
  }
  rec.output.reserve(scored.size());
  for (const ScoredCandidate& sc : scored) {
    rec.output.push_back({sc.candidate.location, sc.combined_prob});
  }
}

EvalRecord base_record(const ZeroPronoun& zp) {
  EvalRecord rec;
  rec.doc_id = zp.doc_id;
  rec.sentence = zp.sentence;
  rec.predicate_token = zp.predicate_token;
  rec.case_marker = zp.case_marker;
  rec.verb = zp.verb;
  return rec;
}

void evaluate_document(const AnalyzedDocument& doc,
                       const std::vector<GoldAnnotation>& doc_anns,
                       const CaseFrameLexicon& lexicon, const Thesaurus& thes,
                       const CooccurrenceCounts* counts, const FoldModels& models,
                       const EvalConfig& cfg, std::vector<EvalRecord>& out) {
  std::vector<ZeroPronoun> gold = gold_zero_pronouns(doc, doc_anns);
  std::map<std::tuple<int, int, int>, std::optional<TokenRef>> gold_ant;
  for (const GoldAnnotation& ann : doc_anns) {
    gold_ant[{ann.predicate.sentence, ann.predicate.token,
              static_cast<int>(ann.case_marker)}] = ann.antecedent;
  }
  auto gold_ref = [&](const ZeroPronoun& zp) {
    return gold_ant.at({zp.sentence, zp.predicate_token, static_cast<int>(zp.case_marker)});
  };

  if (!cfg.system_detection) {
    for (const ZeroPronoun& zp : gold) {
      EvalRecord rec = base_record(zp);
      rec.exophoric = zp.exophoric;
      rec.gold = gold_ref(zp);
      rec.detected = true;
      score_record(rec, doc, zp, thes, models, cfg);
      out.push_back(std::move(rec));
    }
    return;
  }

  std::vector<ZeroPronoun> detections =
      detect_zero_pronouns(doc, lexicon, *counts, cfg.theta_detect, cfg.pzero);
  std::map<std::tuple<int, int, int>, const ZeroPronoun*> by_key;
  for (const ZeroPronoun& zp : detections) {
    by_key[{zp.sentence, zp.predicate_token, static_cast<int>(zp.case_marker)}] = &zp;
  }
  std::set<std::tuple<int, int, int>> gold_keys;
  for (const ZeroPronoun& zp : gold) {
    std::tuple<int, int, int> key{zp.sentence, zp.predicate_token,
                                  static_cast<int>(zp.case_marker)};
    gold_keys.insert(key);
    EvalRecord rec = base_record(zp);
    rec.exophoric = zp.exophoric;
    rec.gold = gold_ref(zp);
    auto it = by_key.find(key);
    if (it == by_key.end()) {
      rec.detected = false;
      rec.lexicon_gap = obligatory_cases(lexicon, zp.verb).count(zp.case_marker) == 0;
    } else {
      rec.detected = true;
      score_record(rec, doc, *it->second, thes, models, cfg);
    }
    out.push_back(std::move(rec));
  }
  for (const ZeroPronoun& zp : detections) {
    std::tuple<int, int, int> key{zp.sentence, zp.predicate_token,
                                  static_cast<int>(zp.case_marker)};
    if (gold_keys.count(key)) continue;
    EvalRecord rec = base_record(zp);
    rec.has_gold = false;
    rec.detected = true;
    score_record(rec, doc, zp, thes, models, cfg);
    out.push_back(std::move(rec));
  }
}

void sort_records(std::vector<EvalRecord>& records) {
  std::sort(records.begin(), records.end(), [](const EvalRecord& a, const EvalRecord& b) {
    return std::tie(a.doc_id, a.sentence, a.predicate_token, a.case_marker) <
           std::tie(b.doc_id, b.sentence, b.predicate_token, b.case_marker);
  });
}

void check_config(const CooccurrenceCounts* counts, const EvalConfig& cfg) {
  if (model_uses_sem2(cfg.model) && !counts) {
    throw DataError("co-occurrence counts are required for the sem2 route");
  }
  if (cfg.system_detection && !counts) {
    throw DataError("co-occurrence counts are required for system detection");
  }
}

}  // namespace

std::optional<ModelKind> model_from_string(std::string_view s) {
  for (int i = 0; i < 6; ++i) {
    if (s == kModelNames[i]) return static_cast<ModelKind>(i);
  }
  return std::nullopt;
}

const std::string& to_string(ModelKind m) { return kModelNames[static_cast<int>(m)]; }

bool model_uses_syntactic(ModelKind m) {
  return m == ModelKind::kSyn || m == ModelKind::kBoth1 || m == ModelKind::kBoth2;
}

bool model_uses_sem1(ModelKind m) {
  return m == ModelKind::kSem1 || m == ModelKind::kBoth1;
}

bool model_uses_sem2(ModelKind m) {
  return m == ModelKind::kSem2 || m == ModelKind::kBoth2;
}

std::vector<EvalRecord> loocv(const std::vector<AnalyzedDocument>& docs,
                              const std::vector<GoldAnnotation>& annotations,
                              const CaseFrameLexicon& lexicon, const Thesaurus& thes,
                              const CooccurrenceCounts* counts, const EvalConfig& cfg) {
  if (docs.size() < 2) {
    throw DataError("leave-one-out evaluation needs at least 2 documents");
  }
  check_config(counts, cfg);
  std::set<std::string> ids;
  for (const AnalyzedDocument& d : docs) ids.insert(d.doc_id);
  for (const GoldAnnotation& ann : annotations) {
    if (!ids.count(ann.doc_id)) throw DataError("unknown doc_id '" + ann.doc_id + "'");
  }

  std::vector<EvalRecord> records;
  for (std::size_t test = 0; test < docs.size(); ++test) {
    std::vector<GoldAnnotation> train_anns;
    std::vector<GoldAnnotation> test_anns;
    for (const GoldAnnotation& ann : annotations) {
      (ann.doc_id == docs[test].doc_id ? test_anns : train_anns).push_back(ann);
    }
    FoldModels models =
        train_fold_models(docs, train_anns, thes, counts, cfg, docs[test].doc_id);
    evaluate_document(docs[test], test_anns, lexicon, thes, counts, models, cfg, records);
  }
  sort_records(records);
  return records;
}

std::optional<double> accuracy_at_k(std::span<const EvalRecord> records, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  long num = 0, den = 0;
  for (const EvalRecord& r : records) {
    if (!r.has_gold || !r.detected || r.exophoric) continue;
    ++den;
    if (!r.gold) continue;
    int top = std::min<int>(k, static_cast<int>(r.output.size()));
    for (int i = 0; i < top; ++i) {
      if (r.output[i].location == *r.gold) {
        ++num;
        break;
      }
    }
  }
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::vector<CurvePoint> coverage_accuracy_curve(std::span<const EvalRecord> records,
                                                std::span<const double> thresholds,
                                                CurveMode mode) {
  for (std::size_t i = 1; i < thresholds.size(); ++i) {
    if (thresholds[i] < thresholds[i - 1]) {
      throw std::invalid_argument("thresholds must be non-decreasing");
    }
  }
  std::vector<CurvePoint> out;
  out.reserve(thresholds.size());
  for (double theta : thresholds) {
    CurvePoint pt;
    pt.threshold = theta;
    if (mode == CurveMode::kDetection) {
      for (const EvalRecord& r : records) {
        bool kept = r.detected && r.certainty >= theta;
        if (r.has_gold) {
          ++pt.coverage_den;
          if (kept) ++pt.coverage_num;
        }
        if (kept) ++pt.accuracy_den;
      }
      pt.accuracy_num = pt.coverage_num;
    } else {
      for (const EvalRecord& r : records) {
        if (!r.has_gold || !r.detected || r.exophoric) continue;
        ++pt.coverage_den;
        bool emitted = r.certainty >= theta && !r.output.empty();
        if (!emitted) continue;
        ++pt.coverage_num;
        ++pt.accuracy_den;
        if (r.gold && r.output[0].location == *r.gold) ++pt.accuracy_num;
      }
    }
    pt.coverage = pt.coverage_den == 0
                      ? 0.0
                      : static_cast<double>(pt.coverage_num) / pt.coverage_den;
    if (pt.accuracy_den > 0) {
      pt.accuracy = static_cast<double>(pt.accuracy_num) / pt.accuracy_den;
    }
    out.push_back(pt);
  }
  return out;
}

std::vector<SweepPoint> corpus_size_sweep(
    const std::vector<AnalyzedDocument>& docs,
    const std::vector<GoldAnnotation>& annotations, const CaseFrameLexicon& lexicon,
    const Thesaurus& thes, const CooccurrenceCounts* counts,
    const std::vector<AnalyzedDocument>* unannotated_docs, const EvalConfig& cfg,
    std::span<const long> sizes, SweepAxis axis, std::uint64_t seed) {
  if (sizes.empty()) throw std::invalid_argument("no sweep sizes");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] < sizes[i - 1]) throw std::invalid_argument("sizes must be non-decreasing");
  }
  if (docs.size() < 2) {
    throw DataError("leave-one-out evaluation needs at least 2 documents");
  }
  check_config(counts, cfg);

  std::vector<SweepPoint> out;
  if (axis == SweepAxis::kAnnotated) {
    long max_size = static_cast<long>(docs.size()) - 1;
    for (long size : sizes) {
      if (size < 1) {
        throw DataError("annotated sweep size must be >= 1: there is nothing to train on");
      }
      if (size > max_size) {
        throw DataError("annotated sweep size " + std::to_string(size) +
                        " exceeds the " + std::to_string(max_size) +
                        " documents available per fold");
      }
    }
    for (long size : sizes) {
      std::vector<EvalRecord> records;
      for (std::size_t test = 0; test < docs.size(); ++test) {
        std::vector<std::size_t> others;
        for (std::size_t i = 0; i < docs.size(); ++i) {
          if (i != test) others.push_back(i);
        }
        Rng fold_rng(seed ^ (0x9e3779b97f4a7c15ULL * (test + 1)));
        fold_rng.shuffle(others);
        others.resize(static_cast<std::size_t>(size));
        std::set<std::string> train_ids;
        for (std::size_t i : others) train_ids.insert(docs[i].doc_id);

        std::vector<GoldAnnotation> train_anns;
        std::vector<GoldAnnotation> test_anns;
        for (const GoldAnnotation& ann : annotations) {
          if (ann.doc_id == docs[test].doc_id) {
            test_anns.push_back(ann);
          } else if (train_ids.count(ann.doc_id)) {
            train_anns.push_back(ann);
          }
        }
        FoldModels models =
            train_fold_models(docs, train_anns, thes, counts, cfg, docs[test].doc_id);
        evaluate_document(docs[test], test_anns, lexicon, thes, counts, models, cfg,
                          records);
      }
      sort_records(records);
      out.push_back({size, accuracy_at_k(records, 1)});
    }
  } else {
    if (!unannotated_docs) {
      throw DataError("unannotated sweep requires an unannotated corpus");
    }
    for (long size : sizes) {
      if (size < 0) throw DataError("sweep size must be >= 0");
      if (size > static_cast<long>(unannotated_docs->size())) {
        throw DataError("unannotated sweep size " + std::to_string(size) +
                        " exceeds the " + std::to_string(unannotated_docs->size()) +
                        " documents available");
      }
    }
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < unannotated_docs->size(); ++i) order.push_back(i);
    Rng rng(seed);
    rng.shuffle(order);
    for (long size : sizes) {
      std::vector<AnalyzedDocument> subset;
      subset.reserve(static_cast<std::size_t>(size));
      for (long i = 0; i < size; ++i) subset.push_back((*unannotated_docs)[order[i]]);
      CooccurrenceCounts sized = extract_cooccurrences(subset, thes);
      std::vector<EvalRecord> records = loocv(docs, annotations, lexicon, thes, &sized, cfg);
      out.push_back({size, accuracy_at_k(records, 1)});
    }
  }
  return out;
}

EvalMetrics compute_metrics(std::span<const EvalRecord> records, std::span<const int> ks) {
  EvalMetrics m;
  double cand_sum = 0.0;
  long cand_n = 0;
  for (const EvalRecord& r : records) {
    if (r.has_gold) {
      ++m.gold_total;
      if (r.exophoric) ++m.gold_exophoric;
      if (r.detected) {
        ++m.detected_gold;
        if (!r.exophoric) {
          ++m.resolvable;
          cand_sum += r.candidate_count;
          ++cand_n;
        }
      }
      if (r.lexicon_gap) ++m.lexicon_gap_misses;
    } else if (r.detected) {
      ++m.spurious_detections;
    }
  }
  if (cand_n > 0) {
    m.mean_candidates = cand_sum / static_cast<double>(cand_n);
    if (m.mean_candidates > 0.0) m.random_floor = 1.0 / m.mean_candidates;
  }
  for (int k : ks) m.accuracy[k] = accuracy_at_k(records, k);
  return m;
}

namespace {

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

std::string render_metrics_text(const EvalMetrics& m, ModelKind model) {
  std::ostringstream os;
  os << "model                 " << to_string(model) << '\n';
  os << "gold zero pronouns    " << m.gold_total << " (exophoric " << m.gold_exophoric
     << ")\n";
  os << "detected gold         " << m.detected_gold << '\n';
  os << "lexicon-gap misses    " << m.lexicon_gap_misses << '\n';
  os << "spurious detections   " << m.spurious_detections << '\n';
  os << "resolvable            " << m.resolvable << '\n';
  os << "mean candidates       " << fixed4(m.mean_candidates) << '\n';
  os << "random-pick floor     "
     << (m.random_floor ? fixed4(*m.random_floor) : std::string("n/a")) << '\n';
  for (const auto& [k, acc] : m.accuracy) {
    os << "accuracy@" << k << "            "
       << (acc ? fixed4(*acc) : std::string("n/a")) << '\n';
  }
  os << "note: exophoric gold zero pronouns count toward detection but are excluded\n"
     << "from resolution accuracy denominators.\n";
  return os.str();
}

std::string metrics_to_json(const EvalMetrics& m, ModelKind model) {
  json j;
  j["model"] = to_string(model);
  j["gold_total"] = m.gold_total;
  j["gold_exophoric"] = m.gold_exophoric;
  j["detected_gold"] = m.detected_gold;
  j["lexicon_gap_misses"] = m.lexicon_gap_misses;
  j["spurious_detections"] = m.spurious_detections;
  j["resolvable"] = m.resolvable;
  j["mean_candidates"] = m.mean_candidates;
  j["random_floor"] = m.random_floor ? json(*m.random_floor) : json();
  json acc = json::object();
  for (const auto& [k, v] : m.accuracy) acc[std::to_string(k)] = v ? json(*v) : json();
  j["accuracy"] = std::move(acc);
  return j.dump(2) + "\n";
}

std::string serialize_records(std::span<const EvalRecord> records) {
  std::ostringstream os;
  for (const EvalRecord& r : records) {
    json j;
    j["doc_id"] = r.doc_id;
    j["sentence"] = r.sentence;
    j["predicate_token"] = r.predicate_token;
    j["case"] = to_string(r.case_marker);
    j["verb"] = r.verb;
    j["has_gold"] = r.has_gold;
    j["exophoric"] = r.exophoric;
    j["detected"] = r.detected;
    j["lexicon_gap"] = r.lexicon_gap;
    if (r.gold) {
      j["gold"] = {{"sentence", r.gold->sentence}, {"token", r.gold->token}};
    } else {
      j["gold"] = nullptr;
    }
    json output = json::array();
    for (const RankedAnswer& a : r.output) {
      output.push_back(
          {{"sentence", a.location.sentence}, {"token", a.location.token}, {"prob", a.prob}});
    }
    j["output"] = std::move(output);
    j["certainty"] = r.certainty;
    j["candidates"] = r.candidate_count;
    os << j.dump() << '\n';
  }
  return os.str();
}

void write_curve_csv(std::span<const CurvePoint> points, std::ostream& out) {
  out << "threshold,coverage,accuracy,coverage_num,coverage_den,accuracy_num,accuracy_den\n";
  for (const CurvePoint& pt : points) {
    out << format_number(pt.threshold) << ',' << format_number(pt.coverage) << ','
        << (pt.accuracy ? format_number(*pt.accuracy) : std::string()) << ','
        << pt.coverage_num << ',' << pt.coverage_den << ',' << pt.accuracy_num << ','
        << pt.accuracy_den << '\n';
  }
}

void write_sweep_csv(std::span<const SweepPoint> points, std::ostream& out) {
  out << "size,accuracy_at_1\n";
  for (const SweepPoint& pt : points) {
    out << pt.size << ','
        << (pt.accuracy_at_1 ? format_number(*pt.accuracy_at_1) : std::string()) << '\n';
  }
}

}  // namespace zeroref
