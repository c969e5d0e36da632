#include "zeroref/resolution.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "zeroref/error.hpp"
#include "zeroref/util.hpp"

namespace zeroref {

std::vector<AntecedentCandidate> extract_candidates(const AnalyzedDocument& doc,
                                                    const ZeroPronoun& zp, int window,
                                                    const Thesaurus& thes) {
  if (window < 0) throw std::invalid_argument("candidate window must be >= 0");
  if (zp.sentence < 0 || zp.sentence >= static_cast<int>(doc.sentences.size())) {
    throw std::invalid_argument("zero pronoun outside document '" + doc.doc_id + "'");
  }
  std::vector<AntecedentCandidate> out;
  int first = std::max(0, zp.sentence - window);
  for (int s = first; s <= zp.sentence; ++s) {
    for (const Token& t : doc.sentences[s].tokens) {
      if (s == zp.sentence && t.index >= zp.predicate_token) break;
      if (t.pos != Pos::kNoun) continue;
      AntecedentCandidate cand;
      cand.location = {s, t.index};
      cand.lemma = t.lemma;
      cand.particle = t.particle;
      cand.distance = zp.sentence - s;
      cand.in_relative_clause = t.in_relative_clause;
      cand.classes = semantic_classes(thes, t.lemma);
      out.push_back(std::move(cand));
    }
  }
  return out;
}

std::vector<TrainingPair> build_training_pairs(
    const std::vector<AnalyzedDocument>& docs,
    const std::vector<GoldAnnotation>& annotations, const Thesaurus& thes) {
  std::map<std::string, const AnalyzedDocument*> index;
  for (const AnalyzedDocument& d : docs) index[d.doc_id] = &d;

  std::vector<TrainingPair> out;
  for (const GoldAnnotation& ann : annotations) {
    if (!ann.antecedent) continue;
    auto it = index.find(ann.doc_id);
    if (it == index.end()) throw DataError("unknown doc_id '" + ann.doc_id + "'");
    const AnalyzedDocument& doc = *it->second;
    if (ann.predicate.sentence >= static_cast<int>(doc.sentences.size())) {
      throw DataError("annotation outside document '" + ann.doc_id + "'");
    }
    const Sentence& psent = doc.sentences[ann.predicate.sentence];
    const PredicateInstance* pred = nullptr;
    for (const PredicateInstance& p : psent.predicates) {
      if (p.token_index == ann.predicate.token) pred = &p;
    }
    if (!pred) {
      throw DataError("no predicate at s" + std::to_string(ann.predicate.sentence) + "t" +
                      std::to_string(ann.predicate.token) + " in doc '" + ann.doc_id + "'");
    }
    const TokenRef& ref = *ann.antecedent;
    if (ref.sentence >= static_cast<int>(doc.sentences.size()) ||
        ref.token >= static_cast<int>(doc.sentences[ref.sentence].tokens.size())) {
      throw DataError("antecedent out of bounds in doc '" + ann.doc_id + "'");
    }
    const Token& tok = doc.sentences[ref.sentence].tokens[ref.token];
    if (tok.pos != Pos::kNoun) {
      throw DataError("antecedent is not a noun in doc '" + ann.doc_id + "'");
    }

    TrainingPair pair;
    pair.zero_pronoun.doc_id = ann.doc_id;
    pair.zero_pronoun.sentence = ann.predicate.sentence;
    pair.zero_pronoun.predicate_token = ann.predicate.token;
    pair.zero_pronoun.verb = pred->verb;
    pair.zero_pronoun.case_marker = ann.case_marker;
    pair.antecedent.location = ref;
    pair.antecedent.lemma = tok.lemma;
    pair.antecedent.particle = tok.particle;
    pair.antecedent.distance = ann.predicate.sentence - ref.sentence;
    pair.antecedent.in_relative_clause = tok.in_relative_clause;
    pair.antecedent.classes = semantic_classes(thes, tok.lemma);
    out.push_back(std::move(pair));
  }
  return out;
}

SyntacticModel SyntacticModel::train(std::span<const TrainingPair> pairs, double lambda,
                                     int max_distance_bin) {
  if (pairs.empty()) throw DataError("cannot train syntactic model: no training pairs");
  if (lambda < 0.0) throw std::invalid_argument("smoothing constant must be >= 0");
  if (max_distance_bin < 0) throw std::invalid_argument("max_distance_bin must be >= 0");

  SyntacticModel m;
  m.lambda_ = lambda;
  m.max_distance_bin_ = max_distance_bin;
  m.distance_counts_.assign(static_cast<std::size_t>(max_distance_bin) + 1, 0.0);
  for (const TrainingPair& pair : pairs) {
    const AntecedentCandidate& a = pair.antecedent;
    int ci = static_cast<int>(pair.zero_pronoun.case_marker);
    const std::string key = a.particle ? *a.particle : std::string(kUnknownParticle);
    m.particle_counts_[key][ci] += 1.0;
    m.case_totals_[ci] += 1.0;
    m.distance_counts_[m.distance_bin(a.distance)] += 1.0;
    m.distance_total_ += 1.0;
    m.relative_counts_[a.in_relative_clause ? 1 : 0] += 1.0;
    m.relative_total_ += 1.0;
  }
  m.particle_counts_.try_emplace(kUnknownParticle);
  return m;
}

int SyntacticModel::distance_bin(int distance) const {
  if (distance < 0) return 0;
  return std::min(distance, max_distance_bin_);
}

double SyntacticModel::particle_given_case(const std::optional<std::string>& particle,
                                           CaseMarker c) const {
  const std::string key = particle ? *particle : std::string(kUnknownParticle);
  auto it = particle_counts_.find(key);
  if (it == particle_counts_.end()) it = particle_counts_.find(kUnknownParticle);
  double count = it == particle_counts_.end() ? 0.0 : it->second[static_cast<int>(c)];
  double support = static_cast<double>(std::max<std::size_t>(particle_counts_.size(), 1));
  double denom = case_totals_[static_cast<int>(c)] + lambda_ * support;
  if (denom <= 0.0) return 1.0 / support;
  return (count + lambda_) / denom;
}

double SyntacticModel::distance_prob(int distance) const {
  double bins = static_cast<double>(distance_counts_.size());
  double denom = distance_total_ + lambda_ * bins;
  if (denom <= 0.0) return 1.0 / bins;
  return (distance_counts_[distance_bin(distance)] + lambda_) / denom;
}

double SyntacticModel::relative_prob(bool in_relative_clause) const {
  double denom = relative_total_ + lambda_ * 2.0;
  if (denom <= 0.0) return 0.5;
  return (relative_counts_[in_relative_clause ? 1 : 0] + lambda_) / denom;
}

std::vector<std::string> SyntacticModel::particle_support() const {
  std::vector<std::string> out;
  for (const auto& [p, row] : particle_counts_) {
    (void)row;
    out.push_back(p);
  }
  return out;
}

void SyntacticModel::save(std::ostream& out) const {
  out << "# syntactic factor counts\n";
  out << "lambda\t" << format_number(lambda_) << '\n';
  out << "max_distance_bin\t" << max_distance_bin_ << '\n';
  for (const auto& [p, row] : particle_counts_) {
    out << "pc\t" << p;
    for (int ci = 0; ci < kCaseCount; ++ci) out << '\t' << format_number(row[ci]);
    out << '\n';
  }
  for (std::size_t b = 0; b < distance_counts_.size(); ++b) {
    out << "d\t" << b << '\t' << format_number(distance_counts_[b]) << '\n';
  }
  out << "r\t0\t" << format_number(relative_counts_[0]) << '\n';
  out << "r\t1\t" << format_number(relative_counts_[1]) << '\n';
}

SyntacticModel SyntacticModel::load(std::istream& in) {
  SyntacticModel m;
  bool have_lambda = false, have_bin = false;
  std::map<int, double> dist;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    std::vector<std::string> f = split_fields(std::string(body), '\t');
    const std::string where = "line " + std::to_string(line_no);
    if (f[0] == "lambda" && f.size() == 2) {
      m.lambda_ = parse_number(f[1], where);
      have_lambda = true;
    } else if (f[0] == "max_distance_bin" && f.size() == 2) {
      m.max_distance_bin_ = static_cast<int>(parse_integer(f[1], where));
      have_bin = true;
    } else if (f[0] == "pc" && f.size() == 2 + kCaseCount) {
      auto& row = m.particle_counts_[f[1]];
      for (int ci = 0; ci < kCaseCount; ++ci) {
        row[ci] += parse_number(f[2 + ci], where);
      }
    } else if (f[0] == "d" && f.size() == 3) {
      dist[static_cast<int>(parse_integer(f[1], where))] += parse_number(f[2], where);
    } else if (f[0] == "r" && f.size() == 3) {
      long which = parse_integer(f[1], where);
      if (which != 0 && which != 1) throw DataError(where + ": bad relative flag");
      m.relative_counts_[which] += parse_number(f[2], where);
    } else {
      throw DataError(where + ": unrecognized row '" + f[0] + "'");
    }
  }
  if (!have_lambda || !have_bin) {
    throw DataError("syntactic model: missing lambda or max_distance_bin");
  }
  if (m.max_distance_bin_ < 0) throw DataError("syntactic model: bad max_distance_bin");
  m.distance_counts_.assign(static_cast<std::size_t>(m.max_distance_bin_) + 1, 0.0);
  for (const auto& [b, w] : dist) {
    if (b < 0 || b > m.max_distance_bin_) {
      throw DataError("syntactic model: distance bin out of range");
    }
    m.distance_counts_[b] = w;
    m.distance_total_ += w;
  }
  for (const auto& [p, row] : m.particle_counts_) {
    (void)p;
    for (int ci = 0; ci < kCaseCount; ++ci) m.case_totals_[ci] += row[ci];
  }
  m.relative_total_ = m.relative_counts_[0] + m.relative_counts_[1];
  m.particle_counts_.try_emplace(kUnknownParticle);
  return m;
}

SyntacticModel SyntacticModel::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return load(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

SemanticModel SemanticModel::train_annotated(std::span<const TrainingPair> pairs,
                                             const Thesaurus& thes, double lambda) {
  if (pairs.empty()) throw DataError("cannot train semantic model: no training pairs");
  if (lambda < 0.0) throw std::invalid_argument("smoothing constant must be >= 0");
  SemanticModel m;
  m.mode_ = Mode::kAnnotated;
  m.lambda_ = lambda;
  m.inventory_ = thes.inventory;
  for (const TrainingPair& pair : pairs) {
    for (const SemClass& cls : pair.antecedent.classes) {
      m.table_.add(cls, pair.zero_pronoun.verb, pair.zero_pronoun.case_marker, 1.0);
    }
  }
  for (const SemClass& cls : m.table_.observed_classes()) m.inventory_.insert(cls);
  return m;
}

SemanticModel SemanticModel::from_cooccurrences(const CooccurrenceCounts& counts,
                                                const Thesaurus& thes, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("smoothing constant must be >= 0");
  SemanticModel m;
  m.mode_ = Mode::kCooccurrence;
  m.lambda_ = lambda;
  m.inventory_ = thes.inventory;
  m.table_ = counts.class_counts;
  for (const SemClass& cls : m.table_.observed_classes()) m.inventory_.insert(cls);
  return m;
}

double SemanticModel::class_prob(const SemClass& cls, const std::string& verb,
                                 CaseMarker c) const {
  return smoothed_class_prob(table_, cls, verb, c, lambda_, inventory_.size());
}

double SemanticModel::max_class_prob(std::span<const SemClass> classes,
                                     const std::string& verb, CaseMarker c) const {
  double best = 0.0;
  for (const SemClass& cls : classes) best = std::max(best, class_prob(cls, verb, c));
  return best;
}

void SemanticModel::save(std::ostream& out) const {
  out << "# semantic class counts\n";
  out << "mode\t" << (mode_ == Mode::kAnnotated ? "annotated" : "cooccurrence") << '\n';
  out << "lambda\t" << format_number(lambda_) << '\n';
  for (const SemClass& cls : inventory_) out << "class\t" << cls << '\n';
  for (const auto& [cls, verb, c, w] : table_.cells()) {
    out << "nvc\t" << cls << '\t' << verb << '\t' << to_string(c) << '\t'
        << format_number(w) << '\n';
  }
}

SemanticModel SemanticModel::load(std::istream& in) {
  SemanticModel m;
  bool have_mode = false, have_lambda = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    std::vector<std::string> f = split_fields(std::string(body), '\t');
    const std::string where = "line " + std::to_string(line_no);
    if (f[0] == "mode" && f.size() == 2) {
      if (f[1] == "annotated") {
        m.mode_ = Mode::kAnnotated;
      } else if (f[1] == "cooccurrence") {
        m.mode_ = Mode::kCooccurrence;
      } else {
        throw DataError(where + ": unknown mode '" + f[1] + "'");
      }
      have_mode = true;
    } else if (f[0] == "lambda" && f.size() == 2) {
      m.lambda_ = parse_number(f[1], where);
      have_lambda = true;
    } else if (f[0] == "class" && f.size() == 2) {
      m.inventory_.insert(f[1]);
    } else if (f[0] == "nvc" && f.size() == 5) {
      auto c = case_from_string(f[3]);
      if (!c) throw DataError(where + ": unknown case '" + f[3] + "'");
      m.table_.add(f[1], f[2], *c, parse_number(f[4], where));
      m.inventory_.insert(f[1]);
    } else {
      throw DataError(where + ": unrecognized row '" + f[0] + "'");
    }
  }
  if (!have_mode || !have_lambda) throw DataError("semantic model: missing mode or lambda");
  return m;
}

SemanticModel SemanticModel::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return load(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

double ResolutionScorer::resolution_prob(const ZeroPronoun& zp,
                                         const AntecedentCandidate& cand) const {
  bool use_syn = mode != ScoreMode::kSemanticOnly;
  bool use_sem = mode != ScoreMode::kSyntacticOnly;
  if (use_syn && !syntactic) {
    throw std::invalid_argument("resolution scorer: syntactic model missing");
  }
  if (use_sem && !semantic) {
    throw std::invalid_argument("resolution scorer: semantic model missing");
  }
  double p = 1.0;
  if (use_syn) {
    p *= syntactic->particle_given_case(cand.particle, zp.case_marker);
    p *= syntactic->distance_prob(cand.distance);
    p *= syntactic->relative_prob(cand.in_relative_clause);
  }
  if (use_sem) {
    p *= semantic->max_class_prob(cand.classes, zp.verb, zp.case_marker);
  }
  return p;
}

std::vector<ScoredCandidate> resolve(const ResolutionScorer& scorer, const ZeroPronoun& zp,
                                     std::span<const AntecedentCandidate> candidates,
                                     int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  std::vector<ScoredCandidate> rows;
  rows.reserve(candidates.size());
  for (const AntecedentCandidate& cand : candidates) {
    ScoredCandidate row;
    row.candidate = cand;
    row.resolution_prob = scorer.resolution_prob(zp, cand);
    row.combined_prob = row.resolution_prob * zp.detection_prob;
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ScoredCandidate& a, const ScoredCandidate& b) {
                     if (a.combined_prob != b.combined_prob) {
                       return a.combined_prob > b.combined_prob;
                     }
                     if (a.candidate.distance != b.candidate.distance) {
                       return a.candidate.distance < b.candidate.distance;
                     }
                     return b.candidate.location < a.candidate.location;
                   });
  if (static_cast<int>(rows.size()) > k) rows.resize(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = static_cast<int>(i) + 1;
  return rows;
}

double certainty_from_probs(double p1, double p2, double t) {
  if (t < 0.0 || t > 1.0) throw std::invalid_argument("certainty weight t must be within [0,1]");
  return t * p1 + (1.0 - t) * (p1 - p2);
}

double certainty(std::span<const ScoredCandidate> scored, const CertaintyConfig& cfg) {
  if (scored.empty()) return 0.0;
  double p1 = scored[0].combined_prob;
  double p2 = scored.size() > 1 ? scored[1].combined_prob : 0.0;
  return certainty_from_probs(p1, p2, cfg.t);
}

}  // namespace zeroref
