#include "zeroref/cooccurrence.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "zeroref/error.hpp"
#include "zeroref/util.hpp"

namespace zeroref {

void ClassCountTable::add(const SemClass& cls, const std::string& verb, CaseMarker c,
                          double weight) {
  int ci = static_cast<int>(c);
  by_class_[cls][{verb, ci}] += weight;
  vc_totals_[{verb, ci}] += weight;
  nc_marginals_[{cls, ci}] += weight;
  c_totals_[ci] += weight;
}

void ClassCountTable::merge(const ClassCountTable& other) {
  for (const auto& [cls, verbs] : other.by_class_) {
    for (const auto& [vc, w] : verbs) {
      add(cls, vc.first, static_cast<CaseMarker>(vc.second), w);
    }
  }
}

double ClassCountTable::count(const SemClass& cls, const std::string& verb,
                              CaseMarker c) const {
  auto it = by_class_.find(cls);
  if (it == by_class_.end()) return 0.0;
  auto jt = it->second.find({verb, static_cast<int>(c)});
  return jt == it->second.end() ? 0.0 : jt->second;
}

double ClassCountTable::vc_total(const std::string& verb, CaseMarker c) const {
  auto it = vc_totals_.find({verb, static_cast<int>(c)});
  return it == vc_totals_.end() ? 0.0 : it->second;
}

double ClassCountTable::nc_marginal(const SemClass& cls, CaseMarker c) const {
  auto it = nc_marginals_.find({cls, static_cast<int>(c)});
  return it == nc_marginals_.end() ? 0.0 : it->second;
}

double ClassCountTable::c_total(CaseMarker c) const {
  return c_totals_[static_cast<int>(c)];
}

std::set<SemClass> ClassCountTable::observed_classes() const {
  std::set<SemClass> out;
  for (const auto& [cls, verbs] : by_class_) {
    (void)verbs;
    out.insert(cls);
  }
  return out;
}

std::vector<ClassCountTable::Cell> ClassCountTable::cells() const {
  std::vector<Cell> out;
  for (const auto& [cls, verbs] : by_class_) {
    for (const auto& [vc, w] : verbs) {
      out.emplace_back(cls, vc.first, static_cast<CaseMarker>(vc.second), w);
    }
  }
  return out;
}

void CooccurrenceCounts::add_observation(const std::string& verb, CaseMarker c,
                                         std::span<const SemClass> classes,
                                         const ExtractOptions& opts) {
  verb_counts[verb] += 1.0;
  verb_case_counts[{verb, static_cast<int>(c)}] += 1.0;
  total_pairs += 1.0;
  if (classes.empty()) return;
  double w = opts.fractional_classes ? 1.0 / static_cast<double>(classes.size()) : 1.0;
  for (const SemClass& cls : classes) class_counts.add(cls, verb, c, w);
}

void CooccurrenceCounts::merge(const CooccurrenceCounts& other) {
  for (const auto& [verb, n] : other.verb_counts) verb_counts[verb] += n;
  for (const auto& [vc, n] : other.verb_case_counts) verb_case_counts[vc] += n;
  class_counts.merge(other.class_counts);
  total_pairs += other.total_pairs;
}

double CooccurrenceCounts::verb_count(const std::string& verb) const {
  auto it = verb_counts.find(verb);
  return it == verb_counts.end() ? 0.0 : it->second;
}

double CooccurrenceCounts::verb_case_count(const std::string& verb, CaseMarker c) const {
  auto it = verb_case_counts.find({verb, static_cast<int>(c)});
  return it == verb_case_counts.end() ? 0.0 : it->second;
}

void CooccurrenceCounts::save(std::ostream& out) const {
  out << "# noun-case-verb co-occurrence counts\n";
  for (const auto& [verb, n] : verb_counts) {
    out << "V\t" << verb << '\t' << format_number(n) << '\n';
  }
  for (const auto& [vc, n] : verb_case_counts) {
    out << "VC\t" << vc.first << '\t' << to_string(static_cast<CaseMarker>(vc.second))
        << '\t' << format_number(n) << '\n';
  }
  for (const auto& [cls, verb, c, n] : class_counts.cells()) {
    out << "NVC\t" << cls << '\t' << verb << '\t' << to_string(c) << '\t'
        << format_number(n) << '\n';
  }
}

CooccurrenceCounts CooccurrenceCounts::load(std::istream& in) {
  CooccurrenceCounts counts;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    std::vector<std::string> f = split_fields(std::string(body), '\t');
    const std::string where = "line " + std::to_string(line_no);
    if (f[0] == "V" && f.size() == 3) {
      counts.verb_counts[f[1]] += parse_number(f[2], where);
    } else if (f[0] == "VC" && f.size() == 4) {
      auto c = case_from_string(f[2]);
      if (!c) throw DataError(where + ": unknown case '" + f[2] + "'");
      counts.verb_case_counts[{f[1], static_cast<int>(*c)}] += parse_number(f[3], where);
    } else if (f[0] == "NVC" && f.size() == 5) {
      auto c = case_from_string(f[3]);
      if (!c) throw DataError(where + ": unknown case '" + f[3] + "'");
      counts.class_counts.add(f[1], f[2], *c, parse_number(f[4], where));
    } else {
      throw DataError(where + ": unrecognized row '" + f[0] + "'");
    }
  }
  for (const auto& [verb, n] : counts.verb_counts) {
    (void)verb;
    counts.total_pairs += n;
  }
  return counts;
}

CooccurrenceCounts CooccurrenceCounts::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return load(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

CooccurrenceCounts extract_cooccurrences(std::span<const AnalyzedDocument> docs,
                                         const Thesaurus& thes,
                                         const ExtractOptions& opts) {
  CooccurrenceCounts counts;
  for (const AnalyzedDocument& doc : docs) {
    for (const Sentence& sent : doc.sentences) {
      int n = static_cast<int>(sent.tokens.size());
      for (int ti = 0; ti < n; ++ti) {
        const Token& tok = sent.tokens[ti];
        if (tok.pos != Pos::kNoun || !tok.particle) continue;
        auto c = case_from_string(*tok.particle);
        if (!c) continue;
        // A noun modifies the verb of highest proximity: the nearest verb to
        // its right, or its dependency head when the parse says so and no
        // verb follows in the sentence.
        const Token* verb = nullptr;
        for (int tj = ti + 1; tj < n; ++tj) {
          if (sent.tokens[tj].pos == Pos::kVerb) {
            verb = &sent.tokens[tj];
            break;
          }
        }
        if (!verb && tok.head && *tok.head >= 0 && *tok.head < n &&
            sent.tokens[*tok.head].pos == Pos::kVerb) {
          verb = &sent.tokens[*tok.head];
        }
        if (!verb) continue;
        std::vector<SemClass> classes = semantic_classes(thes, tok.lemma);
        counts.add_observation(verb->lemma, *c, classes, opts);
      }
    }
  }
  return counts;
}

double p_zero(const CooccurrenceCounts& counts, CaseMarker c, const std::string& verb,
              const PZeroOptions& opts) {
  if (c == CaseMarker::kGa) return 1.0;
  double fv = counts.verb_count(verb);
  if (fv <= 0.0 || fv < opts.min_verb_count) return 0.0;
  double ratio = counts.verb_case_count(verb, c) / fv;
  if (opts.exponent != 1.0) ratio = std::pow(ratio, opts.exponent);
  return ratio;
}

double smoothed_class_prob(const ClassCountTable& table, const SemClass& cls,
                           const std::string& verb, CaseMarker c, double lambda,
                           std::size_t inventory_size) {
  if (lambda < 0.0) throw std::invalid_argument("smoothing constant must be >= 0");
  double n = static_cast<double>(inventory_size == 0 ? 1 : inventory_size);
  double svc = table.vc_total(verb, c);
  if (svc > 0.0) return (table.count(cls, verb, c) + lambda) / (svc + lambda * n);
  double sc = table.c_total(c);
  if (sc > 0.0) return (table.nc_marginal(cls, c) + lambda) / (sc + lambda * n);
  return 1.0 / n;
}

double semantic_prob_sem2(const CooccurrenceCounts& counts, const SemClass& cls,
                          const std::string& verb, CaseMarker c, double lambda,
                          std::size_t inventory_size) {
  return smoothed_class_prob(counts.class_counts, cls, verb, c, lambda, inventory_size);
}

}  // namespace zeroref
