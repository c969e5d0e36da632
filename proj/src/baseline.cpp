#include "zeroref/baseline.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "zeroref/error.hpp"
#include "zeroref/util.hpp"

namespace zeroref {

RuleTable RuleTable::defaults() {
  RuleTable r;
  r.particle_weights = {{"wa", 4}, {"ga", 3}, {"wo", 2}, {"ni", 1}};
  r.unknown_particle_weight = 0;
  r.distance_penalty = 1;
  r.relative_clause_penalty = 2;
  r.conjunctive_bonus = 1;
  r.conjunctive_particles = {"te", "ba", "kara", "node", "noni", "shi", "nagara"};
  return r;
}

RuleTable load_rules(std::istream& in) {
  RuleTable rules = RuleTable::defaults();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::string_view body = trim(line);
    if (body.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) throw DataError(where + ": expected 'key = value'");
    std::string key(trim(body.substr(0, eq)));
    std::string value(trim(body.substr(eq + 1)));
    if (key.empty() || value.empty()) throw DataError(where + ": expected 'key = value'");

    if (key.rfind("particle.", 0) == 0) {
      std::string particle = key.substr(9);
      if (particle.empty()) throw DataError(where + ": empty particle name");
      rules.particle_weights[particle] = static_cast<int>(parse_integer(value, where));
    } else if (key == "unknown_particle") {
      rules.unknown_particle_weight = static_cast<int>(parse_integer(value, where));
    } else if (key == "distance_penalty") {
      rules.distance_penalty = static_cast<int>(parse_integer(value, where));
    } else if (key == "relative_clause_penalty") {
      rules.relative_clause_penalty = static_cast<int>(parse_integer(value, where));
    } else if (key == "conjunctive_bonus") {
      rules.conjunctive_bonus = static_cast<int>(parse_integer(value, where));
    } else if (key == "conjunctive_particles") {
      rules.conjunctive_particles.clear();
      for (const std::string& piece : split_fields(value, ',')) {
        std::string p(trim(piece));
        if (!p.empty()) rules.conjunctive_particles.insert(p);
      }
    } else {
      throw DataError(where + ": unknown key '" + key + "'");
    }
  }
  return rules;
}

RuleTable load_rules_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return load_rules(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void save_rules(const RuleTable& rules, std::ostream& out) {
  for (const auto& [p, w] : rules.particle_weights) {
    out << "particle." << p << " = " << w << '\n';
  }
  out << "unknown_particle = " << rules.unknown_particle_weight << '\n';
  out << "distance_penalty = " << rules.distance_penalty << '\n';
  out << "relative_clause_penalty = " << rules.relative_clause_penalty << '\n';
  out << "conjunctive_bonus = " << rules.conjunctive_bonus << '\n';
  out << "conjunctive_particles = ";
  bool first = true;
  for (const std::string& p : rules.conjunctive_particles) {
    if (!first) out << ',';
    out << p;
    first = false;
  }
  out << '\n';
}

bool conjunctive_link(const AnalyzedDocument& doc, const ZeroPronoun& zp,
                      const AntecedentCandidate& cand,
                      const std::set<std::string>& conjunctive_particles) {
  if (cand.location.sentence != zp.sentence) return false;
  if (zp.sentence < 0 || zp.sentence >= static_cast<int>(doc.sentences.size())) return false;
  const std::vector<Token>& toks = doc.sentences[zp.sentence].tokens;
  int stop = std::min(zp.predicate_token, static_cast<int>(toks.size()));
  for (int i = cand.location.token + 1; i < stop; ++i) {
    if (toks[i].pos != Pos::kParticle) continue;
    if (conjunctive_particles.count(toks[i].lemma) ||
        conjunctive_particles.count(toks[i].surface)) {
      return true;
    }
  }
  return false;
}

int rule_score(const RuleTable& rules, const AntecedentCandidate& cand, bool conjunctive) {
  int w = rules.unknown_particle_weight;
  if (cand.particle) {
    auto it = rules.particle_weights.find(*cand.particle);
    if (it != rules.particle_weights.end()) w = it->second;
  }
  int score = w - cand.distance * rules.distance_penalty;
  if (cand.in_relative_clause) score -= rules.relative_clause_penalty;
  if (conjunctive) score += rules.conjunctive_bonus;
  return score;
}

std::vector<ScoredCandidate> rank_by_rules(const RuleTable& rules,
                                           const AnalyzedDocument& doc,
                                           const ZeroPronoun& zp,
                                           std::span<const AntecedentCandidate> candidates,
                                           int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  std::vector<ScoredCandidate> rows;
  rows.reserve(candidates.size());
  for (const AntecedentCandidate& cand : candidates) {
    bool conj = conjunctive_link(doc, zp, cand, rules.conjunctive_particles);
    ScoredCandidate row;
    row.candidate = cand;
    row.resolution_prob = static_cast<double>(rule_score(rules, cand, conj));
    row.combined_prob = row.resolution_prob;
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ScoredCandidate& a, const ScoredCandidate& b) {
                     if (a.combined_prob != b.combined_prob) {
                       return a.combined_prob > b.combined_prob;
                     }
                     return b.candidate.location < a.candidate.location;
                   });
  if (static_cast<int>(rows.size()) > k) rows.resize(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = static_cast<int>(i) + 1;
  return rows;
}

}  // namespace zeroref
