#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "zeroref/corpus.hpp"
#include "zeroref/resolution.hpp"

namespace zeroref {

// Hand-tuned salience weights for the non-probabilistic baseline ranker.
struct RuleTable {
  std::map<std::string, int> particle_weights;
  int unknown_particle_weight = 0;
  int distance_penalty = 1;
  int relative_clause_penalty = 2;
  int conjunctive_bonus = 1;
  // Particle lemmas that link two clauses; a candidate followed by one of
  // these before the predicate gets the bonus.
  std::set<std::string> conjunctive_particles;

  static RuleTable defaults();
};

// Flat "key = value" file; unspecified keys keep their defaults.
RuleTable load_rules(std::istream& in);
RuleTable load_rules_file(const std::string& path);
void save_rules(const RuleTable& rules, std::ostream& out);

// True when the candidate sits in the predicate's sentence and a conjunctive
// particle token stands strictly between the two.
bool conjunctive_link(const AnalyzedDocument& doc, const ZeroPronoun& zp,
                      const AntecedentCandidate& cand,
                      const std::set<std::string>& conjunctive_particles);

int rule_score(const RuleTable& rules, const AntecedentCandidate& cand, bool conjunctive);

// Rank by score, recency breaking ties (the later candidate wins).
std::vector<ScoredCandidate> rank_by_rules(const RuleTable& rules,
                                           const AnalyzedDocument& doc,
                                           const ZeroPronoun& zp,
                                           std::span<const AntecedentCandidate> candidates,
                                           int k);

}  // namespace zeroref
