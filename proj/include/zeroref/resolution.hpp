#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "zeroref/cooccurrence.hpp"
#include "zeroref/corpus.hpp"
#include "zeroref/lexicon.hpp"

namespace zeroref {

// Bucket for case particles unseen in training, and for candidates that
// carry no particle at all.
inline constexpr const char* kUnknownParticle = "<unk>";

struct AntecedentCandidate {
  TokenRef location;
  std::string lemma;
  std::optional<std::string> particle;
  int distance = 0;  // sentence gap to the zero pronoun, 0 = same sentence
  bool in_relative_clause = false;
  std::vector<SemClass> classes;
};

// A gold zero pronoun paired with the candidate features of its antecedent.
struct TrainingPair {
  ZeroPronoun zero_pronoun;
  AntecedentCandidate antecedent;
};

// Nouns in sentences [zp.sentence - window, zp.sentence]; within the zero
// pronoun's own sentence only tokens before the predicate qualify.
std::vector<AntecedentCandidate> extract_candidates(const AnalyzedDocument& doc,
                                                    const ZeroPronoun& zp, int window,
                                                    const Thesaurus& thes);

// Feature pairs from every endophoric gold annotation. Exophoric annotations
// contribute nothing (they have no antecedent features).
std::vector<TrainingPair> build_training_pairs(
    const std::vector<AnalyzedDocument>& docs,
    const std::vector<GoldAnnotation>& annotations, const Thesaurus& thes);

// P(p|c), P(d) and P(r) estimated by relative frequency with additive
// smoothing. Distances are binned at max_distance_bin ("5+" by default).
class SyntacticModel {
 public:
  static SyntacticModel train(std::span<const TrainingPair> pairs, double lambda,
                              int max_distance_bin = 5);

  double particle_given_case(const std::optional<std::string>& particle, CaseMarker c) const;
  double distance_prob(int distance) const;
  double relative_prob(bool in_relative_clause) const;

  std::vector<std::string> particle_support() const;  // includes the unknown bucket
  int distance_bin(int distance) const;
  int max_distance_bin() const { return max_distance_bin_; }
  double lambda() const { return lambda_; }

  void save(std::ostream& out) const;
  static SyntacticModel load(std::istream& in);
  static SyntacticModel load_file(const std::string& path);

 private:
  double lambda_ = 0.0;
  int max_distance_bin_ = 5;
  std::map<std::string, std::array<double, kCaseCount>> particle_counts_;
  std::array<double, kCaseCount> case_totals_{};
  std::vector<double> distance_counts_;
  double distance_total_ = 0.0;
  std::array<double, 2> relative_counts_{};
  double relative_total_ = 0.0;
};

// P(n|v,c) over semantic classes, either from gold antecedents (annotated
// route) or adopted from raw co-occurrence counts (unannotated route).
// Queries share one smoothing scheme: additive lambda over the full class
// inventory, case-marginal backoff, then uniform.
class SemanticModel {
 public:
  enum class Mode { kAnnotated, kCooccurrence };

  static SemanticModel train_annotated(std::span<const TrainingPair> pairs,
                                       const Thesaurus& thes, double lambda);
  static SemanticModel from_cooccurrences(const CooccurrenceCounts& counts,
                                          const Thesaurus& thes, double lambda);

  double class_prob(const SemClass& cls, const std::string& verb, CaseMarker c) const;
  double max_class_prob(std::span<const SemClass> classes, const std::string& verb,
                        CaseMarker c) const;

  Mode mode() const { return mode_; }
  double lambda() const { return lambda_; }
  const std::set<SemClass>& inventory() const { return inventory_; }

  void save(std::ostream& out) const;
  static SemanticModel load(std::istream& in);
  static SemanticModel load_file(const std::string& path);

 private:
  Mode mode_ = Mode::kAnnotated;
  double lambda_ = 0.0;
  std::set<SemClass> inventory_;
  ClassCountTable table_;
};

enum class ScoreMode { kSyntacticOnly, kSemanticOnly, kBoth };

// Factored resolution probability: P(p|c) * P(d) * P(r) * P(n|v,c), with the
// semantic factor maximized over the candidate's classes. Disabled factors
// contribute 1.
struct ResolutionScorer {
  const SyntacticModel* syntactic = nullptr;
  const SemanticModel* semantic = nullptr;
  ScoreMode mode = ScoreMode::kBoth;

  double resolution_prob(const ZeroPronoun& zp, const AntecedentCandidate& cand) const;
};

struct ScoredCandidate {
  AntecedentCandidate candidate;
  double resolution_prob = 0.0;
  double combined_prob = 0.0;  // resolution_prob * zp.detection_prob
  int rank = 0;                // 1-based
};

// Top k candidates by combined probability. Ties prefer the smaller sentence
// gap, then the later token position; remaining ties keep input order.
std::vector<ScoredCandidate> resolve(const ResolutionScorer& scorer, const ZeroPronoun& zp,
                                     std::span<const AntecedentCandidate> candidates, int k);

struct CertaintyConfig {
  double t = 0.5;          // weight between the top score and the top-two margin
  double threshold = 0.0;  // minimum certainty to emit an answer
};

double certainty_from_probs(double p1, double p2, double t);

// Certainty of a ranked list (descending by combined probability). Missing
// runner-up counts as 0; an empty list has certainty 0.
double certainty(std::span<const ScoredCandidate> scored, const CertaintyConfig& cfg);

}  // namespace zeroref
