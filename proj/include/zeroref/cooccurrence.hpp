#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "zeroref/corpus.hpp"
#include "zeroref/lexicon.hpp"

namespace zeroref {

// F(n,v,c) cells plus the marginals the smoothed estimators divide by.
// Counts are doubles so one observation can optionally be spread over a
// noun's classes; with default options every increment is 1.
class ClassCountTable {
 public:
  void add(const SemClass& cls, const std::string& verb, CaseMarker c, double weight);
  void merge(const ClassCountTable& other);

  double count(const SemClass& cls, const std::string& verb, CaseMarker c) const;
  double vc_total(const std::string& verb, CaseMarker c) const;    // sum over classes
  double nc_marginal(const SemClass& cls, CaseMarker c) const;     // sum over verbs
  double c_total(CaseMarker c) const;                              // sum over both

  bool empty() const { return by_class_.empty(); }
  std::set<SemClass> observed_classes() const;

  // All nonzero cells, ordered by (class, verb, case).
  using Cell = std::tuple<SemClass, std::string, CaseMarker, double>;
  std::vector<Cell> cells() const;

 private:
  using VerbCase = std::pair<std::string, int>;
  std::map<SemClass, std::map<VerbCase, double>> by_class_;
  std::map<VerbCase, double> vc_totals_;
  std::map<std::pair<SemClass, int>, double> nc_marginals_;
  std::array<double, kCaseCount> c_totals_{};
};

struct ExtractOptions {
  // Spread each observation 1/k over a noun's k classes instead of counting
  // it once per class.
  bool fractional_classes = false;
};

// F(v), F(v,c) and F(n,v,c) harvested from overt case-particle pairs.
struct CooccurrenceCounts {
  std::map<std::string, double> verb_counts;
  std::map<std::pair<std::string, int>, double> verb_case_counts;
  ClassCountTable class_counts;
  double total_pairs = 0.0;

  void add_observation(const std::string& verb, CaseMarker c,
                       std::span<const SemClass> classes, const ExtractOptions& opts = {});
  void merge(const CooccurrenceCounts& other);

  double verb_count(const std::string& verb) const;
  double verb_case_count(const std::string& verb, CaseMarker c) const;

  void save(std::ostream& out) const;
  static CooccurrenceCounts load(std::istream& in);
  static CooccurrenceCounts load_file(const std::string& path);
};

// Scan raw analyzed text for nouns carrying the particle ga/wo/ni and credit
// the nearest following verb in the sentence (falling back to the noun's
// dependency head when no verb follows and the head is a verb).
CooccurrenceCounts extract_cooccurrences(std::span<const AnalyzedDocument> docs,
                                         const Thesaurus& thes,
                                         const ExtractOptions& opts = {});

struct PZeroOptions {
  double exponent = 1.0;       // applied to the frequency ratio
  double min_verb_count = 0.0; // verbs seen less often count as unseen
};

// Probability that case c of verb v is realized as a zero pronoun when
// omitted. The nominative is treated as obligatory for every verb, so
// p_zero(ga, v) is 1 regardless of the counts. Other cases use the fraction
// of the verb's observations carrying that case; unseen verbs give 0.
double p_zero(const CooccurrenceCounts& counts, CaseMarker c, const std::string& verb,
              const PZeroOptions& opts = {});

// Additively smoothed P(n | v,c) over a fixed class inventory of size
// `inventory_size`. Falls back to the case marginal P(n | c) when the verb
// and case were never seen together, and to the uniform distribution when
// the case itself is unseen.
double smoothed_class_prob(const ClassCountTable& table, const SemClass& cls,
                           const std::string& verb, CaseMarker c, double lambda,
                           std::size_t inventory_size);

double semantic_prob_sem2(const CooccurrenceCounts& counts, const SemClass& cls,
                          const std::string& verb, CaseMarker c, double lambda,
                          std::size_t inventory_size);

}  // namespace zeroref
