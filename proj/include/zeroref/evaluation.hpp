#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zeroref/baseline.hpp"
#include "zeroref/cooccurrence.hpp"
#include "zeroref/corpus.hpp"
#include "zeroref/detection.hpp"
#include "zeroref/lexicon.hpp"
#include "zeroref/resolution.hpp"

namespace zeroref {

// Scoring variants: the two semantic routes, the syntactic factors alone,
// their combinations, and the hand-weighted rule baseline.
enum class ModelKind { kSem1, kSem2, kSyn, kBoth1, kBoth2, kRule };

std::optional<ModelKind> model_from_string(std::string_view s);
const std::string& to_string(ModelKind m);
bool model_uses_syntactic(ModelKind m);
bool model_uses_sem1(ModelKind m);
bool model_uses_sem2(ModelKind m);

struct RankedAnswer {
  TokenRef location;
  double prob = 0.0;
};

// One scored zero pronoun: every gold zero pronoun yields a record (whether
// detected or not), and in system-detection mode every spurious detection
// yields one with has_gold = false.
struct EvalRecord {
  std::string doc_id;
  int sentence = 0;
  int predicate_token = 0;
  CaseMarker case_marker = CaseMarker::kGa;
  std::string verb;
  bool has_gold = true;
  bool exophoric = false;
  bool detected = false;
  bool lexicon_gap = false;  // gold case absent from the verb's known frame
  std::optional<TokenRef> gold;
  std::vector<RankedAnswer> output;  // ranked antecedents, best first
  double certainty = 0.0;
  int candidate_count = 0;
};

struct EvalConfig {
  ModelKind model = ModelKind::kBoth2;
  bool system_detection = false;   // run the detector instead of assuming gold
  bool combined_certainty = true;  // certainty over detection-weighted scores
  int k = 3;
  int window = 3;
  double lambda = 0.5;      // semantic smoothing
  double lambda_syn = 0.5;  // syntactic smoothing
  int max_distance_bin = 5;
  double theta_detect = 0.0;
  double t = 0.5;
  PZeroOptions pzero;
  RuleTable rules = RuleTable::defaults();
};

// Leave-one-document-out cross-validation. Co-occurrence counts come from a
// separate unannotated corpus and are shared across folds; only annotated
// training material is held out. Records come back in a canonical order.
std::vector<EvalRecord> loocv(const std::vector<AnalyzedDocument>& docs,
                              const std::vector<GoldAnnotation>& annotations,
                              const CaseFrameLexicon& lexicon, const Thesaurus& thes,
                              const CooccurrenceCounts* counts, const EvalConfig& cfg);

// Fraction of detected, endophoric gold zero pronouns whose antecedent is in
// the top k answers. Absent when nothing qualifies.
std::optional<double> accuracy_at_k(std::span<const EvalRecord> records, int k);

enum class CurveMode { kDetection, kResolution };

struct CurvePoint {
  double threshold = 0.0;
  double coverage = 0.0;
  std::optional<double> accuracy;
  long coverage_num = 0;
  long coverage_den = 0;
  long accuracy_num = 0;
  long accuracy_den = 0;
};

// Certainty-threshold sweep. Thresholds must be non-decreasing. Detection
// mode trades recall against precision of the detections themselves;
// resolution mode trades answered fraction against top-1 accuracy.
std::vector<CurvePoint> coverage_accuracy_curve(std::span<const EvalRecord> records,
                                                std::span<const double> thresholds,
                                                CurveMode mode);

enum class SweepAxis { kAnnotated, kUnannotated };

struct SweepPoint {
  long size = 0;
  std::optional<double> accuracy_at_1;
};

// Accuracy@1 as a function of training corpus size. The annotated axis
// truncates each fold's training documents to a seeded random subset; the
// unannotated axis rebuilds the co-occurrence counts from a seeded prefix.
// The largest admissible size reproduces the plain loocv result.
std::vector<SweepPoint> corpus_size_sweep(
    const std::vector<AnalyzedDocument>& docs,
    const std::vector<GoldAnnotation>& annotations, const CaseFrameLexicon& lexicon,
    const Thesaurus& thes, const CooccurrenceCounts* counts,
    const std::vector<AnalyzedDocument>* unannotated_docs, const EvalConfig& cfg,
    std::span<const long> sizes, SweepAxis axis, std::uint64_t seed);

struct EvalMetrics {
  long gold_total = 0;
  long gold_exophoric = 0;
  long detected_gold = 0;
  long resolvable = 0;  // detected, gold, endophoric
  long spurious_detections = 0;
  long lexicon_gap_misses = 0;
  double mean_candidates = 0.0;
  std::optional<double> random_floor;  // 1 / mean candidates
  std::map<int, std::optional<double>> accuracy;
};

EvalMetrics compute_metrics(std::span<const EvalRecord> records, std::span<const int> ks);
std::string render_metrics_text(const EvalMetrics& m, ModelKind model);
std::string metrics_to_json(const EvalMetrics& m, ModelKind model);

std::string serialize_records(std::span<const EvalRecord> records);
void write_curve_csv(std::span<const CurvePoint> points, std::ostream& out);
void write_sweep_csv(std::span<const SweepPoint> points, std::ostream& out);

}  // namespace zeroref
