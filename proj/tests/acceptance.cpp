// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any hard check fails. Tolerances are pinned
// here, next to the checks they gate.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zeroref/baseline.hpp"
#include "zeroref/cli.hpp"
#include "zeroref/cooccurrence.hpp"
#include "zeroref/corpus.hpp"
#include "zeroref/detection.hpp"
#include "zeroref/error.hpp"
#include "zeroref/evaluation.hpp"
#include "zeroref/lexicon.hpp"
#include "zeroref/resolution.hpp"
#include "zeroref/synthesis.hpp"
#include "zeroref/util.hpp"

using namespace zeroref;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kExactTol = 1e-12;
constexpr double kNormTol = 1e-9;
constexpr double kSyntacticRecoveryTol = 0.05;
constexpr double kSemanticRecoveryTol = 0.08;
constexpr double kSemanticMinExpected = 20.0;
constexpr double kRankingFloorFactor = 3.0;
constexpr double kDominanceMargin = 0.02;

struct Outcome {
  std::string name;
  bool pass = true;
  bool report_only = false;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    notes.push_back(why);
  }
  void note(const std::string& what) { notes.push_back(what); }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) { return format_number(v); }

// Shared small fixture: annotated documents plus gold feature pairs.
struct Fixture {
  SynthOutput data;
  std::vector<TrainingPair> pairs;
  CooccurrenceCounts counts;
};

Fixture make_fixture(int documents, int zps_per_doc, double exophoric_rate, long pairs,
                     std::uint64_t seed) {
  SynthParams params = default_synth_params();
  params.documents = documents;
  params.zero_pronouns_per_doc = zps_per_doc;
  params.exophoric_rate = exophoric_rate;
  params.unannotated_pairs = pairs;
  Fixture f;
  f.data = generate_synthetic_corpus(params, seed);
  f.pairs = build_training_pairs(f.data.documents, f.data.annotations, f.data.thesaurus);
  f.counts = extract_cooccurrences(f.data.unannotated, f.data.thesaurus);
  return f;
}

// ---------------------------------------------------------------- criterion 1

Outcome criterion_estimator_oracle() {
  Outcome out{"1 estimator-oracle equivalence (lambda 0, tolerance 1e-12)"};
  auto start = Clock::now();

  Fixture f = make_fixture(10, 5, 0.0, 2000, 101);
  SyntacticModel syn = SyntacticModel::train(f.pairs, 0.0);
  SemanticModel sem = SemanticModel::train_annotated(f.pairs, f.data.thesaurus, 0.0);

  long checked = 0;
  double worst = 0.0;
  auto compare = [&](double got, double want, const std::string& what) {
    double diff = std::abs(got - want);
    worst = std::max(worst, diff);
    ++checked;
    if (diff > kExactTol) {
      out.fail(what + ": estimator " + fmt(got) + " vs oracle " + fmt(want));
    }
  };

  std::set<std::string> particles = oracle::observed_particles(f.pairs);
  for (CaseMarker c : kAllCases) {
    for (const std::string& p : particles) {
      compare(syn.particle_given_case(p, c),
              oracle::particle_given_case(f.pairs, p, c, 0.0),
              "P(" + p + "|" + to_string(c) + ")");
    }
    compare(syn.particle_given_case(std::nullopt, c),
            oracle::particle_given_case(f.pairs, std::nullopt, c, 0.0),
            "P(no-particle|" + to_string(c) + ")");
    compare(syn.particle_given_case(std::string("never-seen"), c),
            oracle::particle_given_case(f.pairs, std::string("never-seen"), c, 0.0),
            "P(unseen-particle|" + to_string(c) + ")");
  }
  for (int d = 0; d <= 8; ++d) {
    compare(syn.distance_prob(d), oracle::distance_prob(f.pairs, d, 5, 0.0),
            "P(d=" + std::to_string(d) + ")");
  }
  for (bool r : {false, true}) {
    compare(syn.relative_prob(r), oracle::relative_prob(f.pairs, r, 0.0),
            std::string("P(r=") + (r ? "1" : "0") + ")");
  }

  std::set<SemClass> inventory = oracle::observed_class_inventory(f.pairs, f.data.thesaurus);
  std::set<std::pair<std::string, int>> slots = oracle::observed_verb_cases(f.pairs);
  slots.insert({"never-seen-verb", 0});
  slots.insert({"yomu", 2});
  for (const auto& [verb, ci] : slots) {
    CaseMarker c = static_cast<CaseMarker>(ci);
    for (const SemClass& cls : inventory) {
      compare(sem.class_prob(cls, verb, c),
              oracle::class_prob(f.pairs, f.data.thesaurus, cls, verb, c, 0.0),
              "P(" + cls + "|" + verb + "," + to_string(c) + ")");
    }
  }

  // The co-occurrence route's estimator against a direct recount of its own
  // count cells.
  SemanticModel sem2 = SemanticModel::from_cooccurrences(f.counts, f.data.thesaurus, 0.0);
  std::vector<ClassCountTable::Cell> cells = f.counts.class_counts.cells();
  std::set<std::pair<std::string, int>> seen_slots;
  for (const auto& [cls, verb, c, n] : cells) seen_slots.insert({verb, static_cast<int>(c)});
  for (const auto& [verb, ci] : seen_slots) {
    CaseMarker c = static_cast<CaseMarker>(ci);
    for (const SemClass& cls : sem2.inventory()) {
      double cell = 0.0;
      double total = 0.0;
      for (const auto& [ocls, overb, oc, n] : cells) {
        if (overb != verb || oc != c) continue;
        total += n;
        if (ocls == cls) cell += n;
      }
      if (total <= 0.0) continue;
      compare(sem2.class_prob(cls, verb, c), cell / total,
              "sem2 P(" + cls + "|" + verb + "," + to_string(c) + ")");
    }
  }

  double elapsed = seconds_since(start);
  out.note(std::to_string(checked) + " cells compared, worst |diff| " + fmt(worst) +
           ", " + fmt(elapsed) + "s");
  if (elapsed >= 1.0) out.fail("runtime " + fmt(elapsed) + "s exceeds 1s budget");
  return out;
}

// ---------------------------------------------------------------- criterion 2

Outcome criterion_normalization() {
  Outcome out{"2 normalization of trained distributions (tolerance 1e-9)"};
  auto start = Clock::now();

  Fixture f = make_fixture(10, 5, 0.0, 2000, 101);
  SyntacticModel syn = SyntacticModel::train(f.pairs, 0.5);
  SemanticModel sem1 = SemanticModel::train_annotated(f.pairs, f.data.thesaurus, 0.5);
  SemanticModel sem2 = SemanticModel::from_cooccurrences(f.counts, f.data.thesaurus, 0.5);

  double worst = 0.0;
  auto check_sum = [&](double sum, const std::string& what) {
    worst = std::max(worst, std::abs(sum - 1.0));
    if (std::abs(sum - 1.0) > kNormTol) {
      out.fail(what + " sums to " + fmt(sum));
    }
  };

  for (CaseMarker c : kAllCases) {
    double sum = 0.0;
    for (const std::string& p : syn.particle_support()) {
      sum += syn.particle_given_case(p, c);
    }
    check_sum(sum, "P(p|" + to_string(c) + ")");
  }
  {
    double sum = 0.0;
    for (int d = 0; d <= syn.max_distance_bin(); ++d) sum += syn.distance_prob(d);
    check_sum(sum, "P(d)");
    check_sum(syn.relative_prob(false) + syn.relative_prob(true), "P(r)");
  }

  // Randomized (verb, case) queries, mixing seen and unseen verbs.
  std::vector<std::string> verbs;
  for (const VerbSpec& v : default_synth_params().verbs) verbs.push_back(v.lemma);
  verbs.push_back("never-seen-verb");
  verbs.push_back("another-stranger");
  Rng rng(7);
  int queries = 0;
  for (int q = 0; q < 100; ++q) {
    const std::string& verb = verbs[rng.uniform_int(static_cast<int>(verbs.size()))];
    CaseMarker c = kAllCases[rng.uniform_int(kCaseCount)];
    double s1 = 0.0;
    double s2 = 0.0;
    double s2_free = 0.0;
    for (const SemClass& cls : sem1.inventory()) s1 += sem1.class_prob(cls, verb, c);
    for (const SemClass& cls : sem2.inventory()) {
      s2 += sem2.class_prob(cls, verb, c);
      s2_free += semantic_prob_sem2(f.counts, cls, verb, c, 0.5, sem2.inventory().size());
    }
    check_sum(s1, "P(n|" + verb + "," + to_string(c) + ") annotated");
    check_sum(s2, "P(n|" + verb + "," + to_string(c) + ") cooccurrence");
    check_sum(s2_free, "semantic_prob_sem2(" + verb + "," + to_string(c) + ")");
    ++queries;
  }

  double elapsed = seconds_since(start);
  out.note(std::to_string(queries) + " (v,c) queries, worst |sum-1| " + fmt(worst) + ", " +
           fmt(elapsed) + "s");
  if (elapsed >= 1.0) out.fail("runtime " + fmt(elapsed) + "s exceeds 1s budget");
  return out;
}

// ---------------------------------------------------------------- criterion 3

Outcome criterion_arithmetic() {
  Outcome out{"3 combined score and certainty arithmetic (tolerance 1e-12)"};

  Fixture f = make_fixture(10, 5, 0.0, 2000, 101);
  SyntacticModel syn = SyntacticModel::train(f.pairs, 0.5);
  SemanticModel sem = SemanticModel::train_annotated(f.pairs, f.data.thesaurus, 0.5);
  ResolutionScorer scorer{&syn, &sem, ScoreMode::kBoth};

  long product_checks = 0;
  double worst = 0.0;
  Rng rng(909);
  for (const AnalyzedDocument& doc : f.data.documents) {
    std::vector<ZeroPronoun> zps =
        detect_zero_pronouns(doc, f.data.lexicon, f.counts, 0.0);
    for (ZeroPronoun zp : zps) {
      zp.detection_prob = rng.uniform();
      std::vector<AntecedentCandidate> cands =
          extract_candidates(doc, zp, 3, f.data.thesaurus);
      std::vector<ScoredCandidate> scored =
          resolve(scorer, zp, cands, static_cast<int>(cands.size()) + 1);
      for (const ScoredCandidate& sc : scored) {
        double factors = syn.particle_given_case(sc.candidate.particle, zp.case_marker) *
                         syn.distance_prob(sc.candidate.distance) *
                         syn.relative_prob(sc.candidate.in_relative_clause) *
                         sem.max_class_prob(sc.candidate.classes, zp.verb, zp.case_marker);
        double diff1 = std::abs(sc.resolution_prob - factors);
        double diff2 = std::abs(sc.combined_prob - zp.detection_prob * sc.resolution_prob);
        worst = std::max({worst, diff1, diff2});
        ++product_checks;
        if (diff1 > kExactTol) {
          out.fail("resolution probability is not the factor product: |diff| " + fmt(diff1));
        }
        if (diff2 > kExactTol) {
          out.fail("combined probability is not detection * resolution: |diff| " +
                   fmt(diff2));
        }
      }
    }
  }
  out.note(std::to_string(product_checks) + " scored candidates recomputed, worst |diff| " +
           fmt(worst));
  if (product_checks < 100) out.fail("fixture produced too few scored candidates");

  long certainty_checks = 0;
  double worst_cert = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double p1 = rng.uniform();
    double p2 = rng.uniform() * p1;  // keep p2 <= p1
    if (i % 10 == 0) p2 = 0.0;
    if (i % 7 == 0) p2 = p1;
    double t = rng.uniform();
    double want = t * p1 + (1.0 - t) * (p1 - p2);
    double got = certainty_from_probs(p1, p2, t);
    double diff = std::abs(got - want);
    worst_cert = std::max(worst_cert, diff);
    ++certainty_checks;
    if (diff > kExactTol) {
      out.fail("certainty(" + fmt(p1) + "," + fmt(p2) + "," + fmt(t) + ") off by " +
               fmt(diff));
    }

    // The list form must agree, including the missing-runner-up rule.
    ScoredCandidate top;
    top.combined_prob = p1;
    ScoredCandidate second;
    second.combined_prob = p2;
    CertaintyConfig cfg;
    cfg.t = t;
    std::vector<ScoredCandidate> two = {top, second};
    std::vector<ScoredCandidate> one = {top};
    if (std::abs(certainty(two, cfg) - want) > kExactTol) {
      out.fail("list certainty disagrees with the closed form");
    }
    double want_single = t * p1 + (1.0 - t) * p1;
    if (std::abs(certainty(one, cfg) - want_single) > kExactTol) {
      out.fail("singleton certainty must treat the runner-up as zero");
    }
  }
  CertaintyConfig cfg;
  if (certainty({}, cfg) != 0.0) out.fail("empty ranking must have certainty 0");
  out.note(std::to_string(certainty_checks) + " certainty pairs checked, worst |diff| " +
           fmt(worst_cert));
  return out;
}

// ---------------------------------------------------------------- criterion 4

Outcome criterion_detection_logic() {
  Outcome out{"4 detection equals obligatory minus filled (theta 0)"};

  CaseFrameLexicon lex;
  lex.entries["tsukau"] = {CaseMarker::kGa, CaseMarker::kWo, CaseMarker::kNi};

  // Counts giving the listed verb fractional zero-pronoun probabilities and
  // leaving the unlisted verb unseen.
  CooccurrenceCounts counts;
  std::vector<SemClass> cls = {"thing"};
  for (int i = 0; i < 5; ++i) counts.add_observation("tsukau", CaseMarker::kWo, cls);
  for (int i = 0; i < 3; ++i) counts.add_observation("tsukau", CaseMarker::kGa, cls);
  for (int i = 0; i < 2; ++i) counts.add_observation("tsukau", CaseMarker::kNi, cls);
  CooccurrenceCounts empty;

  long cases_checked = 0;
  for (const std::string& verb : {std::string("tsukau"), std::string("ghost")}) {
    std::set<CaseMarker> obligatory = obligatory_cases(lex, verb);
    for (int mask = 0; mask < 8; ++mask) {
      AnalyzedDocument doc;
      doc.doc_id = "probe";
      Sentence s;
      PredicateInstance pred;
      pred.verb = verb;
      int idx = 0;
      for (int ci = 0; ci < kCaseCount; ++ci) {
        if (!(mask & (1 << ci))) continue;
        CaseMarker c = static_cast<CaseMarker>(ci);
        Token t;
        t.index = idx;
        t.surface = "n" + to_string(c);
        t.lemma = t.surface;
        t.pos = Pos::kNoun;
        t.particle = to_string(c);
        s.tokens.push_back(t);
        pred.filled_cases[c] = idx;
        ++idx;
      }
      Token v;
      v.index = idx;
      v.surface = verb;
      v.lemma = verb;
      v.pos = Pos::kVerb;
      s.tokens.push_back(v);
      pred.token_index = idx;
      s.predicates.push_back(pred);
      doc.sentences.push_back(s);

      std::set<CaseMarker> expected;
      for (CaseMarker c : obligatory) {
        if (!pred.filled_cases.count(c)) expected.insert(c);
      }

      for (const CooccurrenceCounts* table : {&counts, &empty}) {
        std::vector<ZeroPronoun> zps = detect_zero_pronouns(doc, lex, *table, 0.0);
        std::set<CaseMarker> got;
        for (const ZeroPronoun& zp : zps) {
          got.insert(zp.case_marker);
          if (zp.case_marker == CaseMarker::kGa && zp.detection_prob != 1.0) {
            out.fail("p_zero(ga|" + verb + ") must be exactly 1, got " +
                     fmt(zp.detection_prob));
          }
          if (zp.detection_prob < 0.0 || zp.detection_prob > 1.0) {
            out.fail("detection probability outside [0,1]");
          }
        }
        if (got != expected) {
          std::string want;
          for (CaseMarker c : expected) want += to_string(c) + " ";
          std::string have;
          for (CaseMarker c : got) have += to_string(c) + " ";
          out.fail("verb " + verb + " mask " + std::to_string(mask) + ": expected {" +
                   want + "} got {" + have + "}");
        }
        ++cases_checked;
      }
    }
  }
  out.note(std::to_string(cases_checked) +
           " fill patterns checked across two lexicon states and two count tables");
  return out;
}

// ---------------------------------------------------------------- criterion 5

Outcome criterion_parameter_recovery() {
  Outcome out{"5 parameter recovery from 10,000 generated pairs"};
  auto start = Clock::now();

  SynthParams params = default_synth_params();
  params.documents = 500;
  params.zero_pronouns_per_doc = 20;
  params.exophoric_rate = 0.0;
  params.unannotated_pairs = 0;
  SynthOutput data = generate_synthetic_corpus(params, 2026);
  std::vector<TrainingPair> pairs =
      build_training_pairs(data.documents, data.annotations, data.thesaurus);
  if (pairs.size() != 10000) {
    out.fail("expected 10000 training pairs, got " + std::to_string(pairs.size()));
    return out;
  }

  SyntacticModel syn = SyntacticModel::train(pairs, 0.0);
  SemanticModel sem = SemanticModel::train_annotated(pairs, data.thesaurus, 0.0);

  double worst_syn = 0.0;
  long syn_cells = 0;
  auto check_syn = [&](double got, double want, const std::string& what) {
    double diff = std::abs(got - want);
    worst_syn = std::max(worst_syn, diff);
    ++syn_cells;
    if (diff > kSyntacticRecoveryTol) {
      out.fail(what + ": learned " + fmt(got) + " truth " + fmt(want));
    }
  };

  for (const auto& [c, dist] : params.particle_truth) {
    for (const auto& [particle, truth] : dist) {
      check_syn(syn.particle_given_case(particle, c), truth,
                "P(" + particle + "|" + to_string(c) + ")");
    }
  }
  for (std::size_t d = 0; d < params.distance_truth.size(); ++d) {
    check_syn(syn.distance_prob(static_cast<int>(d)), params.distance_truth[d],
              "P(d=" + std::to_string(d) + ")");
  }
  check_syn(syn.relative_prob(true), params.relative_truth, "P(r=1)");

  double worst_sem = 0.0;
  long sem_cells = 0;
  long sem_skipped = 0;
  double scenes_per_verb =
      10000.0 / static_cast<double>(params.verbs.size());
  for (const VerbSpec& verb : params.verbs) {
    for (const auto& [c, emission] : verb.case_emission) {
      for (const auto& [cls, truth] : params.semantic_truth.at(verb.lemma).at(c)) {
        double expected = scenes_per_verb * emission * truth;
        if (expected < kSemanticMinExpected) {
          ++sem_skipped;
          continue;
        }
        double got = sem.class_prob(cls, verb.lemma, c);
        double diff = std::abs(got - truth);
        worst_sem = std::max(worst_sem, diff);
        ++sem_cells;
        if (diff > kSemanticRecoveryTol) {
          out.fail("P(" + cls + "|" + verb.lemma + "," + to_string(c) + "): learned " +
                   fmt(got) + " truth " + fmt(truth));
        }
      }
    }
  }

  double elapsed = seconds_since(start);
  out.note(std::to_string(syn_cells) + " syntactic cells (worst |diff| " + fmt(worst_syn) +
           "), " + std::to_string(sem_cells) + " semantic cells (worst |diff| " +
           fmt(worst_sem) + ", " + std::to_string(sem_skipped) +
           " below the expected-count floor), " + fmt(elapsed) + "s");
  if (elapsed >= 30.0) out.fail("runtime " + fmt(elapsed) + "s exceeds 30s budget");
  return out;
}

// ---------------------------------------------------------------- criterion 6

Outcome criterion_ranking_sanity(const Fixture& f) {
  Outcome out{"6 ranking beats the random floor and the rule baseline"};

  EvalConfig cfg;
  cfg.model = ModelKind::kBoth2;
  cfg.k = 5;
  std::vector<EvalRecord> records = loocv(f.data.documents, f.data.annotations,
                                          f.data.lexicon, f.data.thesaurus, &f.counts, cfg);
  std::vector<int> ks = {1, 2, 3, 4, 5};
  EvalMetrics metrics = compute_metrics(records, ks);

  if (!metrics.random_floor) {
    out.fail("no resolvable records, random floor undefined");
    return out;
  }
  std::optional<double> prev;
  for (int k : ks) {
    std::optional<double> acc = metrics.accuracy.at(k);
    if (!acc) {
      out.fail("accuracy@" + std::to_string(k) + " undefined");
      continue;
    }
    if (prev && *acc < *prev - kExactTol) {
      out.fail("accuracy@k decreased at k=" + std::to_string(k) + ": " + fmt(*prev) +
               " -> " + fmt(*acc));
    }
    prev = acc;
  }

  EvalConfig rule_cfg = cfg;
  rule_cfg.model = ModelKind::kRule;
  std::vector<EvalRecord> rule_records =
      loocv(f.data.documents, f.data.annotations, f.data.lexicon, f.data.thesaurus,
            nullptr, rule_cfg);
  std::optional<double> rule_acc = accuracy_at_k(rule_records, 1);

  double both2 = *metrics.accuracy.at(1);
  double floor = *metrics.random_floor;
  out.note("accuracy@1 " + fmt(both2) + ", random floor " + fmt(floor) + " (x" +
           fmt(both2 / floor) + "), rule baseline " + (rule_acc ? fmt(*rule_acc) : "n/a") +
           ", accuracy@5 " + fmt(*metrics.accuracy.at(5)));
  if (both2 < kRankingFloorFactor * floor) {
    out.fail("accuracy@1 " + fmt(both2) + " is under " + fmt(kRankingFloorFactor) +
             "x the random floor " + fmt(floor));
  }
  if (!rule_acc || both2 <= *rule_acc) {
    out.fail("accuracy@1 " + fmt(both2) + " does not beat the rule baseline " +
             (rule_acc ? fmt(*rule_acc) : "n/a"));
  }
  return out;
}

// ---------------------------------------------------------------- criterion 7

std::vector<EvalRecord> random_records(Rng& rng, int n) {
  std::vector<EvalRecord> records;
  for (int i = 0; i < n; ++i) {
    EvalRecord r;
    r.doc_id = "r" + std::to_string(i);
    r.verb = "yomu";
    r.has_gold = rng.bernoulli(0.8);
    r.exophoric = r.has_gold && rng.bernoulli(0.2);
    r.detected = !r.has_gold || rng.bernoulli(0.85);
    r.certainty = rng.uniform();
    if (r.detected && rng.bernoulli(0.9)) {
      RankedAnswer a;
      a.location = {0, rng.uniform_int(5)};
      a.prob = rng.uniform();
      r.output.push_back(a);
      if (r.has_gold && !r.exophoric) {
        r.gold = rng.bernoulli(0.5) ? a.location : TokenRef{1, rng.uniform_int(5)};
      }
    } else if (r.has_gold && !r.exophoric) {
      r.gold = TokenRef{0, 0};
    }
    records.push_back(r);
  }
  return records;
}

// Piecewise-linear accuracy of a curve as a function of coverage.
std::optional<double> accuracy_at_coverage(const std::vector<CurvePoint>& curve,
                                           double coverage) {
  std::vector<std::pair<double, double>> pts;
  for (const CurvePoint& pt : curve) {
    if (pt.accuracy) pts.emplace_back(pt.coverage, *pt.accuracy);
  }
  if (pts.empty()) return std::nullopt;
  std::sort(pts.begin(), pts.end());
  if (coverage < pts.front().first - 1e-9 || coverage > pts.back().first + 1e-9) {
    return std::nullopt;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::abs(pts[i].first - coverage) <= 1e-9) return pts[i].second;
  }
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i - 1].first <= coverage && coverage <= pts[i].first) {
      double span = pts[i].first - pts[i - 1].first;
      if (span <= 0.0) return std::max(pts[i - 1].second, pts[i].second);
      double w = (coverage - pts[i - 1].first) / span;
      return pts[i - 1].second + w * (pts[i].second - pts[i - 1].second);
    }
  }
  return std::nullopt;
}

Outcome criterion_coverage_curves(const Fixture& f, const fs::path& report_dir) {
  Outcome out{"7 coverage monotone; detection-weighted certainty dominates"};

  // Property: coverage never rises with the threshold.
  Rng rng(55);
  std::vector<double> thresholds;
  for (int i = 0; i <= 100; ++i) thresholds.push_back(i / 100.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<EvalRecord> records = random_records(rng, 300);
    for (CurveMode mode : {CurveMode::kDetection, CurveMode::kResolution}) {
      std::vector<CurvePoint> curve = coverage_accuracy_curve(records, thresholds, mode);
      for (std::size_t i = 1; i < curve.size(); ++i) {
        if (curve[i].coverage > curve[i - 1].coverage + kExactTol) {
          out.fail("coverage rose with the threshold in randomized trial " +
                   std::to_string(trial));
        }
      }
    }
  }
  out.note("monotonicity held over 20 randomized record sets");

  // Fixture comparison: certainty over detection-weighted scores against
  // certainty over raw resolution scores, both sweeping detection precision.
  EvalConfig combined_cfg;
  combined_cfg.model = ModelKind::kBoth2;
  combined_cfg.system_detection = true;
  combined_cfg.combined_certainty = true;
  EvalConfig resolution_cfg = combined_cfg;
  resolution_cfg.combined_certainty = false;

  std::vector<EvalRecord> combined_records =
      loocv(f.data.documents, f.data.annotations, f.data.lexicon, f.data.thesaurus,
            &f.counts, combined_cfg);
  std::vector<EvalRecord> resolution_records =
      loocv(f.data.documents, f.data.annotations, f.data.lexicon, f.data.thesaurus,
            &f.counts, resolution_cfg);

  std::vector<CurvePoint> combined_curve =
      coverage_accuracy_curve(combined_records, thresholds, CurveMode::kDetection);
  std::vector<CurvePoint> resolution_curve =
      coverage_accuracy_curve(resolution_records, thresholds, CurveMode::kDetection);

  fs::create_directories(report_dir);
  {
    std::ofstream os(report_dir / "detection_curve_combined_certainty.csv");
    write_curve_csv(combined_curve, os);
    std::ofstream os2(report_dir / "detection_curve_resolution_certainty.csv");
    write_curve_csv(resolution_curve, os2);
  }
  out.note("both curves written to " + (report_dir / "detection_curve_*.csv").string());

  long compared = 0;
  double worst_gap = 0.0;
  bool noisy = false;
  for (const CurvePoint& pt : combined_curve) {
    if (!pt.accuracy || pt.coverage_num == 0) continue;
    std::optional<double> base = accuracy_at_coverage(resolution_curve, pt.coverage);
    if (!base) continue;
    ++compared;
    double gap = *base - *pt.accuracy;  // positive when the baseline is ahead
    worst_gap = std::max(worst_gap, gap);
    if (gap > kDominanceMargin) {
      // Binomial noise scale at this point; when the margin is inside the
      // noise band the comparison is reported, not enforced.
      double pa = *pt.accuracy;
      double na = static_cast<double>(pt.accuracy_den);
      double se = std::sqrt(std::max(pa * (1.0 - pa), 0.05) * 2.0 / std::max(na, 1.0));
      if (gap <= 2.0 * se) {
        noisy = true;
      } else {
        out.fail("detection accuracy at coverage " + fmt(pt.coverage) + " is " +
                 fmt(*pt.accuracy) + ", baseline " + fmt(*base) + " (gap " + fmt(gap) +
                 " beyond noise band " + fmt(2.0 * se) + ")");
      }
    }
  }
  out.note(std::to_string(compared) + " equal-coverage points compared, worst deficit " +
           fmt(worst_gap));
  if (noisy && out.pass) {
    out.report_only = true;
    out.note("deficits beyond the margin sit inside the sampling noise band; reported only");
  }
  return out;
}

// ---------------------------------------------------------------- criterion 8

Outcome criterion_determinism(const fs::path& work) {
  Outcome out{"8 byte-identical pipeline reruns"};

  auto cli = [](std::vector<std::string> args) {
    args.insert(args.begin(), "zeroref");
    return run_cli(args);
  };

  fs::remove_all(work);
  fs::path data = work / "data";
  if (cli({"synth", "--out", data.string(), "--docs", "8", "--zero-pronouns", "4",
           "--pairs", "3000", "--seed", "1234"}) != 0) {
    out.fail("synth failed");
    return out;
  }

  std::vector<std::string> artifacts;
  for (int run = 1; run <= 2; ++run) {
    fs::path dir = work / ("run" + std::to_string(run));
    fs::create_directories(dir);
    if (cli({"extract", "--corpus", (data / "unannotated.jsonl").string(), "--thesaurus",
             (data / "thesaurus.tsv").string(), "--out",
             (dir / "counts.tsv").string()}) != 0) {
      out.fail("extract failed on run " + std::to_string(run));
      return out;
    }
    if (cli({"train", "--corpus", (data / "corpus.jsonl").string(), "--annotations",
             (data / "annotations.jsonl").string(), "--thesaurus",
             (data / "thesaurus.tsv").string(), "--frames",
             (data / "case_frames.txt").string(), "--counts", (dir / "counts.tsv").string(),
             "--model", "both2", "--out", (dir / "models").string()}) != 0) {
      out.fail("train failed on run " + std::to_string(run));
      return out;
    }
    if (cli({"eval", "--corpus", (data / "corpus.jsonl").string(), "--annotations",
             (data / "annotations.jsonl").string(), "--thesaurus",
             (data / "thesaurus.tsv").string(), "--frames",
             (data / "case_frames.txt").string(), "--counts", (dir / "counts.tsv").string(),
             "--unannotated", (data / "unannotated.jsonl").string(), "--detection",
             "system", "--sweep-annotated", "3,7", "--sweep-unannotated", "20,60",
             "--seed", "5", "--out-dir", (dir / "report").string()}) != 0) {
      out.fail("eval failed on run " + std::to_string(run));
      return out;
    }
  }

  artifacts = {"counts.tsv",
               "models/syntactic.model",
               "models/semantic.model",
               "models/case_frames.txt",
               "models/thesaurus.tsv",
               "models/counts.tsv",
               "report/metrics.json",
               "report/records.jsonl",
               "report/curve_detection.csv",
               "report/curve_resolution.csv",
               "report/sweep_annotated.csv",
               "report/sweep_unannotated.csv"};
  long same = 0;
  for (const std::string& rel : artifacts) {
    fs::path a = work / "run1" / rel;
    fs::path b = work / "run2" / rel;
    if (!fs::exists(a) || !fs::exists(b)) {
      out.fail("missing artifact " + rel);
      continue;
    }
    if (read_file(a.string()) != read_file(b.string())) {
      out.fail("artifact differs between runs: " + rel);
    } else {
      ++same;
    }
  }
  out.note(std::to_string(same) + " of " + std::to_string(artifacts.size()) +
           " artifacts byte-identical");
  return out;
}

// ---------------------------------------------------------------- criterion 9

Outcome criterion_count_additivity() {
  Outcome out{"9 co-occurrence counts add over shards"};

  SynthParams params = default_synth_params();
  params.documents = 1;
  params.zero_pronouns_per_doc = 1;
  params.unannotated_pairs = 5000;
  SynthOutput data = generate_synthetic_corpus(params, 31337);

  Rng rng(77);
  long trials = 5;
  for (long trial = 0; trial < trials; ++trial) {
    std::vector<std::vector<AnalyzedDocument>> shards(4);
    for (const AnalyzedDocument& doc : data.unannotated) {
      shards[rng.uniform_int(4)].push_back(doc);
    }
    CooccurrenceCounts merged;
    for (const auto& shard : shards) {
      merged.merge(extract_cooccurrences(shard, data.thesaurus));
    }
    CooccurrenceCounts whole = extract_cooccurrences(data.unannotated, data.thesaurus);

    if (merged.total_pairs != whole.total_pairs) {
      out.fail("trial " + std::to_string(trial) + ": total pairs " +
               fmt(merged.total_pairs) + " vs " + fmt(whole.total_pairs));
    }
    if (merged.verb_counts != whole.verb_counts) {
      out.fail("trial " + std::to_string(trial) + ": verb totals differ");
    }
    if (merged.verb_case_counts != whole.verb_case_counts) {
      out.fail("trial " + std::to_string(trial) + ": verb-case cells differ");
    }
    if (merged.class_counts.cells() != whole.class_counts.cells()) {
      out.fail("trial " + std::to_string(trial) + ": class cells differ");
    }
  }
  out.note(std::to_string(trials) + " randomized 4-way shardings compared cell-wise");
  return out;
}

}  // namespace

int main() {
  fs::path out_root = fs::path("acceptance_out");
  fs::create_directories(out_root);

  // The ranking and curve criteria share one mid-sized fixture.
  Fixture ranking = make_fixture(60, 6, 0.05, 20000, 424242);

  std::vector<Outcome> outcomes;
  outcomes.push_back(criterion_estimator_oracle());
  outcomes.push_back(criterion_normalization());
  outcomes.push_back(criterion_arithmetic());
  outcomes.push_back(criterion_detection_logic());
  outcomes.push_back(criterion_parameter_recovery());
  outcomes.push_back(criterion_ranking_sanity(ranking));
  outcomes.push_back(criterion_coverage_curves(ranking, out_root));
  outcomes.push_back(criterion_determinism(out_root / "determinism"));
  outcomes.push_back(criterion_count_additivity());

  int failures = 0;
  for (const Outcome& o : outcomes) {
    const char* verdict = o.pass ? (o.report_only ? "PASS*" : "PASS ") : "FAIL ";
    std::printf("%s %s\n", verdict, o.name.c_str());
    for (const std::string& note : o.notes) {
      std::printf("      %s\n", note.c_str());
    }
    if (!o.pass) ++failures;
  }
  if (failures > 0) {
    std::printf("%d of %zu criteria failed\n", failures, outcomes.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", outcomes.size());
  return 0;
}
