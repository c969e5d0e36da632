#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "zeroref/corpus.hpp"
#include "zeroref/lexicon.hpp"

namespace zeroref {

// One verb of the synthetic language: its obligatory frame, how often each
// case is chosen as the omitted one, and whether the case-frame lexicon
// knows about it.
struct VerbSpec {
  std::string lemma;
  std::set<CaseMarker> frame;
  std::map<CaseMarker, double> case_emission;
  bool listed = true;
};

// Generating distributions for a synthetic corpus. Every zero pronoun's
// antecedent features are drawn from these truths, so trained estimates can
// be checked against them directly.
struct SynthParams {
  std::vector<VerbSpec> verbs;
  std::map<CaseMarker, std::map<std::string, double>> particle_truth;  // P*(p|c)
  std::vector<double> distance_truth;                                  // P*(d)
  double relative_truth = 0.15;                                        // P*(r=1)
  // verb -> case -> class -> probability, P*(n|v,c)
  std::map<std::string, std::map<CaseMarker, std::map<SemClass, double>>> semantic_truth;

  std::vector<SemClass> classes;
  int nouns_per_class = 3;
  double multi_class_fraction = 0.0;  // nouns also listed under a second class

  int documents = 10;
  int zero_pronouns_per_doc = 5;
  double exophoric_rate = 0.0;
  double fill_probability = 0.7;  // chance a non-target frame case is overt

  int distractors_per_sentence = 2;
  std::vector<std::string> distractor_particles;
  double bare_distractor_rate = 0.2;
  double distractor_relative_rate = 0.5;

  long unannotated_pairs = 10000;
  int unannotated_sentences_per_doc = 50;
};

struct SynthOutput {
  std::vector<AnalyzedDocument> documents;
  std::vector<GoldAnnotation> annotations;
  std::vector<AnalyzedDocument> unannotated;
  CaseFrameLexicon lexicon;
  Thesaurus thesaurus;
};

SynthParams default_synth_params();

// Throws DataError when a distribution does not sum to 1 within 1e-6 or a
// structural requirement is violated.
void validate_synth_params(const SynthParams& params);

// Deterministic for a fixed (params, seed).
SynthOutput generate_synthetic_corpus(const SynthParams& params, std::uint64_t seed);

SynthParams synth_params_from_json(const std::string& text);
std::string synth_params_to_json(const SynthParams& params);

}  // namespace zeroref
