#pragma once

#include <vector>

#include "zeroref/cooccurrence.hpp"
#include "zeroref/corpus.hpp"
#include "zeroref/lexicon.hpp"

namespace zeroref {

// Every obligatory case of every predicate that is not overtly filled,
// scored with p_zero and kept when the score reaches theta_detect.
// Output is ordered by (sentence, predicate token, case).
std::vector<ZeroPronoun> detect_zero_pronouns(const AnalyzedDocument& doc,
                                              const CaseFrameLexicon& lexicon,
                                              const CooccurrenceCounts& counts,
                                              double theta_detect,
                                              const PZeroOptions& pzero = {});

}  // namespace zeroref
