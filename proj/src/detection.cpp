#include "zeroref/detection.hpp"

#include <algorithm>
#include <stdexcept>

namespace zeroref {

std::vector<ZeroPronoun> detect_zero_pronouns(const AnalyzedDocument& doc,
                                              const CaseFrameLexicon& lexicon,
                                              const CooccurrenceCounts& counts,
                                              double theta_detect,
                                              const PZeroOptions& pzero) {
  if (theta_detect < 0.0 || theta_detect > 1.0) {
    throw std::invalid_argument("theta_detect must be within [0,1]");
  }
  std::vector<ZeroPronoun> out;
  for (std::size_t si = 0; si < doc.sentences.size(); ++si) {
    for (const PredicateInstance& pred : doc.sentences[si].predicates) {
      std::set<CaseMarker> frame = obligatory_cases(lexicon, pred.verb);
      for (CaseMarker c : kAllCases) {
        if (!frame.count(c) || pred.filled_cases.count(c)) continue;
        double prob = p_zero(counts, c, pred.verb, pzero);
        if (prob < theta_detect) continue;
        ZeroPronoun zp;
        zp.doc_id = doc.doc_id;
        zp.sentence = static_cast<int>(si);
        zp.predicate_token = pred.token_index;
        zp.verb = pred.verb;
        zp.case_marker = c;
        zp.detection_prob = prob;
        out.push_back(std::move(zp));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const ZeroPronoun& a, const ZeroPronoun& b) {
    if (a.sentence != b.sentence) return a.sentence < b.sentence;
    if (a.predicate_token != b.predicate_token) return a.predicate_token < b.predicate_token;
    return a.case_marker < b.case_marker;
  });
  return out;
}

}  // namespace zeroref
