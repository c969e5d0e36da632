#pragma once

#include <compare>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zeroref {

enum class Pos { kNoun, kVerb, kParticle, kOther };

// Surface case markers whose omission creates a zero pronoun.
enum class CaseMarker : int { kGa = 0, kWo = 1, kNi = 2 };

inline constexpr int kCaseCount = 3;
inline constexpr CaseMarker kAllCases[] = {CaseMarker::kGa, CaseMarker::kWo,
                                           CaseMarker::kNi};

const std::string& to_string(CaseMarker c);
const std::string& to_string(Pos p);
std::optional<CaseMarker> case_from_string(std::string_view s);
std::optional<Pos> pos_from_string(std::string_view s);

struct Token {
  int index = 0;  // position within the sentence, implied by file order
  std::string surface;
  std::string lemma;
  Pos pos = Pos::kOther;
  std::optional<std::string> particle;  // case particle attached to a noun
  std::optional<int> head;              // governing token, when the parse has one
  bool in_relative_clause = false;
};

// One predicate occurrence with its overtly filled cases. A filled case may
// carry the filler's token index, or null when the filler was not aligned.
struct PredicateInstance {
  int token_index = 0;
  std::string verb;  // lemma
  std::map<CaseMarker, std::optional<int>> filled_cases;
};

struct Sentence {
  std::vector<Token> tokens;
  std::vector<PredicateInstance> predicates;
};

struct AnalyzedDocument {
  std::string doc_id;
  std::vector<Sentence> sentences;
};

struct TokenRef {
  int sentence = 0;
  int token = 0;
  auto operator<=>(const TokenRef&) const = default;
};

// Hand-annotated antecedent for one omitted case. `antecedent` is empty for
// exophoric references (discourse-external, e.g. the unexpressed author).
struct GoldAnnotation {
  std::string doc_id;
  TokenRef predicate;
  CaseMarker case_marker = CaseMarker::kGa;
  std::optional<TokenRef> antecedent;
};

// An omitted obligatory case of a predicate, the unit both detection and
// resolution operate on.
struct ZeroPronoun {
  std::string doc_id;
  int sentence = 0;
  int predicate_token = 0;
  std::string verb;
  CaseMarker case_marker = CaseMarker::kGa;
  double detection_prob = 1.0;
  bool exophoric = false;  // only meaningful for gold-derived zero pronouns
};

// Structural checks on one document. Returns human-readable violations,
// e.g. "particle on non-noun at s0t3"; empty means well-formed.
std::vector<std::string> validate_document(const AnalyzedDocument& doc);

// One JSON document per line. Errors carry the 1-based line number and the
// path of the offending field. An empty stream is an empty corpus.
std::vector<AnalyzedDocument> parse_corpus(std::istream& in);

// Annotation lines are validated against the corpus they refer to.
std::vector<GoldAnnotation> parse_annotations(
    std::istream& in, const std::vector<AnalyzedDocument>& docs);

std::string serialize_document(const AnalyzedDocument& doc);
void serialize_corpus(const std::vector<AnalyzedDocument>& docs, std::ostream& out);
std::string serialize_annotation(const GoldAnnotation& ann);
void serialize_annotations(const std::vector<GoldAnnotation>& anns, std::ostream& out);

// Gold zero pronouns of one document, ordered by (sentence, token, case).
// Annotating an overtly filled case is contradictory and raises DataError.
std::vector<ZeroPronoun> gold_zero_pronouns(
    const AnalyzedDocument& doc, const std::vector<GoldAnnotation>& annotations);

const AnalyzedDocument* find_document(const std::vector<AnalyzedDocument>& docs,
                                      const std::string& doc_id);

// Load from a file, or from every *.jsonl file in a directory (name order).
std::vector<AnalyzedDocument> load_corpus_path(const std::string& path);
std::vector<GoldAnnotation> load_annotations_path(
    const std::string& path, const std::vector<AnalyzedDocument>& docs);

}  // namespace zeroref
