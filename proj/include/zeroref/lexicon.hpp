#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "zeroref/corpus.hpp"

namespace zeroref {

// Opaque semantic class id (thesaurus category).
using SemClass = std::string;

// Verb -> obligatory surface cases. Multiple entries for one verb are merged
// into a single frame by set union.
struct CaseFrameLexicon {
  std::map<std::string, std::set<CaseMarker>> entries;
};

struct Thesaurus {
  std::map<std::string, std::vector<SemClass>> classes;  // noun lemma -> class ids
  std::set<SemClass> inventory;                          // every distinct class id

  int class_count() const { return static_cast<int>(inventory.size()); }
};

// Format: one verb per line, "verb case case ...", '#' starts a comment.
CaseFrameLexicon load_case_frames(std::istream& in);
CaseFrameLexicon load_case_frames_file(const std::string& path);
void save_case_frames(const CaseFrameLexicon& lex, std::ostream& out);

// Format: "noun<TAB>class,class,...", '#' starts a comment.
Thesaurus load_thesaurus(std::istream& in);
Thesaurus load_thesaurus_file(const std::string& path);
void save_thesaurus(const Thesaurus& thes, std::ostream& out);

// Frame of a verb; verbs absent from the lexicon default to {ga}, since the
// nominative is obligatory for every predicate.
std::set<CaseMarker> obligatory_cases(const CaseFrameLexicon& lex, const std::string& verb);

// Classes of a noun. A noun absent from the thesaurus forms its own singleton
// class named by its lemma. Never returns an empty list.
std::vector<SemClass> semantic_classes(const Thesaurus& thes, const std::string& noun);

}  // namespace zeroref
