#include "zeroref/lexicon.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "zeroref/error.hpp"
#include "zeroref/util.hpp"

namespace zeroref {

namespace {

std::string strip_comment(const std::string& line) {
  std::size_t pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

CaseFrameLexicon load_case_frames(std::istream& in) {
  CaseFrameLexicon lex;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> fields = split_ws(strip_comment(line));
    if (fields.empty()) continue;
    if (fields.size() < 2) {
      throw DataError("line " + std::to_string(line_no) + ": verb '" + fields[0] +
                      "' lists no cases");
    }
    std::set<CaseMarker>& frame = lex.entries[fields[0]];
    for (std::size_t i = 1; i < fields.size(); ++i) {
      auto c = case_from_string(fields[i]);
      if (!c) {
        throw DataError("line " + std::to_string(line_no) + ": unknown case '" +
                        fields[i] + "'");
      }
      frame.insert(*c);
    }
  }
  return lex;
}

CaseFrameLexicon load_case_frames_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return load_case_frames(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void save_case_frames(const CaseFrameLexicon& lex, std::ostream& out) {
  for (const auto& [verb, frame] : lex.entries) {
    out << verb;
    for (CaseMarker c : frame) out << ' ' << to_string(c);
    out << '\n';
  }
}

Thesaurus load_thesaurus(std::istream& in) {
  Thesaurus thes;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = strip_comment(line);
    if (trim(body).empty()) continue;
    std::vector<std::string> fields = split_fields(body, '\t');
    if (fields.size() != 2) {
      throw DataError("line " + std::to_string(line_no) +
                      ": expected 'noun<TAB>class,class,...'");
    }
    std::string noun(trim(fields[0]));
    if (noun.empty()) {
      throw DataError("line " + std::to_string(line_no) + ": empty noun");
    }
    std::vector<SemClass> classes;
    for (const std::string& piece : split_fields(fields[1], ',')) {
      std::string cls(trim(piece));
      if (cls.empty()) {
        throw DataError("line " + std::to_string(line_no) + ": empty class for noun '" +
                        noun + "'");
      }
      classes.push_back(cls);
      thes.inventory.insert(cls);
    }
    std::vector<SemClass>& slot = thes.classes[noun];
    for (SemClass& cls : classes) {
      // Repeated lines extend the class list without duplicates.
      bool present = false;
      for (const SemClass& have : slot) present = present || have == cls;
      if (!present) slot.push_back(std::move(cls));
    }
  }
  return thes;
}

Thesaurus load_thesaurus_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return load_thesaurus(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void save_thesaurus(const Thesaurus& thes, std::ostream& out) {
  for (const auto& [noun, classes] : thes.classes) {
    out << noun << '\t';
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (i) out << ',';
      out << classes[i];
    }
    out << '\n';
  }
}

std::set<CaseMarker> obligatory_cases(const CaseFrameLexicon& lex, const std::string& verb) {
  auto it = lex.entries.find(verb);
  if (it != lex.entries.end()) return it->second;
  return {CaseMarker::kGa};
}

std::vector<SemClass> semantic_classes(const Thesaurus& thes, const std::string& noun) {
  auto it = thes.classes.find(noun);
  if (it != thes.classes.end() && !it->second.empty()) return it->second;
  return {noun};
}

}  // namespace zeroref
