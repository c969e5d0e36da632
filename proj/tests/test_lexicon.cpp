#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "zeroref/error.hpp"
#include "zeroref/lexicon.hpp"

using namespace zeroref;

TEST_CASE("case frame file parses with comments and merges duplicates by union") {
  std::istringstream in(
      "# obligatory frames\n"
      "yomu ga wo\n"
      "\n"
      "kau ga\n"
      "yomu ni   # second entry for the same verb\n");
  CaseFrameLexicon lex = load_case_frames(in);
  REQUIRE(lex.entries.size() == 2);
  CHECK(lex.entries.at("yomu") ==
        std::set<CaseMarker>{CaseMarker::kGa, CaseMarker::kWo, CaseMarker::kNi});
  CHECK(lex.entries.at("kau") == std::set<CaseMarker>{CaseMarker::kGa});
}

TEST_CASE("case frame parse errors name the line") {
  std::istringstream no_cases("yomu ga\nkau\n");
  CHECK_THROWS_WITH_AS(load_case_frames(no_cases), doctest::Contains("line 2"), DataError);

  std::istringstream bad_case("yomu ga xo\n");
  CHECK_THROWS_WITH_AS(load_case_frames(bad_case), doctest::Contains("unknown case 'xo'"),
                       DataError);
}

TEST_CASE("case frame save and load round-trip") {
  CaseFrameLexicon lex;
  lex.entries["yomu"] = {CaseMarker::kGa, CaseMarker::kWo};
  lex.entries["aruku"] = {CaseMarker::kGa};
  std::ostringstream out;
  save_case_frames(lex, out);
  std::istringstream in(out.str());
  CaseFrameLexicon back = load_case_frames(in);
  CHECK(back.entries == lex.entries);

  std::ostringstream again;
  save_case_frames(back, again);
  CHECK(again.str() == out.str());
}

TEST_CASE("verbs missing from the lexicon default to a nominative-only frame") {
  CaseFrameLexicon lex;
  lex.entries["yomu"] = {CaseMarker::kGa, CaseMarker::kWo};
  CHECK(obligatory_cases(lex, "yomu") ==
        std::set<CaseMarker>{CaseMarker::kGa, CaseMarker::kWo});
  CHECK(obligatory_cases(lex, "shiranai") == std::set<CaseMarker>{CaseMarker::kGa});
}

TEST_CASE("thesaurus parses, merges repeated nouns, and tracks the inventory") {
  std::istringstream in(
      "# noun classes\n"
      "hon\tdocument\n"
      "inu\tanimal,pet\n"
      "hon\tartifact,document\n");
  Thesaurus thes = load_thesaurus(in);
  CHECK(thes.classes.at("hon") == std::vector<SemClass>{"document", "artifact"});
  CHECK(thes.classes.at("inu") == std::vector<SemClass>{"animal", "pet"});
  CHECK(thes.inventory == std::set<SemClass>{"animal", "artifact", "document", "pet"});
  CHECK(thes.class_count() == 4);
}

TEST_CASE("thesaurus rejects malformed lines") {
  std::istringstream no_tab("hon document\n");
  CHECK_THROWS_AS(load_thesaurus(no_tab), DataError);
  std::istringstream empty_classes("hon\t\n");
  CHECK_THROWS_AS(load_thesaurus(empty_classes), DataError);
}

TEST_CASE("thesaurus save and load round-trip") {
  Thesaurus thes;
  thes.classes["hon"] = {"document", "artifact"};
  thes.classes["inu"] = {"animal"};
  thes.inventory = {"document", "artifact", "animal"};
  std::ostringstream out;
  save_thesaurus(thes, out);
  std::istringstream in(out.str());
  Thesaurus back = load_thesaurus(in);
  CHECK(back.classes == thes.classes);
  CHECK(back.inventory == thes.inventory);
}

TEST_CASE("nouns missing from the thesaurus form their own singleton class") {
  Thesaurus thes;
  thes.classes["hon"] = {"document"};
  thes.inventory = {"document"};
  CHECK(semantic_classes(thes, "hon") == std::vector<SemClass>{"document"});
  CHECK(semantic_classes(thes, "nazo") == std::vector<SemClass>{"nazo"});
}
