#include "zeroref/corpus.hpp"

#include <json.hpp>

#include <algorithm>
#include <climits>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "zeroref/error.hpp"

namespace zeroref {

using nlohmann::json;

namespace {

const std::string kCaseNames[] = {"ga", "wo", "ni"};
const std::string kPosNames[] = {"noun", "verb", "particle", "other"};

[[noreturn]] void fail(int line, const std::string& path, const std::string& msg) {
  std::ostringstream os;
  os << "line " << line << ": ";
  if (!path.empty()) os << path << ": ";
  os << msg;
  throw DataError(os.str());
}

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

std::string at(const std::string& base, const char* key, std::size_t i) {
  return join(base, std::string(key) + "[" + std::to_string(i) + "]");
}

const json& member(const json& obj, const char* key, const std::string& base, int line) {
  if (!obj.is_object()) fail(line, base, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(line, join(base, key), "missing field");
  return *it;
}

std::string get_string(const json& v, const std::string& path, int line) {
  if (!v.is_string()) fail(line, path, "expected a string");
  return v.get<std::string>();
}

int get_index(const json& v, const std::string& path, int line) {
  if (!v.is_number_integer()) fail(line, path, "expected an integer");
  auto n = v.get<long long>();
  if (n < 0 || n > INT_MAX) fail(line, path, "index out of range");
  return static_cast<int>(n);
}

bool get_bool(const json& v, const std::string& path, int line) {
  if (!v.is_boolean()) fail(line, path, "expected a boolean");
  return v.get<bool>();
}

CaseMarker get_case(const json& v, const std::string& path, int line) {
  std::string s = get_string(v, path, line);
  auto c = case_from_string(s);
  if (!c) fail(line, path, "unknown case '" + s + "'");
  return *c;
}

Token parse_token(const json& j, int index, const std::string& path, int line) {
  Token t;
  t.index = index;
  t.surface = get_string(member(j, "surface", path, line), join(path, "surface"), line);
  t.lemma = get_string(member(j, "lemma", path, line), join(path, "lemma"), line);
  std::string pos = get_string(member(j, "pos", path, line), join(path, "pos"), line);
  auto p = pos_from_string(pos);
  if (!p) fail(line, join(path, "pos"), "unknown pos '" + pos + "'");
  t.pos = *p;
  if (auto it = j.find("particle"); it != j.end() && !it->is_null()) {
    t.particle = get_string(*it, join(path, "particle"), line);
  }
  if (auto it = j.find("head"); it != j.end() && !it->is_null()) {
    t.head = get_index(*it, join(path, "head"), line);
  }
  if (auto it = j.find("in_relative_clause"); it != j.end()) {
    t.in_relative_clause = get_bool(*it, join(path, "in_relative_clause"), line);
  }
  return t;
}

PredicateInstance parse_predicate(const json& j, const std::string& path, int line) {
  PredicateInstance p;
  p.token_index =
      get_index(member(j, "token_index", path, line), join(path, "token_index"), line);
  p.verb = get_string(member(j, "verb", path, line), join(path, "verb"), line);
  const json& filled = member(j, "filled_cases", path, line);
  if (!filled.is_object()) fail(line, join(path, "filled_cases"), "expected an object");
  for (auto it = filled.begin(); it != filled.end(); ++it) {
    auto c = case_from_string(it.key());
    std::string fpath = join(path, "filled_cases." + it.key());
    if (!c) fail(line, fpath, "unknown case '" + it.key() + "'");
    if (it->is_null()) {
      p.filled_cases[*c] = std::nullopt;
    } else {
      p.filled_cases[*c] = get_index(*it, fpath, line);
    }
  }
  return p;
}

AnalyzedDocument parse_document_record(const std::string& text, int line) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(line, "", std::string("invalid record: ") + e.what());
  }
  AnalyzedDocument doc;
  doc.doc_id = get_string(member(j, "doc_id", "", line), "doc_id", line);
  const json& sents = member(j, "sentences", "", line);
  if (!sents.is_array()) fail(line, "sentences", "expected an array");
  for (std::size_t si = 0; si < sents.size(); ++si) {
    std::string spath = at("", "sentences", si);
    const json& sj = sents[si];
    Sentence sent;
    const json& toks = member(sj, "tokens", spath, line);
    if (!toks.is_array()) fail(line, join(spath, "tokens"), "expected an array");
    for (std::size_t ti = 0; ti < toks.size(); ++ti) {
      sent.tokens.push_back(
          parse_token(toks[ti], static_cast<int>(ti), at(spath, "tokens", ti), line));
    }
    const json& preds = member(sj, "predicates", spath, line);
    if (!preds.is_array()) fail(line, join(spath, "predicates"), "expected an array");
    for (std::size_t pi = 0; pi < preds.size(); ++pi) {
      sent.predicates.push_back(parse_predicate(preds[pi], at(spath, "predicates", pi), line));
    }
    doc.sentences.push_back(std::move(sent));
  }
  return doc;
}

json token_to_json(const Token& t) {
  json j;
  j["surface"] = t.surface;
  j["lemma"] = t.lemma;
  j["pos"] = to_string(t.pos);
  if (t.particle) j["particle"] = *t.particle;
  if (t.head) j["head"] = *t.head;
  j["in_relative_clause"] = t.in_relative_clause;
  return j;
}

json predicate_to_json(const PredicateInstance& p) {
  json j;
  j["token_index"] = p.token_index;
  j["verb"] = p.verb;
  json filled = json::object();
  for (const auto& [c, tok] : p.filled_cases) {
    if (tok) {
      filled[to_string(c)] = *tok;
    } else {
      filled[to_string(c)] = nullptr;
    }
  }
  j["filled_cases"] = std::move(filled);
  return j;
}

std::string loc(int sentence, int token) {
  return "s" + std::to_string(sentence) + "t" + std::to_string(token);
}

}  // namespace

const std::string& to_string(CaseMarker c) { return kCaseNames[static_cast<int>(c)]; }

const std::string& to_string(Pos p) { return kPosNames[static_cast<int>(p)]; }

std::optional<CaseMarker> case_from_string(std::string_view s) {
  for (int i = 0; i < kCaseCount; ++i) {
    if (s == kCaseNames[i]) return static_cast<CaseMarker>(i);
  }
  return std::nullopt;
}

std::optional<Pos> pos_from_string(std::string_view s) {
  for (int i = 0; i < 4; ++i) {
    if (s == kPosNames[i]) return static_cast<Pos>(i);
  }
  return std::nullopt;
}

std::vector<std::string> validate_document(const AnalyzedDocument& doc) {
  std::vector<std::string> out;
  if (doc.doc_id.empty()) out.push_back("empty doc_id");
  for (std::size_t si = 0; si < doc.sentences.size(); ++si) {
    const Sentence& sent = doc.sentences[si];
    int n = static_cast<int>(sent.tokens.size());
    for (int ti = 0; ti < n; ++ti) {
      const Token& t = sent.tokens[ti];
      const std::string where = loc(static_cast<int>(si), ti);
      if (t.particle && t.pos != Pos::kNoun) {
        out.push_back("particle on non-noun at " + where);
      }
      if (t.head) {
        if (*t.head < 0 || *t.head >= n) {
          out.push_back("head out of bounds at " + where);
        } else if (*t.head == ti) {
          out.push_back("head points at itself at " + where);
        }
      }
    }
    for (const PredicateInstance& p : sent.predicates) {
      const std::string where = loc(static_cast<int>(si), p.token_index);
      if (p.token_index < 0 || p.token_index >= n) {
        out.push_back("predicate token out of bounds at " + where);
        continue;
      }
      if (sent.tokens[p.token_index].pos != Pos::kVerb) {
        out.push_back("predicate on non-verb at " + where);
      }
      for (const auto& [c, filler] : p.filled_cases) {
        if (!filler) continue;
        if (*filler < 0 || *filler >= n) {
          out.push_back("filler for " + to_string(c) + " out of bounds at " + where);
        } else if (sent.tokens[*filler].pos != Pos::kNoun) {
          out.push_back("filler for " + to_string(c) + " is not a noun at " + where);
        }
      }
    }
  }
  return out;
}

std::vector<AnalyzedDocument> parse_corpus(std::istream& in) {
  std::vector<AnalyzedDocument> docs;
  std::set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    AnalyzedDocument doc = parse_document_record(line, line_no);
    if (!seen.insert(doc.doc_id).second) {
      fail(line_no, "doc_id", "duplicate doc_id '" + doc.doc_id + "'");
    }
    std::vector<std::string> violations = validate_document(doc);
    if (!violations.empty()) {
      std::string msg = violations[0];
      for (std::size_t i = 1; i < violations.size(); ++i) msg += "; " + violations[i];
      fail(line_no, "", msg);
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::string serialize_document(const AnalyzedDocument& doc) {
  json j;
  j["doc_id"] = doc.doc_id;
  json sents = json::array();
  for (const Sentence& sent : doc.sentences) {
    json sj;
    json toks = json::array();
    for (const Token& t : sent.tokens) toks.push_back(token_to_json(t));
    sj["tokens"] = std::move(toks);
    json preds = json::array();
    for (const PredicateInstance& p : sent.predicates) preds.push_back(predicate_to_json(p));
    sj["predicates"] = std::move(preds);
    sents.push_back(std::move(sj));
  }
  j["sentences"] = std::move(sents);
  return j.dump();
}

void serialize_corpus(const std::vector<AnalyzedDocument>& docs, std::ostream& out) {
  for (const AnalyzedDocument& doc : docs) out << serialize_document(doc) << '\n';
}

std::string serialize_annotation(const GoldAnnotation& ann) {
  json j;
  j["doc_id"] = ann.doc_id;
  j["sentence"] = ann.predicate.sentence;
  j["predicate_token"] = ann.predicate.token;
  j["case"] = to_string(ann.case_marker);
  if (ann.antecedent) {
    json a;
    a["sentence"] = ann.antecedent->sentence;
    a["token"] = ann.antecedent->token;
    j["antecedent"] = std::move(a);
  } else {
    j["antecedent"] = "exophoric";
  }
  return j.dump();
}

void serialize_annotations(const std::vector<GoldAnnotation>& anns, std::ostream& out) {
  for (const GoldAnnotation& ann : anns) out << serialize_annotation(ann) << '\n';
}

std::vector<GoldAnnotation> parse_annotations(std::istream& in,
                                              const std::vector<AnalyzedDocument>& docs) {
  std::map<std::string, const AnalyzedDocument*> index;
  for (const AnalyzedDocument& d : docs) index[d.doc_id] = &d;

  std::vector<GoldAnnotation> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(line_no, "", std::string("invalid record: ") + e.what());
    }
    GoldAnnotation ann;
    ann.doc_id = get_string(member(j, "doc_id", "", line_no), "doc_id", line_no);
    auto it = index.find(ann.doc_id);
    if (it == index.end()) fail(line_no, "doc_id", "unknown doc_id '" + ann.doc_id + "'");
    const AnalyzedDocument& doc = *it->second;

    ann.predicate.sentence =
        get_index(member(j, "sentence", "", line_no), "sentence", line_no);
    ann.predicate.token =
        get_index(member(j, "predicate_token", "", line_no), "predicate_token", line_no);
    ann.case_marker = get_case(member(j, "case", "", line_no), "case", line_no);

    if (ann.predicate.sentence >= static_cast<int>(doc.sentences.size())) {
      fail(line_no, "sentence", "sentence out of bounds");
    }
    const Sentence& sent = doc.sentences[ann.predicate.sentence];
    bool have_predicate = false;
    for (const PredicateInstance& p : sent.predicates) {
      if (p.token_index == ann.predicate.token) have_predicate = true;
    }
    if (!have_predicate) {
      fail(line_no, "predicate_token",
           "no predicate at " + loc(ann.predicate.sentence, ann.predicate.token));
    }

    const json& ant = member(j, "antecedent", "", line_no);
    if (ant.is_string()) {
      if (ant.get<std::string>() != "exophoric") {
        fail(line_no, "antecedent", "expected an object or \"exophoric\"");
      }
    } else {
      TokenRef ref;
      ref.sentence = get_index(member(ant, "sentence", "antecedent", line_no),
                               "antecedent.sentence", line_no);
      ref.token = get_index(member(ant, "token", "antecedent", line_no),
                            "antecedent.token", line_no);
      if (ref.sentence > ann.predicate.sentence) {
        fail(line_no, "antecedent", "antecedent after predicate sentence");
      }
      if (ref.sentence >= static_cast<int>(doc.sentences.size()) ||
          ref.token >= static_cast<int>(doc.sentences[ref.sentence].tokens.size())) {
        fail(line_no, "antecedent", "antecedent out of bounds");
      }
      if (doc.sentences[ref.sentence].tokens[ref.token].pos != Pos::kNoun) {
        fail(line_no, "antecedent",
             "antecedent is not a noun at " + loc(ref.sentence, ref.token));
      }
      ann.antecedent = ref;
    }
    out.push_back(std::move(ann));
  }
  return out;
}

std::vector<ZeroPronoun> gold_zero_pronouns(
    const AnalyzedDocument& doc, const std::vector<GoldAnnotation>& annotations) {
  std::vector<ZeroPronoun> out;
  for (const GoldAnnotation& ann : annotations) {
    if (ann.doc_id != doc.doc_id) continue;
    if (ann.predicate.sentence >= static_cast<int>(doc.sentences.size())) {
      throw DataError("annotation outside document '" + doc.doc_id + "'");
    }
    const Sentence& sent = doc.sentences[ann.predicate.sentence];
    const PredicateInstance* pred = nullptr;
    for (const PredicateInstance& p : sent.predicates) {
      if (p.token_index == ann.predicate.token) pred = &p;
    }
    if (!pred) {
      throw DataError("no predicate at " +
                      loc(ann.predicate.sentence, ann.predicate.token) + " in doc '" +
                      doc.doc_id + "'");
    }
    if (pred->filled_cases.count(ann.case_marker)) {
      throw DataError("gold annotation for overtly filled case '" +
                      to_string(ann.case_marker) + "' at " +
                      loc(ann.predicate.sentence, ann.predicate.token) + " in doc '" +
                      doc.doc_id + "'");
    }
    ZeroPronoun zp;
    zp.doc_id = doc.doc_id;
    zp.sentence = ann.predicate.sentence;
    zp.predicate_token = ann.predicate.token;
    zp.verb = pred->verb;
    zp.case_marker = ann.case_marker;
    zp.detection_prob = 1.0;
    zp.exophoric = !ann.antecedent.has_value();
    out.push_back(std::move(zp));
  }
  std::sort(out.begin(), out.end(), [](const ZeroPronoun& a, const ZeroPronoun& b) {
    if (a.sentence != b.sentence) return a.sentence < b.sentence;
    if (a.predicate_token != b.predicate_token) return a.predicate_token < b.predicate_token;
    return a.case_marker < b.case_marker;
  });
  return out;
}

const AnalyzedDocument* find_document(const std::vector<AnalyzedDocument>& docs,
                                      const std::string& doc_id) {
  for (const AnalyzedDocument& d : docs) {
    if (d.doc_id == doc_id) return &d;
  }
  return nullptr;
}

namespace {

std::vector<std::string> corpus_files(const std::string& path) {
  namespace fs = std::filesystem;
  if (!fs::exists(path)) throw DataError("no such path '" + path + "'");
  if (!fs::is_directory(path)) return {path};
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw DataError("no .jsonl files in directory '" + path + "'");
  return files;
}

}  // namespace

std::vector<AnalyzedDocument> load_corpus_path(const std::string& path) {
  std::vector<AnalyzedDocument> all;
  std::set<std::string> seen;
  for (const std::string& file : corpus_files(path)) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw DataError("cannot open '" + file + "'");
    std::vector<AnalyzedDocument> docs;
    try {
      docs = parse_corpus(in);
    } catch (const DataError& e) {
      throw DataError(file + ": " + e.what());
    }
    for (AnalyzedDocument& d : docs) {
      if (!seen.insert(d.doc_id).second) {
        throw DataError(file + ": duplicate doc_id '" + d.doc_id + "'");
      }
      all.push_back(std::move(d));
    }
  }
  return all;
}

std::vector<GoldAnnotation> load_annotations_path(
    const std::string& path, const std::vector<AnalyzedDocument>& docs) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return parse_annotations(in, docs);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

}  // namespace zeroref
