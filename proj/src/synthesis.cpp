#include "zeroref/synthesis.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "zeroref/error.hpp"
#include "zeroref/util.hpp"

namespace zeroref {

using nlohmann::json;

namespace {

constexpr double kSumTolerance = 1e-6;

void check_sum(const std::string& what, double sum) {
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw DataError("synthetic parameters: " + what + " sums to " + format_number(sum) +
                    ", expected 1");
  }
}

void check_rate(const std::string& what, double v) {
  if (v < 0.0 || v > 1.0) {
    throw DataError("synthetic parameters: " + what + " must be within [0,1]");
  }
}

std::string padded_id(const char* prefix, int n) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s-%06d", prefix, n);
  return buf;
}

Token noun_token(const std::string& lemma, std::optional<std::string> particle, bool rel) {
  Token t;
  t.surface = lemma;
  t.lemma = lemma;
  t.pos = Pos::kNoun;
  t.particle = std::move(particle);
  t.in_relative_clause = rel;
  return t;
}

Token verb_token(const std::string& lemma) {
  Token t;
  t.surface = lemma;
  t.lemma = lemma;
  t.pos = Pos::kVerb;
  return t;
}

int add_token(Sentence& s, Token t) {
  int idx = static_cast<int>(s.tokens.size());
  t.index = idx;
  s.tokens.push_back(std::move(t));
  return idx;
}

// Draw a key of a string-keyed distribution; map order fixes the draw order.
const std::string& sample_string_key(const std::map<std::string, double>& dist, Rng& rng) {
  std::vector<const std::string*> keys;
  std::vector<double> weights;
  keys.reserve(dist.size());
  weights.reserve(dist.size());
  for (const auto& [k, w] : dist) {
    keys.push_back(&k);
    weights.push_back(w);
  }
  return *keys[rng.categorical(weights)];
}

CaseMarker sample_case_key(const std::map<CaseMarker, double>& dist, Rng& rng) {
  std::vector<CaseMarker> keys;
  std::vector<double> weights;
  for (const auto& [k, w] : dist) {
    keys.push_back(k);
    weights.push_back(w);
  }
  return keys[rng.categorical(weights)];
}

std::map<CaseMarker, double> case_map_from_json(const json& j, const std::string& what) {
  if (!j.is_object()) throw DataError("synthetic parameters: " + what + " must be an object");
  std::map<CaseMarker, double> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto c = case_from_string(it.key());
    if (!c) throw DataError("synthetic parameters: unknown case '" + it.key() + "' in " + what);
    out[*c] = it->get<double>();
  }
  return out;
}

json case_map_to_json(const std::map<CaseMarker, double>& m) {
  json j = json::object();
  for (const auto& [c, w] : m) j[to_string(c)] = w;
  return j;
}

}  // namespace

SynthParams default_synth_params() {
  SynthParams p;

  auto verb = [](std::string lemma, std::set<CaseMarker> frame,
                 std::map<CaseMarker, double> emission) {
    VerbSpec v;
    v.lemma = std::move(lemma);
    v.frame = std::move(frame);
    v.case_emission = std::move(emission);
    return v;
  };
  using enum CaseMarker;
  p.verbs.push_back(verb("yomu", {kGa, kWo, kNi}, {{kGa, 0.45}, {kWo, 0.45}, {kNi, 0.10}}));
  p.verbs.push_back(verb("kau", {kGa, kWo}, {{kGa, 0.40}, {kWo, 0.60}}));
  p.verbs.push_back(verb("taberu", {kGa, kWo}, {{kGa, 0.55}, {kWo, 0.45}}));
  p.verbs.push_back(verb("miru", {kGa, kWo, kNi}, {{kGa, 0.50}, {kWo, 0.40}, {kNi, 0.10}}));
  p.verbs.push_back(verb("watasu", {kGa, kWo, kNi}, {{kGa, 0.30}, {kWo, 0.35}, {kNi, 0.35}}));
  p.verbs.push_back(verb("hashiru", {kGa}, {{kGa, 1.0}}));

  p.particle_truth[kGa] = {{"wa", 0.50}, {"ga", 0.30}, {"mo", 0.12}, {"no", 0.08}};
  p.particle_truth[kWo] = {{"wo", 0.45}, {"wa", 0.25}, {"no", 0.20}, {"ga", 0.10}};
  p.particle_truth[kNi] = {{"ni", 0.40}, {"no", 0.25}, {"wa", 0.25}, {"de", 0.10}};

  p.distance_truth = {0.45, 0.30, 0.15, 0.10};
  p.relative_truth = 0.15;

  p.classes = {"person", "org", "animal", "artifact", "document", "food",
               "place",  "tool", "event",  "idea",     "time",     "body"};

  auto& sem = p.semantic_truth;
  sem["yomu"][kGa] = {{"person", 0.60}, {"org", 0.25}, {"animal", 0.15}};
  sem["yomu"][kWo] = {{"document", 0.70}, {"idea", 0.20}, {"artifact", 0.10}};
  sem["yomu"][kNi] = {{"place", 0.50}, {"time", 0.30}, {"event", 0.20}};
  sem["kau"][kGa] = {{"person", 0.65}, {"org", 0.35}};
  sem["kau"][kWo] = {{"artifact", 0.45}, {"food", 0.30}, {"tool", 0.15}, {"document", 0.10}};
  sem["taberu"][kGa] = {{"person", 0.50}, {"animal", 0.50}};
  sem["taberu"][kWo] = {{"food", 0.80}, {"artifact", 0.10}, {"body", 0.10}};
  sem["miru"][kGa] = {{"person", 0.70}, {"animal", 0.20}, {"org", 0.10}};
  sem["miru"][kWo] = {{"event", 0.40}, {"document", 0.25}, {"place", 0.20}, {"artifact", 0.15}};
  sem["miru"][kNi] = {{"place", 0.60}, {"time", 0.40}};
  sem["watasu"][kGa] = {{"person", 0.80}, {"org", 0.20}};
  sem["watasu"][kWo] = {{"document", 0.50}, {"artifact", 0.30}, {"tool", 0.20}};
  sem["watasu"][kNi] = {{"person", 0.70}, {"org", 0.30}};
  sem["hashiru"][kGa] = {{"person", 0.50}, {"animal", 0.30}, {"tool", 0.20}};

  p.distractor_particles = {"wa", "no", "de", "to", "mo", "ga", "wo"};
  return p;
}

void validate_synth_params(const SynthParams& p) {
  if (p.verbs.empty()) throw DataError("synthetic parameters: no verbs");
  if (p.classes.empty()) throw DataError("synthetic parameters: no classes");
  if (p.nouns_per_class < 1) {
    throw DataError("synthetic parameters: nouns_per_class must be >= 1");
  }
  std::set<std::string> class_set(p.classes.begin(), p.classes.end());
  if (class_set.size() != p.classes.size()) {
    throw DataError("synthetic parameters: duplicate class");
  }

  std::set<std::string> verb_set;
  for (const VerbSpec& v : p.verbs) {
    if (v.lemma.empty()) throw DataError("synthetic parameters: empty verb lemma");
    if (!verb_set.insert(v.lemma).second) {
      throw DataError("synthetic parameters: duplicate verb '" + v.lemma + "'");
    }
    if (v.frame.empty()) {
      throw DataError("synthetic parameters: verb '" + v.lemma + "' has an empty frame");
    }
    if (v.case_emission.empty()) {
      throw DataError("synthetic parameters: verb '" + v.lemma + "' has no case emission");
    }
    double sum = 0.0;
    for (const auto& [c, w] : v.case_emission) {
      if (!v.frame.count(c)) {
        throw DataError("synthetic parameters: emission case '" + to_string(c) +
                        "' outside frame of verb '" + v.lemma + "'");
      }
      if (w < 0.0) throw DataError("synthetic parameters: negative emission weight");
      sum += w;
    }
    check_sum("case emission for verb '" + v.lemma + "'", sum);

    auto sem_it = p.semantic_truth.find(v.lemma);
    for (CaseMarker c : v.frame) {
      if (sem_it == p.semantic_truth.end() || !sem_it->second.count(c)) {
        throw DataError("synthetic parameters: no semantic truth for verb '" + v.lemma +
                        "' case '" + to_string(c) + "'");
      }
      const auto& dist = sem_it->second.at(c);
      if (dist.empty()) {
        throw DataError("synthetic parameters: empty semantic truth for verb '" + v.lemma +
                        "'");
      }
      double ssum = 0.0;
      for (const auto& [cls, w] : dist) {
        if (!class_set.count(cls)) {
          throw DataError("synthetic parameters: semantic truth class '" + cls +
                          "' is not in the class list");
        }
        if (w < 0.0) throw DataError("synthetic parameters: negative semantic weight");
        ssum += w;
      }
      check_sum("semantic truth for verb '" + v.lemma + "' case '" + to_string(c) + "'",
                ssum);
    }

    for (const auto& [c, w] : v.case_emission) {
      if (w > 0.0 && !p.particle_truth.count(c)) {
        throw DataError("synthetic parameters: no particle truth for case '" +
                        to_string(c) + "'");
      }
    }
  }

  for (const auto& [c, dist] : p.particle_truth) {
    if (dist.empty()) {
      throw DataError("synthetic parameters: empty particle truth for case '" +
                      to_string(c) + "'");
    }
    double sum = 0.0;
    for (const auto& [pcl, w] : dist) {
      if (pcl.empty()) throw DataError("synthetic parameters: empty particle name");
      if (w < 0.0) throw DataError("synthetic parameters: negative particle weight");
      sum += w;
    }
    check_sum("particle truth for case '" + to_string(c) + "'", sum);
  }

  if (p.distance_truth.empty()) {
    throw DataError("synthetic parameters: empty distance distribution");
  }
  double dsum = 0.0;
  for (double w : p.distance_truth) {
    if (w < 0.0) throw DataError("synthetic parameters: negative distance weight");
    dsum += w;
  }
  check_sum("distance distribution", dsum);

  check_rate("relative_truth", p.relative_truth);
  check_rate("multi_class_fraction", p.multi_class_fraction);
  check_rate("exophoric_rate", p.exophoric_rate);
  check_rate("fill_probability", p.fill_probability);
  check_rate("bare_distractor_rate", p.bare_distractor_rate);
  check_rate("distractor_relative_rate", p.distractor_relative_rate);

  if (p.documents < 0 || p.zero_pronouns_per_doc < 0 || p.distractors_per_sentence < 0 ||
      p.unannotated_pairs < 0) {
    throw DataError("synthetic parameters: negative size");
  }
  if (p.unannotated_sentences_per_doc < 1) {
    throw DataError("synthetic parameters: unannotated_sentences_per_doc must be >= 1");
  }
  if (p.distractors_per_sentence > 0 && p.bare_distractor_rate < 1.0 &&
      p.distractor_particles.empty()) {
    throw DataError("synthetic parameters: no distractor particles");
  }
}

SynthOutput generate_synthetic_corpus(const SynthParams& p, std::uint64_t seed) {
  validate_synth_params(p);
  Rng rng(seed);
  SynthOutput out;

  std::map<SemClass, std::vector<std::string>> nouns_by_class;
  std::vector<std::string> all_nouns;
  for (std::size_t ci = 0; ci < p.classes.size(); ++ci) {
    const SemClass& cls = p.classes[ci];
    for (int j = 0; j < p.nouns_per_class; ++j) {
      std::string lemma = cls + "_n" + std::to_string(j);
      std::vector<SemClass> memberships{cls};
      if (p.classes.size() > 1 && rng.bernoulli(p.multi_class_fraction)) {
        memberships.push_back(p.classes[(ci + 1) % p.classes.size()]);
      }
      out.thesaurus.classes[lemma] = std::move(memberships);
      nouns_by_class[cls].push_back(lemma);
      all_nouns.push_back(std::move(lemma));
    }
  }
  for (const SemClass& cls : p.classes) out.thesaurus.inventory.insert(cls);

  for (const VerbSpec& v : p.verbs) {
    if (v.listed) out.lexicon.entries[v.lemma] = v.frame;
  }

  auto pick_noun = [&](const SemClass& cls) -> const std::string& {
    const std::vector<std::string>& pool = nouns_by_class.at(cls);
    return pool[rng.uniform_int(static_cast<int>(pool.size()))];
  };
  auto make_distractor = [&]() {
    const std::string& lemma = all_nouns[rng.uniform_int(static_cast<int>(all_nouns.size()))];
    std::optional<std::string> particle;
    if (!rng.bernoulli(p.bare_distractor_rate)) {
      particle = p.distractor_particles[rng.uniform_int(
          static_cast<int>(p.distractor_particles.size()))];
    }
    bool rel = rng.bernoulli(p.distractor_relative_rate);
    return noun_token(lemma, std::move(particle), rel);
  };
  auto random_verb_lemma = [&]() -> const std::string& {
    return p.verbs[rng.uniform_int(static_cast<int>(p.verbs.size()))].lemma;
  };

  for (int di = 0; di < p.documents; ++di) {
    AnalyzedDocument doc;
    doc.doc_id = padded_id("synth", di);
    for (int zi = 0; zi < p.zero_pronouns_per_doc; ++zi) {
      const VerbSpec& verb = p.verbs[rng.uniform_int(static_cast<int>(p.verbs.size()))];
      CaseMarker target = sample_case_key(verb.case_emission, rng);
      bool exophoric = rng.bernoulli(p.exophoric_rate);

      std::string ant_particle;
      std::string ant_lemma;
      int gap = 0;
      bool ant_rel = false;
      if (!exophoric) {
        ant_particle = sample_string_key(p.particle_truth.at(target), rng);
        gap = static_cast<int>(rng.categorical(p.distance_truth));
        ant_rel = rng.bernoulli(p.relative_truth);
        const SemClass& cls =
            sample_string_key(p.semantic_truth.at(verb.lemma).at(target), rng);
        ant_lemma = pick_noun(cls);
      }

      int base = static_cast<int>(doc.sentences.size());
      int ant_token = -1;

      if (!exophoric && gap > 0) {
        Sentence sa;
        for (int i = 0; i < p.distractors_per_sentence; ++i) add_token(sa, make_distractor());
        ant_token = add_token(sa, noun_token(ant_lemma, ant_particle, ant_rel));
        add_token(sa, verb_token(random_verb_lemma()));
        doc.sentences.push_back(std::move(sa));
        for (int f = 1; f < gap; ++f) {
          Sentence sf;
          for (int i = 0; i < p.distractors_per_sentence; ++i) add_token(sf, make_distractor());
          add_token(sf, verb_token(random_verb_lemma()));
          doc.sentences.push_back(std::move(sf));
        }
      }

      Sentence sp;
      for (int i = 0; i < p.distractors_per_sentence; ++i) add_token(sp, make_distractor());
      if (!exophoric && gap == 0) {
        ant_token = add_token(sp, noun_token(ant_lemma, ant_particle, ant_rel));
      }
      PredicateInstance pred;
      pred.verb = verb.lemma;
      for (CaseMarker c : kAllCases) {
        if (!verb.frame.count(c) || c == target) continue;
        if (!rng.bernoulli(p.fill_probability)) continue;
        const SemClass& cls = sample_string_key(p.semantic_truth.at(verb.lemma).at(c), rng);
        int idx = add_token(sp, noun_token(pick_noun(cls), to_string(c), false));
        pred.filled_cases[c] = idx;
      }
      pred.token_index = add_token(sp, verb_token(verb.lemma));
      sp.predicates.push_back(pred);
      doc.sentences.push_back(std::move(sp));
      int pred_sentence = static_cast<int>(doc.sentences.size()) - 1;

      GoldAnnotation ann;
      ann.doc_id = doc.doc_id;
      ann.predicate = {pred_sentence, pred.token_index};
      ann.case_marker = target;
      if (!exophoric) {
        int ant_sentence = gap == 0 ? pred_sentence : base;
        ann.antecedent = TokenRef{ant_sentence, ant_token};
      }
      out.annotations.push_back(std::move(ann));
    }
    out.documents.push_back(std::move(doc));
  }

  long remaining = p.unannotated_pairs;
  int uid = 0;
  while (remaining > 0) {
    AnalyzedDocument doc;
    doc.doc_id = padded_id("raw", uid++);
    int count = static_cast<int>(
        std::min<long>(remaining, p.unannotated_sentences_per_doc));
    for (int i = 0; i < count; ++i) {
      const VerbSpec& verb = p.verbs[rng.uniform_int(static_cast<int>(p.verbs.size()))];
      CaseMarker c = sample_case_key(verb.case_emission, rng);
      const SemClass& cls = sample_string_key(p.semantic_truth.at(verb.lemma).at(c), rng);
      Sentence s;
      add_token(s, noun_token(pick_noun(cls), to_string(c), false));
      add_token(s, verb_token(verb.lemma));
      doc.sentences.push_back(std::move(s));
    }
    remaining -= count;
    out.unannotated.push_back(std::move(doc));
  }

  return out;
}

SynthParams synth_params_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("synthetic parameters: ") + e.what());
  }
  if (!j.is_object()) {
    throw DataError("synthetic parameters: top-level value must be an object");
  }
  SynthParams p = default_synth_params();
  try {
    if (j.contains("verbs")) {
      p.verbs.clear();
      for (const json& vj : j.at("verbs")) {
        VerbSpec v;
        v.lemma = vj.at("lemma").get<std::string>();
        for (const json& cj : vj.at("frame")) {
          auto c = case_from_string(cj.get<std::string>());
          if (!c) {
            throw DataError("synthetic parameters: unknown case in frame of '" + v.lemma +
                            "'");
          }
          v.frame.insert(*c);
        }
        v.case_emission =
            case_map_from_json(vj.at("case_emission"), "case_emission of '" + v.lemma + "'");
        if (vj.contains("listed")) v.listed = vj.at("listed").get<bool>();
        p.verbs.push_back(std::move(v));
      }
    }
    if (j.contains("particle_truth")) {
      p.particle_truth.clear();
      for (auto it = j.at("particle_truth").begin(); it != j.at("particle_truth").end();
           ++it) {
        auto c = case_from_string(it.key());
        if (!c) {
          throw DataError("synthetic parameters: unknown case '" + it.key() +
                          "' in particle_truth");
        }
        p.particle_truth[*c] = it->get<std::map<std::string, double>>();
      }
    }
    if (j.contains("distance_truth")) {
      p.distance_truth = j.at("distance_truth").get<std::vector<double>>();
    }
    if (j.contains("relative_truth")) p.relative_truth = j.at("relative_truth").get<double>();
    if (j.contains("semantic_truth")) {
      p.semantic_truth.clear();
      for (auto vit = j.at("semantic_truth").begin(); vit != j.at("semantic_truth").end();
           ++vit) {
        for (auto cit = vit->begin(); cit != vit->end(); ++cit) {
          auto c = case_from_string(cit.key());
          if (!c) {
            throw DataError("synthetic parameters: unknown case '" + cit.key() +
                            "' in semantic_truth");
          }
          p.semantic_truth[vit.key()][*c] = cit->get<std::map<std::string, double>>();
        }
      }
    }
    if (j.contains("classes")) p.classes = j.at("classes").get<std::vector<std::string>>();
    if (j.contains("nouns_per_class")) p.nouns_per_class = j.at("nouns_per_class").get<int>();
    if (j.contains("multi_class_fraction")) {
      p.multi_class_fraction = j.at("multi_class_fraction").get<double>();
    }
    if (j.contains("documents")) p.documents = j.at("documents").get<int>();
    if (j.contains("zero_pronouns_per_doc")) {
      p.zero_pronouns_per_doc = j.at("zero_pronouns_per_doc").get<int>();
    }
    if (j.contains("exophoric_rate")) p.exophoric_rate = j.at("exophoric_rate").get<double>();
    if (j.contains("fill_probability")) {
      p.fill_probability = j.at("fill_probability").get<double>();
    }
    if (j.contains("distractors_per_sentence")) {
      p.distractors_per_sentence = j.at("distractors_per_sentence").get<int>();
    }
    if (j.contains("distractor_particles")) {
      p.distractor_particles = j.at("distractor_particles").get<std::vector<std::string>>();
    }
    if (j.contains("bare_distractor_rate")) {
      p.bare_distractor_rate = j.at("bare_distractor_rate").get<double>();
    }
    if (j.contains("distractor_relative_rate")) {
      p.distractor_relative_rate = j.at("distractor_relative_rate").get<double>();
    }
    if (j.contains("unannotated_pairs")) {
      p.unannotated_pairs = j.at("unannotated_pairs").get<long>();
    }
    if (j.contains("unannotated_sentences_per_doc")) {
      p.unannotated_sentences_per_doc = j.at("unannotated_sentences_per_doc").get<int>();
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("synthetic parameters: ") + e.what());
  }
  return p;
}

std::string synth_params_to_json(const SynthParams& p) {
  json j;
  json verbs = json::array();
  for (const VerbSpec& v : p.verbs) {
    json vj;
    vj["lemma"] = v.lemma;
    json frame = json::array();
    for (CaseMarker c : v.frame) frame.push_back(to_string(c));
    vj["frame"] = std::move(frame);
    vj["case_emission"] = case_map_to_json(v.case_emission);
    vj["listed"] = v.listed;
    verbs.push_back(std::move(vj));
  }
  j["verbs"] = std::move(verbs);
  json pt = json::object();
  for (const auto& [c, dist] : p.particle_truth) pt[to_string(c)] = dist;
  j["particle_truth"] = std::move(pt);
  j["distance_truth"] = p.distance_truth;
  j["relative_truth"] = p.relative_truth;
  json st = json::object();
  for (const auto& [verb, by_case] : p.semantic_truth) {
    json vj = json::object();
    for (const auto& [c, dist] : by_case) vj[to_string(c)] = dist;
    st[verb] = std::move(vj);
  }
  j["semantic_truth"] = std::move(st);
  j["classes"] = p.classes;
  j["nouns_per_class"] = p.nouns_per_class;
  j["multi_class_fraction"] = p.multi_class_fraction;
  j["documents"] = p.documents;
  j["zero_pronouns_per_doc"] = p.zero_pronouns_per_doc;
  j["exophoric_rate"] = p.exophoric_rate;
  j["fill_probability"] = p.fill_probability;
  j["distractors_per_sentence"] = p.distractors_per_sentence;
  j["distractor_particles"] = p.distractor_particles;
  j["bare_distractor_rate"] = p.bare_distractor_rate;
  j["distractor_relative_rate"] = p.distractor_relative_rate;
  j["unannotated_pairs"] = p.unannotated_pairs;
  j["unannotated_sentences_per_doc"] = p.unannotated_sentences_per_doc;
  return j.dump(2) + "\n";
}

}  // namespace zeroref
