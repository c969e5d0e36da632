#include "zeroref/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "zeroref/baseline.hpp"
#include "zeroref/cooccurrence.hpp"
#include "zeroref/corpus.hpp"
#include "zeroref/detection.hpp"
#include "zeroref/error.hpp"
#include "zeroref/evaluation.hpp"
#include "zeroref/lexicon.hpp"
#include "zeroref/resolution.hpp"
#include "zeroref/synthesis.hpp"
#include "zeroref/util.hpp"

namespace zeroref {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Values from a flat "key = value" config file fill in options the command
// line left at their defaults. Flags always win over the file.
class ConfigOverlay {
 public:
  void load(const std::string& path) {
    std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      std::string_view body = trim(line);
      if (body.empty()) continue;
      std::size_t eq = body.find('=');
      if (eq == std::string_view::npos) {
        throw DataError(path + ": line " + std::to_string(line_no) +
                        ": expected 'key = value'");
      }
      std::string key(trim(body.substr(0, eq)));
      std::string value(trim(body.substr(eq + 1)));
      if (key.empty()) {
        throw DataError(path + ": line " + std::to_string(line_no) + ": empty key");
      }
      values_[key] = value;
    }
  }

  void bind(CLI::Option* opt, const std::string& key, double* target) {
    bindings_.push_back({opt, key, [key, target](const std::string& v) {
                           *target = parse_number(v, "config key '" + key + "'");
                         }});
  }
  void bind(CLI::Option* opt, const std::string& key, int* target) {
    bindings_.push_back({opt, key, [key, target](const std::string& v) {
                           *target = static_cast<int>(
                               parse_integer(v, "config key '" + key + "'"));
                         }});
  }
  void bind(CLI::Option* opt, const std::string& key, long* target) {
    bindings_.push_back({opt, key, [key, target](const std::string& v) {
                           *target = parse_integer(v, "config key '" + key + "'");
                         }});
  }
  void bind(CLI::Option* opt, const std::string& key, std::uint64_t* target) {
    bindings_.push_back({opt, key, [key, target](const std::string& v) {
                           *target = static_cast<std::uint64_t>(
                               parse_integer(v, "config key '" + key + "'"));
                         }});
  }
  void bind(CLI::Option* opt, const std::string& key, std::string* target) {
    bindings_.push_back({opt, key, [target](const std::string& v) { *target = v; }});
  }
  void bind(CLI::Option* opt, const std::string& key, bool* target) {
    bindings_.push_back({opt, key, [key, target](const std::string& v) {
                           if (v == "true" || v == "1" || v == "yes") {
                             *target = true;
                           } else if (v == "false" || v == "0" || v == "no") {
                             *target = false;
                           } else {
                             throw DataError("config key '" + key + "': bad boolean '" + v +
                                             "'");
                           }
                         }});
  }

  void apply() {
    for (const Binding& b : bindings_) {
      if (b.opt->count() > 0) continue;
      auto it = values_.find(b.key);
      if (it != values_.end()) b.set(it->second);
    }
  }

  bool provided(const CLI::Option* opt, const std::string& key) const {
    return opt->count() > 0 || values_.count(key) > 0;
  }

 private:
  struct Binding {
    CLI::Option* opt;
    std::string key;
    std::function<void(const std::string&)> set;
  };
  std::map<std::string, std::string> values_;
  std::vector<Binding> bindings_;
};

void require_option(const std::string& value, const char* flag) {
  if (value.empty()) {
    throw CLI::RequiredError(flag);
  }
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  for (const std::string& piece : split_fields(text, ',')) {
    std::string_view p = trim(piece);
    if (p.empty()) continue;
    out.push_back(static_cast<int>(parse_integer(p, what)));
  }
  if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
  return out;
}

std::vector<long> parse_long_list(const std::string& text, const char* what) {
  std::vector<long> out;
  for (const std::string& piece : split_fields(text, ',')) {
    std::string_view p = trim(piece);
    if (p.empty()) continue;
    out.push_back(parse_integer(p, what));
  }
  if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const std::string& piece : split_fields(text, ',')) {
    std::string_view p = trim(piece);
    if (p.empty()) continue;
    out.push_back(parse_number(p, what));
  }
  if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
  return out;
}

ModelKind require_model(const std::string& name) {
  auto m = model_from_string(name);
  if (!m) throw std::invalid_argument("unknown model '" + name + "'");
  return *m;
}

void ensure_dir(const std::string& path) {
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec) throw DataError("cannot create directory '" + path + "': " + ec.message());
}

void write_text_file(const fs::path& path, std::string_view content) {
  write_file(path.string(), content);
}

std::ostream& output_stream(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw DataError("cannot write '" + path + "'");
  return file;
}

// ---- synth ----------------------------------------------------------------

struct SynthOpts {
  std::string out;
  std::string params_path;
  std::uint64_t seed = 0;
  int documents = 0;
  int zero_pronouns = 0;
  long pairs = 0;
  double exophoric_rate = 0.0;
  double multi_class_fraction = 0.0;
  double fill_probability = 0.0;
  int unlisted_verbs = 0;
  CLI::Option* o_documents = nullptr;
  CLI::Option* o_zero_pronouns = nullptr;
  CLI::Option* o_pairs = nullptr;
  CLI::Option* o_exophoric = nullptr;
  CLI::Option* o_multi_class = nullptr;
  CLI::Option* o_fill = nullptr;
  CLI::Option* o_unlisted = nullptr;
};

void run_synth(const SynthOpts& o, const ConfigOverlay& overlay) {
  require_option(o.out, "--out");
  SynthParams params = o.params_path.empty()
                           ? default_synth_params()
                           : synth_params_from_json(read_file(o.params_path));
  if (overlay.provided(o.o_documents, "docs")) params.documents = o.documents;
  if (overlay.provided(o.o_zero_pronouns, "zero-pronouns")) {
    params.zero_pronouns_per_doc = o.zero_pronouns;
  }
  if (overlay.provided(o.o_pairs, "pairs")) params.unannotated_pairs = o.pairs;
  if (overlay.provided(o.o_exophoric, "exophoric-rate")) {
    params.exophoric_rate = o.exophoric_rate;
  }
  if (overlay.provided(o.o_multi_class, "multi-class-fraction")) {
    params.multi_class_fraction = o.multi_class_fraction;
  }
  if (overlay.provided(o.o_fill, "fill-probability")) {
    params.fill_probability = o.fill_probability;
  }
  if (overlay.provided(o.o_unlisted, "unlisted-verbs")) {
    if (o.unlisted_verbs < 0 || o.unlisted_verbs > static_cast<int>(params.verbs.size())) {
      throw std::invalid_argument("--unlisted-verbs out of range");
    }
    for (int i = 0; i < o.unlisted_verbs; ++i) {
      params.verbs[params.verbs.size() - 1 - i].listed = false;
    }
  }

  SynthOutput gen = generate_synthetic_corpus(params, o.seed);
  ensure_dir(o.out);
  fs::path dir(o.out);
  {
    std::ostringstream os;
    serialize_corpus(gen.documents, os);
    write_text_file(dir / "corpus.jsonl", os.str());
  }
  {
    std::ostringstream os;
    serialize_annotations(gen.annotations, os);
    write_text_file(dir / "annotations.jsonl", os.str());
  }
  {
    std::ostringstream os;
    serialize_corpus(gen.unannotated, os);
    write_text_file(dir / "unannotated.jsonl", os.str());
  }
  {
    std::ostringstream os;
    save_case_frames(gen.lexicon, os);
    write_text_file(dir / "case_frames.txt", os.str());
  }
  {
    std::ostringstream os;
    save_thesaurus(gen.thesaurus, os);
    write_text_file(dir / "thesaurus.tsv", os.str());
  }
  write_text_file(dir / "params.json", synth_params_to_json(params));
  std::cout << "wrote " << gen.documents.size() << " annotated documents, "
            << gen.annotations.size() << " annotations, " << gen.unannotated.size()
            << " unannotated documents to " << o.out << "\n";
}

// ---- extract ---------------------------------------------------------------

struct ExtractOpts {
  std::string corpus;
  std::string thesaurus;
  std::string out;
  bool fractional = false;
};

void run_extract(const ExtractOpts& o) {
  require_option(o.corpus, "--corpus");
  require_option(o.thesaurus, "--thesaurus");
  require_option(o.out, "--out");
  std::vector<AnalyzedDocument> docs = load_corpus_path(o.corpus);
  Thesaurus thes = load_thesaurus_file(o.thesaurus);
  ExtractOptions opts;
  opts.fractional_classes = o.fractional;
  CooccurrenceCounts counts = extract_cooccurrences(docs, thes, opts);
  std::ostringstream os;
  counts.save(os);
  write_file(o.out, os.str());
  std::cout << "extracted " << format_number(counts.total_pairs) << " pairs over "
            << counts.verb_counts.size() << " verbs from " << docs.size()
            << " documents\n";
}

// ---- train -----------------------------------------------------------------

struct TrainOpts {
  std::string corpus;
  std::string annotations;
  std::string thesaurus;
  std::string frames;
  std::string counts;
  std::string model = "both2";
  std::string out;
  double lambda = 0.5;
  double lambda_syn = 0.5;
  int max_distance_bin = 5;
};

void run_train(const TrainOpts& o) {
  require_option(o.corpus, "--corpus");
  require_option(o.annotations, "--annotations");
  require_option(o.thesaurus, "--thesaurus");
  require_option(o.frames, "--frames");
  require_option(o.out, "--out");
  ModelKind model = require_model(o.model);
  if (model == ModelKind::kRule) {
    throw std::invalid_argument("the rule baseline has nothing to train");
  }
  if (model_uses_sem2(model) && o.counts.empty()) {
    throw std::invalid_argument("--counts is required for the sem2 route");
  }

  std::vector<AnalyzedDocument> docs = load_corpus_path(o.corpus);
  std::vector<GoldAnnotation> anns = load_annotations_path(o.annotations, docs);
  Thesaurus thes = load_thesaurus_file(o.thesaurus);
  CaseFrameLexicon lex = load_case_frames_file(o.frames);
  std::optional<CooccurrenceCounts> counts;
  if (!o.counts.empty()) counts = CooccurrenceCounts::load_file(o.counts);

  ensure_dir(o.out);
  fs::path dir(o.out);

  std::vector<TrainingPair> pairs;
  if (model_uses_syntactic(model) || model_uses_sem1(model)) {
    pairs = build_training_pairs(docs, anns, thes);
  }
  if (model_uses_syntactic(model)) {
    SyntacticModel syn = SyntacticModel::train(pairs, o.lambda_syn, o.max_distance_bin);
    std::ostringstream os;
    syn.save(os);
    write_text_file(dir / "syntactic.model", os.str());
  }
  if (model_uses_sem1(model)) {
    SemanticModel sem = SemanticModel::train_annotated(pairs, thes, o.lambda);
    std::ostringstream os;
    sem.save(os);
    write_text_file(dir / "semantic.model", os.str());
  } else if (model_uses_sem2(model)) {
    SemanticModel sem = SemanticModel::from_cooccurrences(*counts, thes, o.lambda);
    std::ostringstream os;
    sem.save(os);
    write_text_file(dir / "semantic.model", os.str());
  }

  // The model directory is self-contained: resolve needs the frames for
  // detection, the thesaurus for candidate classes and the counts for
  // detection probabilities.
  {
    std::ostringstream os;
    save_case_frames(lex, os);
    write_text_file(dir / "case_frames.txt", os.str());
  }
  {
    std::ostringstream os;
    save_thesaurus(thes, os);
    write_text_file(dir / "thesaurus.tsv", os.str());
  }
  if (counts) {
    std::ostringstream os;
    counts->save(os);
    write_text_file(dir / "counts.tsv", os.str());
  } else {
    std::cerr << "note: no --counts given; detection probabilities for wo/ni will be 0\n";
  }
  std::cout << "trained " << to_string(model) << " on " << anns.size()
            << " annotations into " << o.out << "\n";
}

// ---- detect ----------------------------------------------------------------

struct DetectOpts {
  std::string doc;
  std::string frames;
  std::string counts;
  std::string out;
  double theta = 0.0;
  double pzero_exponent = 1.0;
  double pzero_min_count = 0.0;
};

void run_detect(const DetectOpts& o) {
  require_option(o.doc, "--doc");
  require_option(o.frames, "--frames");
  require_option(o.counts, "--counts");
  std::vector<AnalyzedDocument> docs = load_corpus_path(o.doc);
  CaseFrameLexicon lex = load_case_frames_file(o.frames);
  CooccurrenceCounts counts = CooccurrenceCounts::load_file(o.counts);
  PZeroOptions pz{o.pzero_exponent, o.pzero_min_count};

  std::ofstream file;
  std::ostream& out = output_stream(o.out, file);
  for (const AnalyzedDocument& doc : docs) {
    for (const ZeroPronoun& zp : detect_zero_pronouns(doc, lex, counts, o.theta, pz)) {
      json j;
      j["doc_id"] = zp.doc_id;
      j["sentence"] = zp.sentence;
      j["token"] = zp.predicate_token;
      j["verb"] = zp.verb;
      j["case"] = to_string(zp.case_marker);
      j["prob"] = zp.detection_prob;
      out << j.dump() << '\n';
    }
  }
}

// ---- resolve ---------------------------------------------------------------

struct ResolveOpts {
  std::string doc;
  std::string models;
  std::string model = "both2";
  std::string rules;
  int k = 1;
  int window = 3;
  double t = 0.5;
  double certainty_threshold = 0.0;
  double theta = 0.0;
  std::string out;
};

void run_resolve(const ResolveOpts& o) {
  require_option(o.doc, "--doc");
  ModelKind model = require_model(o.model);
  // Even the rule baseline needs the model directory: it carries the case
  // frames for detection and the thesaurus for candidate features.
  require_option(o.models, "--models");

  std::vector<AnalyzedDocument> docs = load_corpus_path(o.doc);

  fs::path dir(o.models);
  CaseFrameLexicon lex = load_case_frames_file((dir / "case_frames.txt").string());
  Thesaurus thes = load_thesaurus_file((dir / "thesaurus.tsv").string());
  CooccurrenceCounts counts;
  if (fs::exists(dir / "counts.tsv")) {
    counts = CooccurrenceCounts::load_file((dir / "counts.tsv").string());
  } else {
    std::cerr << "note: " << (dir / "counts.tsv").string()
              << " missing; detection probabilities for wo/ni will be 0\n";
  }

  std::optional<SyntacticModel> syn;
  std::optional<SemanticModel> sem;
  if (model_uses_syntactic(model)) {
    syn = SyntacticModel::load_file((dir / "syntactic.model").string());
  }
  if (model_uses_sem1(model) || model_uses_sem2(model)) {
    sem = SemanticModel::load_file((dir / "semantic.model").string());
  }
  RuleTable rules = o.rules.empty() ? RuleTable::defaults() : load_rules_file(o.rules);
  if (model == ModelKind::kRule && o.certainty_threshold != 0.0) {
    throw std::invalid_argument("certainty gating applies to probabilistic models only");
  }

  std::ofstream file;
  std::ostream& out = output_stream(o.out, file);
  for (const AnalyzedDocument& doc : docs) {
    for (const ZeroPronoun& zp : detect_zero_pronouns(doc, lex, counts, o.theta)) {
      std::vector<AntecedentCandidate> cands = extract_candidates(doc, zp, o.window, thes);
      std::vector<ScoredCandidate> scored;
      double cert = 0.0;
      bool withheld = false;
      if (model == ModelKind::kRule) {
        scored = rank_by_rules(rules, doc, zp, cands, o.k);
      } else {
        ResolutionScorer scorer;
        scorer.syntactic = syn ? &*syn : nullptr;
        scorer.semantic = sem ? &*sem : nullptr;
        scorer.mode = model == ModelKind::kSyn    ? ScoreMode::kSyntacticOnly
                      : model == ModelKind::kSem1 ? ScoreMode::kSemanticOnly
                      : model == ModelKind::kSem2 ? ScoreMode::kSemanticOnly
                                                  : ScoreMode::kBoth;
        scored = resolve(scorer, zp, cands, o.k);
        cert = certainty(scored, {o.t, o.certainty_threshold});
        withheld = cert < o.certainty_threshold;
      }
      json j;
      j["doc_id"] = zp.doc_id;
      j["sentence"] = zp.sentence;
      j["predicate_token"] = zp.predicate_token;
      j["verb"] = zp.verb;
      j["case"] = to_string(zp.case_marker);
      j["detection_prob"] = zp.detection_prob;
      j["certainty"] = cert;
      j["withheld"] = withheld;
      json ants = json::array();
      for (const ScoredCandidate& sc : scored) {
        json a;
        a["rank"] = sc.rank;
        a["sentence"] = sc.candidate.location.sentence;
        a["token"] = sc.candidate.location.token;
        a["lemma"] = sc.candidate.lemma;
        a["prob"] = sc.combined_prob;
        ants.push_back(std::move(a));
      }
      j["antecedents"] = std::move(ants);
      out << j.dump() << '\n';
    }
  }
}

// ---- eval ------------------------------------------------------------------

struct EvalOpts {
  std::string corpus;
  std::string annotations;
  std::string thesaurus;
  std::string frames;
  std::string counts;
  std::string unannotated;
  std::string model = "both2";
  std::string rules;
  std::string ks = "1,2,3";
  std::string detection = "gold";
  std::string certainty_mode = "combined";
  std::string out_dir;
  std::string curve_thresholds;
  std::string sweep_annotated;
  std::string sweep_unannotated;
  int window = 3;
  double lambda = 0.5;
  double lambda_syn = 0.5;
  int max_distance_bin = 5;
  double theta = 0.0;
  double t = 0.5;
  std::uint64_t seed = 0;
};

void run_eval(const EvalOpts& o) {
  require_option(o.corpus, "--corpus");
  require_option(o.annotations, "--annotations");
  require_option(o.thesaurus, "--thesaurus");
  require_option(o.frames, "--frames");

  EvalConfig cfg;
  cfg.model = require_model(o.model);
  if (o.detection == "gold") {
    cfg.system_detection = false;
  } else if (o.detection == "system") {
    cfg.system_detection = true;
  } else {
    throw std::invalid_argument("--detection must be 'gold' or 'system'");
  }
  if (o.certainty_mode == "combined") {
    cfg.combined_certainty = true;
  } else if (o.certainty_mode == "resolution") {
    cfg.combined_certainty = false;
  } else {
    throw std::invalid_argument("--certainty must be 'combined' or 'resolution'");
  }
  std::vector<int> ks = parse_int_list(o.ks, "--k");
  cfg.k = *std::max_element(ks.begin(), ks.end());
  cfg.window = o.window;
  cfg.lambda = o.lambda;
  cfg.lambda_syn = o.lambda_syn;
  cfg.max_distance_bin = o.max_distance_bin;
  cfg.theta_detect = o.theta;
  cfg.t = o.t;
  if (!o.rules.empty()) cfg.rules = load_rules_file(o.rules);

  std::vector<AnalyzedDocument> docs = load_corpus_path(o.corpus);
  std::vector<GoldAnnotation> anns = load_annotations_path(o.annotations, docs);
  Thesaurus thes = load_thesaurus_file(o.thesaurus);
  CaseFrameLexicon lex = load_case_frames_file(o.frames);

  std::optional<std::vector<AnalyzedDocument>> unann;
  if (!o.unannotated.empty()) unann = load_corpus_path(o.unannotated);
  std::optional<CooccurrenceCounts> counts;
  if (!o.counts.empty()) {
    counts = CooccurrenceCounts::load_file(o.counts);
  } else if (unann) {
    counts = extract_cooccurrences(*unann, thes);
  }

  std::vector<EvalRecord> records =
      loocv(docs, anns, lex, thes, counts ? &*counts : nullptr, cfg);
  EvalMetrics metrics = compute_metrics(records, ks);
  std::cout << render_metrics_text(metrics, cfg.model);

  if (o.out_dir.empty()) return;
  ensure_dir(o.out_dir);
  fs::path dir(o.out_dir);
  write_text_file(dir / "metrics.json", metrics_to_json(metrics, cfg.model));
  write_text_file(dir / "records.jsonl", serialize_records(records));

  std::vector<double> thresholds;
  if (o.curve_thresholds.empty()) {
    for (int i = 0; i <= 20; ++i) thresholds.push_back(i * 0.05);
  } else {
    thresholds = parse_double_list(o.curve_thresholds, "--curve-thresholds");
  }
  {
    std::vector<CurvePoint> curve =
        coverage_accuracy_curve(records, thresholds, CurveMode::kDetection);
    std::ostringstream os;
    write_curve_csv(curve, os);
    write_text_file(dir / "curve_detection.csv", os.str());
  }
  {
    std::vector<CurvePoint> curve =
        coverage_accuracy_curve(records, thresholds, CurveMode::kResolution);
    std::ostringstream os;
    write_curve_csv(curve, os);
    write_text_file(dir / "curve_resolution.csv", os.str());
  }
  if (!o.sweep_annotated.empty()) {
    std::vector<long> sizes = parse_long_list(o.sweep_annotated, "--sweep-annotated");
    std::vector<SweepPoint> sweep =
        corpus_size_sweep(docs, anns, lex, thes, counts ? &*counts : nullptr,
                          unann ? &*unann : nullptr, cfg, sizes, SweepAxis::kAnnotated,
                          o.seed);
    std::ostringstream os;
    write_sweep_csv(sweep, os);
    write_text_file(dir / "sweep_annotated.csv", os.str());
  }
  if (!o.sweep_unannotated.empty()) {
    std::vector<long> sizes = parse_long_list(o.sweep_unannotated, "--sweep-unannotated");
    std::vector<SweepPoint> sweep =
        corpus_size_sweep(docs, anns, lex, thes, counts ? &*counts : nullptr,
                          unann ? &*unann : nullptr, cfg, sizes, SweepAxis::kUnannotated,
                          o.seed);
    std::ostringstream os;
    write_sweep_csv(sweep, os);
    write_text_file(dir / "sweep_unannotated.csv", os.str());
  }
  std::cout << "wrote reports to " << o.out_dir << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"zeroref: zero pronoun detection and anaphora resolution"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "flat key=value file supplying defaults for omitted flags");

  ConfigOverlay overlay;

  // synth
  SynthOpts synth;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "generate a corpus from known distributions");
  overlay.bind(synth_cmd->add_option("--out", synth.out, "output directory"), "out",
               &synth.out);
  overlay.bind(synth_cmd->add_option("--params", synth.params_path,
                                     "JSON parameter file (defaults filled in)"),
               "params", &synth.params_path);
  overlay.bind(synth_cmd->add_option("--seed", synth.seed, "random seed"), "seed",
               &synth.seed);
  synth.o_documents =
      synth_cmd->add_option("--docs", synth.documents, "annotated documents");
  overlay.bind(synth.o_documents, "docs", &synth.documents);
  synth.o_zero_pronouns = synth_cmd->add_option("--zero-pronouns", synth.zero_pronouns,
                                                "zero pronouns per document");
  overlay.bind(synth.o_zero_pronouns, "zero-pronouns", &synth.zero_pronouns);
  synth.o_pairs =
      synth_cmd->add_option("--pairs", synth.pairs, "unannotated noun-case-verb pairs");
  overlay.bind(synth.o_pairs, "pairs", &synth.pairs);
  synth.o_exophoric = synth_cmd->add_option("--exophoric-rate", synth.exophoric_rate,
                                            "fraction of exophoric zero pronouns");
  overlay.bind(synth.o_exophoric, "exophoric-rate", &synth.exophoric_rate);
  synth.o_multi_class = synth_cmd->add_option(
      "--multi-class-fraction", synth.multi_class_fraction, "nouns with two classes");
  overlay.bind(synth.o_multi_class, "multi-class-fraction", &synth.multi_class_fraction);
  synth.o_fill = synth_cmd->add_option("--fill-probability", synth.fill_probability,
                                       "chance a non-target case is overt");
  overlay.bind(synth.o_fill, "fill-probability", &synth.fill_probability);
  synth.o_unlisted = synth_cmd->add_option("--unlisted-verbs", synth.unlisted_verbs,
                                           "drop the last N verbs from the lexicon");
  overlay.bind(synth.o_unlisted, "unlisted-verbs", &synth.unlisted_verbs);
  synth_cmd->callback([&] {
    if (!config_path.empty()) overlay.load(config_path);
    overlay.apply();
    run_synth(synth, overlay);
  });

  // extract
  ExtractOpts extract;
  CLI::App* extract_cmd =
      app.add_subcommand("extract", "harvest co-occurrence counts from analyzed text");
  overlay.bind(extract_cmd->add_option("--corpus", extract.corpus,
                                       "corpus file or directory of .jsonl files"),
               "corpus", &extract.corpus);
  overlay.bind(extract_cmd->add_option("--thesaurus", extract.thesaurus, "thesaurus TSV"),
               "thesaurus", &extract.thesaurus);
  overlay.bind(extract_cmd->add_option("--out", extract.out, "counts file to write"),
               "out", &extract.out);
  overlay.bind(extract_cmd->add_flag("--fractional-classes", extract.fractional,
                                     "spread observations over a noun's classes"),
               "fractional-classes", &extract.fractional);
  extract_cmd->callback([&] {
    if (!config_path.empty()) overlay.load(config_path);
    overlay.apply();
    run_extract(extract);
  });

  // train
  TrainOpts train;
  CLI::App* train_cmd = app.add_subcommand("train", "estimate models from annotations");
  overlay.bind(train_cmd->add_option("--corpus", train.corpus, "annotated corpus"),
               "corpus", &train.corpus);
  overlay.bind(
      train_cmd->add_option("--annotations", train.annotations, "gold annotations JSONL"),
      "annotations", &train.annotations);
  overlay.bind(train_cmd->add_option("--thesaurus", train.thesaurus, "thesaurus TSV"),
               "thesaurus", &train.thesaurus);
  overlay.bind(train_cmd->add_option("--frames", train.frames, "case frame lexicon"),
               "frames", &train.frames);
  overlay.bind(train_cmd->add_option("--counts", train.counts, "co-occurrence counts"),
               "counts", &train.counts);
  overlay.bind(train_cmd->add_option("--model", train.model,
                                     "sem1|sem2|syn|both1|both2 (default both2)"),
               "model", &train.model);
  overlay.bind(train_cmd->add_option("--lambda", train.lambda, "semantic smoothing"),
               "lambda", &train.lambda);
  overlay.bind(
      train_cmd->add_option("--lambda-syn", train.lambda_syn, "syntactic smoothing"),
      "lambda-syn", &train.lambda_syn);
  overlay.bind(train_cmd->add_option("--max-distance-bin", train.max_distance_bin,
                                     "distances at or above this share a bin"),
               "max-distance-bin", &train.max_distance_bin);
  overlay.bind(train_cmd->add_option("--out", train.out, "model directory"), "out",
               &train.out);
  train_cmd->callback([&] {
    if (!config_path.empty()) overlay.load(config_path);
    overlay.apply();
    run_train(train);
  });

  // detect
  DetectOpts detect;
  CLI::App* detect_cmd = app.add_subcommand("detect", "list omitted obligatory cases");
  overlay.bind(detect_cmd->add_option("--doc", detect.doc, "corpus file or directory"),
               "doc", &detect.doc);
  overlay.bind(detect_cmd->add_option("--frames", detect.frames, "case frame lexicon"),
               "frames", &detect.frames);
  overlay.bind(detect_cmd->add_option("--counts", detect.counts, "co-occurrence counts"),
               "counts", &detect.counts);
  overlay.bind(detect_cmd->add_option("--theta-detect", detect.theta,
                                      "detection probability threshold"),
               "theta-detect", &detect.theta);
  overlay.bind(detect_cmd->add_option("--pzero-exponent", detect.pzero_exponent,
                                      "exponent on the frequency ratio"),
               "pzero-exponent", &detect.pzero_exponent);
  overlay.bind(detect_cmd->add_option("--pzero-min-count", detect.pzero_min_count,
                                      "verbs seen less often count as unseen"),
               "pzero-min-count", &detect.pzero_min_count);
  overlay.bind(detect_cmd->add_option("--out", detect.out, "output file (default stdout)"),
               "out", &detect.out);
  detect_cmd->callback([&] {
    if (!config_path.empty()) overlay.load(config_path);
    overlay.apply();
    run_detect(detect);
  });

  // resolve
  ResolveOpts resolve;
  CLI::App* resolve_cmd =
      app.add_subcommand("resolve", "detect and resolve zero pronouns");
  overlay.bind(resolve_cmd->add_option("--doc", resolve.doc, "corpus file or directory"),
               "doc", &resolve.doc);
  overlay.bind(resolve_cmd->add_option("--models", resolve.models, "trained model directory"),
               "models", &resolve.models);
  overlay.bind(resolve_cmd->add_option("--model", resolve.model,
                                       "sem1|sem2|syn|both1|both2|rule (default both2)"),
               "model", &resolve.model);
  overlay.bind(resolve_cmd->add_option("--rules", resolve.rules, "rule table for --model rule"),
               "rules", &resolve.rules);
  overlay.bind(resolve_cmd->add_option("--k", resolve.k, "answers per zero pronoun"), "k",
               &resolve.k);
  overlay.bind(resolve_cmd->add_option("--window", resolve.window,
                                       "candidate window in sentences"),
               "window", &resolve.window);
  overlay.bind(resolve_cmd->add_option("--t", resolve.t, "certainty interpolation weight"),
               "t", &resolve.t);
  overlay.bind(resolve_cmd->add_option("--certainty-threshold", resolve.certainty_threshold,
                                       "withhold answers below this certainty"),
               "certainty-threshold", &resolve.certainty_threshold);
  overlay.bind(resolve_cmd->add_option("--theta-detect", resolve.theta,
                                       "detection probability threshold"),
               "theta-detect", &resolve.theta);
  overlay.bind(resolve_cmd->add_option("--out", resolve.out, "output file (default stdout)"),
               "out", &resolve.out);
  resolve_cmd->callback([&] {
    if (!config_path.empty()) overlay.load(config_path);
    overlay.apply();
    run_resolve(resolve);
  });

  // eval
  EvalOpts eval;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "leave-one-out evaluation with curves and sweeps");
  overlay.bind(eval_cmd->add_option("--corpus", eval.corpus, "annotated corpus"), "corpus",
               &eval.corpus);
  overlay.bind(
      eval_cmd->add_option("--annotations", eval.annotations, "gold annotations JSONL"),
      "annotations", &eval.annotations);
  overlay.bind(eval_cmd->add_option("--thesaurus", eval.thesaurus, "thesaurus TSV"),
               "thesaurus", &eval.thesaurus);
  overlay.bind(eval_cmd->add_option("--frames", eval.frames, "case frame lexicon"),
               "frames", &eval.frames);
  overlay.bind(eval_cmd->add_option("--counts", eval.counts, "co-occurrence counts"),
               "counts", &eval.counts);
  overlay.bind(eval_cmd->add_option("--unannotated", eval.unannotated,
                                    "unannotated corpus (counts and sweeps)"),
               "unannotated", &eval.unannotated);
  overlay.bind(eval_cmd->add_option("--model", eval.model,
                                    "sem1|sem2|syn|both1|both2|rule (default both2)"),
               "model", &eval.model);
  overlay.bind(eval_cmd->add_option("--rules", eval.rules, "rule table for --model rule"),
               "rules", &eval.rules);
  overlay.bind(eval_cmd->add_option("--k", eval.ks, "comma-separated k list"), "k",
               &eval.ks);
  overlay.bind(eval_cmd->add_option("--detection", eval.detection, "gold|system"),
               "detection", &eval.detection);
  overlay.bind(eval_cmd->add_option("--certainty", eval.certainty_mode,
                                    "combined|resolution"),
               "certainty", &eval.certainty_mode);
  overlay.bind(eval_cmd->add_option("--window", eval.window, "candidate window"),
               "window", &eval.window);
  overlay.bind(eval_cmd->add_option("--lambda", eval.lambda, "semantic smoothing"),
               "lambda", &eval.lambda);
  overlay.bind(eval_cmd->add_option("--lambda-syn", eval.lambda_syn, "syntactic smoothing"),
               "lambda-syn", &eval.lambda_syn);
  overlay.bind(eval_cmd->add_option("--max-distance-bin", eval.max_distance_bin,
                                    "distances at or above this share a bin"),
               "max-distance-bin", &eval.max_distance_bin);
  overlay.bind(eval_cmd->add_option("--theta-detect", eval.theta,
                                    "detection probability threshold"),
               "theta-detect", &eval.theta);
  overlay.bind(eval_cmd->add_option("--t", eval.t, "certainty interpolation weight"), "t",
               &eval.t);
  overlay.bind(eval_cmd->add_option("--out-dir", eval.out_dir, "report directory"),
               "out-dir", &eval.out_dir);
  overlay.bind(eval_cmd->add_option("--curve-thresholds", eval.curve_thresholds,
                                    "comma-separated certainty thresholds"),
               "curve-thresholds", &eval.curve_thresholds);
  overlay.bind(eval_cmd->add_option("--sweep-annotated", eval.sweep_annotated,
                                    "annotated corpus sizes to sweep"),
               "sweep-annotated", &eval.sweep_annotated);
  overlay.bind(eval_cmd->add_option("--sweep-unannotated", eval.sweep_unannotated,
                                    "unannotated corpus sizes to sweep"),
               "sweep-unannotated", &eval.sweep_unannotated);
  overlay.bind(eval_cmd->add_option("--seed", eval.seed, "sweep shuffle seed"), "seed",
               &eval.seed);
  eval_cmd->callback([&] {
    if (!config_path.empty()) overlay.load(config_path);
    overlay.apply();
    run_eval(eval);
  });

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace zeroref
