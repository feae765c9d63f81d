// Copyright 2026 The Slotfill Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "slotfill/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <set>
#include <thread>

#include "slotfill/errors.hpp"
#include "slotfill/strings.hpp"
#include "slotfill/tokenmatch.hpp"

namespace fs = std::filesystem;

namespace slotfill {

namespace {

void parallel_for(size_t count, int threads, const std::function<void(size_t)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = std::min<int>(threads, static_cast<int>(count));
  if (threads <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

unsigned relation_seed(unsigned base, const std::string& relation) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : relation) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return base ^ static_cast<unsigned>(h ^ (h >> 32));
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("bad boolean for '" + key + "': " + value);
}

long parse_int_value(const std::string& value, const std::string& key) {
  long out = 0;
  if (!parse_long(value, &out)) throw ConfigError("bad integer for '" + key + "': " + value);
  return out;
}

double parse_real_value(const std::string& value, const std::string& key) {
  double out = 0.0;
  if (!parse_double(value, &out)) throw ConfigError("bad number for '" + key + "': " + value);
  return out;
}

std::string trim(std::string_view text) {
  size_t start = 0, end = text.size();
  while (start < end && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
  while (end > start && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return std::string(text.substr(start, end - start));
}

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) throw ConfigError(what + " path not configured");
  if (!fs::exists(path)) throw ConfigError(what + " file not found: " + path);
}

}  // namespace

PipelineConfig parse_config_text(std::string_view text, const std::string& origin) {
  PipelineConfig config;
  long line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));

    if (key == "corpus") config.corpus_path = value;
    else if (key == "queries") config.queries_path = value;
    else if (key == "schemas") config.schemas_path = value;
    else if (key == "kb") config.kb_path = value;
    else if (key == "kb_mapping") config.kb_mapping_path = value;
    else if (key == "anchor_lexicon") config.anchor_lexicon_path = value;
    else if (key == "org_suffixes") config.org_suffixes_path = value;
    else if (key == "type_lists") config.type_lists_path = value;
    else if (key == "surface_patterns") config.surface_patterns_path = value;
    else if (key == "seed_pairs") config.seed_pairs_path = value;
    else if (key == "model_dir") config.model_dir = value;
    else if (key == "validators") {
      config.validators.clear();
      for (const std::string& name : split(value, ',')) {
        std::string v = trim(name);
        if (!v.empty()) config.validators.push_back(v);
      }
    } else if (key == "retrieval_limit") config.retrieval_limit = static_cast<int>(parse_int_value(value, key));
    else if (key == "fold_case") config.fold_case = parse_bool(value, key);
    else if (key == "max_candidate_gap") config.max_candidate_gap = static_cast<int>(parse_int_value(value, key));
    else if (key == "run_id") config.run_id = value;
    else if (key == "seed") config.seed = static_cast<unsigned>(parse_int_value(value, key));
    else if (key == "threads") config.threads = static_cast<int>(parse_int_value(value, key));
    else if (key == "epochs") config.epochs = static_cast<int>(parse_int_value(value, key));
    else if (key == "regularization") config.regularization = parse_real_value(value, key);
    else if (key == "perceptron_epochs") config.perceptron_epochs = static_cast<int>(parse_int_value(value, key));
    else if (key == "default_j") config.default_j = parse_real_value(value, key);
    else if (key == "default_threshold") config.default_threshold = parse_real_value(value, key);
    else if (key == "pair_cap") config.pair_cap = static_cast<size_t>(parse_int_value(value, key));
    else if (key == "sentence_cap") config.sentence_cap = static_cast<size_t>(parse_int_value(value, key));
    else if (key == "cap_sample") config.cap_sample = parse_bool(value, key);
    else if (key == "restrict_negatives") config.restrict_negatives = parse_bool(value, key);
    else if (key == "dev_queries") config.dev_queries_path = value;
    else if (key == "dev_gold") config.dev_gold_path = value;
    else if (key == "tuner_iterations") config.tuner_iterations = static_cast<int>(parse_int_value(value, key));
    else throw ConfigError(origin + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
  }

  std::set<std::string> known(kAllValidators.begin(), kAllValidators.end());
  for (const std::string& v : config.validators) {
    if (!known.count(v)) throw ConfigError("unknown validator '" + v + "'");
  }
  if (config.validators.empty()) throw ConfigError("no validators enabled");
  return config;
}

PipelineConfig load_config(const std::string& path) {
  PipelineConfig config = parse_config_text(read_file(path), path);
  const fs::path base = fs::path(path).parent_path();
  auto resolve = [&](std::string* p) {
    if (!p->empty() && fs::path(*p).is_relative()) *p = (base / *p).string();
  };
  resolve(&config.corpus_path);
  resolve(&config.queries_path);
  resolve(&config.schemas_path);
  resolve(&config.kb_path);
  resolve(&config.kb_mapping_path);
  resolve(&config.anchor_lexicon_path);
  resolve(&config.org_suffixes_path);
  resolve(&config.type_lists_path);
  resolve(&config.surface_patterns_path);
  resolve(&config.seed_pairs_path);
  resolve(&config.model_dir);
  resolve(&config.dev_queries_path);
  resolve(&config.dev_gold_path);
  return config;
}

std::string model_filename(const std::string& relation, double j) {
  return relation + ".j" + fmt_double(j) + ".model";
}

TrainReport cmd_train(const PipelineConfig& config) {
  require_file(config.corpus_path, "corpus");
  require_file(config.schemas_path, "schemas");
  require_file(config.kb_path, "kb");
  require_file(config.kb_mapping_path, "kb_mapping");
  if (config.model_dir.empty()) throw ConfigError("model_dir not configured");
  if (!config.seed_pairs_path.empty()) require_file(config.seed_pairs_path, "seed_pairs");
  fs::create_directories(config.model_dir);

  TrainReport report;
  std::vector<RelationSchema> schemas = load_schemas(config.schemas_path);
  Corpus corpus = parse_corpus(config.corpus_path);
  std::vector<KbRecord> kb = parse_kb(config.kb_path);
  auto mapping = parse_relation_mapping(config.kb_mapping_path);
  TypeLists type_lists;
  if (!config.type_lists_path.empty()) type_lists = load_type_lists(config.type_lists_path);
  std::vector<SurfacePattern> surface_patterns;
  if (!config.surface_patterns_path.empty())
    surface_patterns = load_surface_patterns(config.surface_patterns_path);

  InvertedIndex index = build_index(corpus, config.fold_case);

  DistsupConfig distsup_config;
  distsup_config.pair_cap = config.pair_cap;
  distsup_config.sentence_cap = config.sentence_cap;
  distsup_config.sample = config.cap_sample;
  distsup_config.seed = config.seed;
  distsup_config.fold_case = config.fold_case;

  PairSetResult kb_sets =
      build_pair_sets(kb, mapping, schemas, SeedSource::kKbMapping, distsup_config);
  report.unmapped_kb_records = kb_sets.unmapped_records;
  if (kb_sets.unmapped_records > 0) {
    report.warnings.push_back(std::to_string(kb_sets.unmapped_records) +
                              " KB record(s) without a relation mapping were skipped");
  }

  std::unordered_map<std::string, std::string> identity;
  for (const RelationSchema& schema : schemas) identity[schema.name] = schema.name;

  std::vector<KbRecord> seed_records;
  if (!config.seed_pairs_path.empty()) {
    seed_records = parse_kb(config.seed_pairs_path);
  } else if (!surface_patterns.empty()) {
    seed_records = harvest_seed_pairs(corpus, surface_patterns, schemas, type_lists,
                                      config.fold_case);
    write_kb((fs::path(config.model_dir) / kHarvestedPairsFile).string(), seed_records);
  }
  std::vector<PairSet> all_sets = kb_sets.sets;
  if (!seed_records.empty()) {
    PairSetResult seed_sets = build_pair_sets(seed_records, identity, schemas,
                                              SeedSource::kSeedPatterns, distsup_config);
    for (PairSet& set : seed_sets.sets) all_sets.push_back(std::move(set));
  }

  std::vector<TrainingMatch> matches = match_pairs(all_sets, corpus, index, distsup_config);
  report.training_matches = static_cast<long>(matches.size());

  TrainingSets training =
      build_training_sets(matches, corpus, schemas, config.restrict_negatives);
  for (const std::string& warning : training.warnings) report.warnings.push_back(warning);

  std::vector<double> cost_factors = kCostFactorGrid;
  if (std::find(cost_factors.begin(), cost_factors.end(), config.default_j) ==
      cost_factors.end()) {
    cost_factors.push_back(config.default_j);
  }
  for (const auto& [relation, set] : training.by_relation) {
    if (set.positives.empty()) continue;
    for (double j : cost_factors) {
      TrainConfig train_config;
      train_config.j = j;
      train_config.epochs = config.epochs;
      train_config.regularization = config.regularization;
      train_config.seed = relation_seed(config.seed, relation);
      LinearModel model = train(relation, set.positives, set.negatives, train_config);
      save_model((fs::path(config.model_dir) / model_filename(relation, j)).string(), model);
    }
    report.relations_trained.push_back(relation);
  }

  // Pattern artifacts from the same matches.
  std::vector<PatternExample> labeled;
  labeled.reserve(matches.size());
  for (const TrainingMatch& match : matches) {
    const Sentence& sentence =
        corpus.docs[static_cast<size_t>(match.doc_index)]
            .sentences[static_cast<size_t>(match.sentence_index)];
    labeled.push_back(PatternExample{
        extract_intertext_pattern(sentence, match.subject_span, match.object_span),
        match.relation});
  }
  report.pattern_examples = static_cast<long>(labeled.size());
  if (labeled.empty()) {
    report.warnings.push_back("no pattern training matches; pattern artifacts not written");
    return report;
  }
  std::vector<KbRecord> known_pairs = kb;
  known_pairs.insert(known_pairs.end(), seed_records.begin(), seed_records.end());
  std::vector<PatternExample> nil_examples = collect_nil_examples(
      corpus, known_pairs, labeled.size(), relation_seed(config.seed, "NIL"));
  report.nil_examples = static_cast<long>(nil_examples.size());
  if (nil_examples.empty()) {
    report.warnings.push_back(
        "no NIL co-occurrences found; pattern artifacts not written");
    return report;
  }
  PerceptronConfig perceptron_config;
  perceptron_config.epochs = config.perceptron_epochs;
  perceptron_config.seed = relation_seed(config.seed, "perceptron");
  PatternModel pattern_model = fit_pattern_model(labeled, nil_examples, perceptron_config);
  save_pattern_stats((fs::path(config.model_dir) / kPatternStatsFile).string(),
                     pattern_model.stats);
  save_perceptron((fs::path(config.model_dir) / kPerceptronFile).string(),
                  pattern_model.perceptron);
  ScoredPatternTable table = build_pattern_table(pattern_model, config.default_threshold);
  save_pattern_table((fs::path(config.model_dir) / kPatternTableFile).string(), table);
  return report;
}

Runner::Runner(const PipelineConfig& config) : config_(config) {
  require_file(config_.corpus_path, "corpus");
  require_file(config_.schemas_path, "schemas");
  schemas_ = load_schemas(config_.schemas_path);
  corpus_ = parse_corpus(config_.corpus_path);
  index_ = build_index(corpus_, config_.fold_case);
  if (!config_.anchor_lexicon_path.empty()) {
    require_file(config_.anchor_lexicon_path, "anchor_lexicon");
    lexicon_ = load_anchor_lexicon(config_.anchor_lexicon_path);
  }
  if (!config_.org_suffixes_path.empty()) {
    require_file(config_.org_suffixes_path, "org_suffixes");
    org_suffixes_ = load_line_list(config_.org_suffixes_path);
  }
  if (!config_.type_lists_path.empty()) {
    require_file(config_.type_lists_path, "type_lists");
    type_lists_ = load_type_lists(config_.type_lists_path);
  }
  if (enabled("manual_patterns")) {
    require_file(config_.surface_patterns_path, "surface_patterns");
  }
  if (!config_.surface_patterns_path.empty() && fs::exists(config_.surface_patterns_path)) {
    surface_patterns_ = load_surface_patterns(config_.surface_patterns_path);
  }
  if (enabled("classifier")) {
    if (config_.model_dir.empty() || !fs::exists(config_.model_dir))
      throw ConfigError("classifier enabled but model_dir is missing");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(config_.model_dir)) {
      if (entry.path().extension() == ".model") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& file : files) {
      LinearModel model = load_model(file.string());
      models_[model.relation][fmt_double(model.config.j)] = std::move(model);
    }
    if (models_.empty())
      throw ConfigError("classifier enabled but no model files in " + config_.model_dir);
  }
  if (enabled("ds_patterns")) {
    fs::path table_path = fs::path(config_.model_dir) / kPatternTableFile;
    if (config_.model_dir.empty() || !fs::exists(table_path))
      throw ConfigError("ds_patterns enabled but pattern table is missing");
    pattern_table_ = load_pattern_table(table_path.string(), config_.default_threshold);
  }
}

bool Runner::enabled(const std::string& validator) const {
  return std::find(config_.validators.begin(), config_.validators.end(), validator) !=
         config_.validators.end();
}

const LinearModel* Runner::find_model(const std::string& relation, double j) const {
  auto rit = models_.find(relation);
  if (rit == models_.end()) return nullptr;
  auto jit = rit->second.find(fmt_double(j));
  return jit == rit->second.end() ? nullptr : &jit->second;
}

std::vector<std::string> Runner::classifier_relations() const {
  std::vector<std::string> relations;
  relations.reserve(models_.size());
  for (const auto& [relation, by_j] : models_) relations.push_back(relation);
  return relations;
}

std::map<std::string, double> Runner::stored_cost_factors() const {
  std::map<std::string, double> params;
  for (const auto& [relation, by_j] : models_) params[relation] = config_.default_j;
  fs::path file = fs::path(config_.model_dir) / kCostFactorParamsFile;
  if (!config_.model_dir.empty() && fs::exists(file)) {
    for (const auto& [relation, value] : parse_param_file(file.string()))
      params[relation] = value;
  }
  return params;
}

std::map<std::string, double> Runner::stored_thresholds() const {
  std::map<std::string, double> params;
  fs::path file = fs::path(config_.model_dir) / kThresholdParamsFile;
  if (!config_.model_dir.empty() && fs::exists(file)) params = parse_param_file(file.string());
  return params;
}

Runner::PreparedQuery Runner::prepare(const Query& query) const {
  PreparedQuery prepared;
  prepared.query = &query;

  ExpansionSet expansions = expand_query(query, lexicon_, org_suffixes_);
  std::optional<Expansion> selected =
      select_expansion_by_pmi(query, expansions, index_, corpus_);
  std::vector<std::string> doc_ids =
      retrieve(query, selected, index_, corpus_, config_.retrieval_limit);
  std::vector<const Document*> docs;
  docs.reserve(doc_ids.size());
  for (const std::string& id : doc_ids) {
    docs.push_back(&corpus_.docs[static_cast<size_t>(index_.doc_ordinals.at(id))]);
  }

  std::vector<RelationSchema> applicable_schemas;
  for (const RelationSchema& schema : schemas_) {
    if (schema.query_type == query.entity_type) applicable_schemas.push_back(schema);
  }
  if (applicable_schemas.empty()) return prepared;

  for (const Document* doc : docs) {
    for (const Sentence& sentence : doc->sentences) {
      std::vector<Span> query_spans =
          match_query(sentence, expansions, query, config_.fold_case);
      if (query_spans.empty()) continue;
      std::vector<TypedSpan> filler_spans =
          match_fillers(sentence, applicable_schemas, type_lists_, config_.fold_case);
      if (filler_spans.empty()) continue;
      std::vector<Candidate> candidates = generate_candidates(
          query, sentence, query_spans, filler_spans, config_.max_candidate_gap);
      for (Candidate& candidate : candidates) {
        PreparedCandidate pc;
        pc.candidate = candidate;
        pc.normalized = max_normalize(extract_features(candidate));
        for (const RelationSchema& schema : applicable_schemas) {
          if (std::find(schema.filler_types.begin(), schema.filler_types.end(),
                        candidate.filler_type) != schema.filler_types.end()) {
            pc.applicable.push_back(schema.name);
          }
        }
        if (pc.applicable.empty()) continue;
        if (enabled("ds_patterns")) {
          Pattern pattern = extract_intertext_pattern(sentence, candidate.query_span,
                                                      candidate.filler_span);
          auto it = pattern_table_.rows.find(pattern.key());
          if (it != pattern_table_.rows.end()) {
            for (const auto& [relation, score] : it->second) {
              if (std::find(pc.applicable.begin(), pc.applicable.end(), relation) !=
                  pc.applicable.end()) {
                pc.pattern_scores.emplace_back(relation, score);
              }
            }
          }
        }
        if (enabled("manual_patterns")) {
          for (const SurfacePattern& pattern : surface_patterns_) {
            if (std::find(pc.applicable.begin(), pc.applicable.end(), pattern.relation) ==
                pc.applicable.end())
              continue;
            if (std::find(pc.manual_matches.begin(), pc.manual_matches.end(),
                          pattern.relation) != pc.manual_matches.end())
              continue;
            if (match_surface_pattern(pattern, candidate, config_.fold_case)) {
              pc.manual_matches.push_back(pattern.relation);
            }
          }
        }
        prepared.candidates.push_back(std::move(pc));
      }
    }
  }

  if (enabled("alt_names")) {
    std::set<std::string> schema_names;
    for (const RelationSchema& schema : applicable_schemas) schema_names.insert(schema.name);
    for (ResponseRecord& rec : alternate_name_answers(query, expansions, docs,
                                                      config_.fold_case,
                                                      kAltNamesConfidence)) {
      if (schema_names.count(rec.relation)) prepared.alt_name_records.push_back(std::move(rec));
    }
  }
  return prepared;
}

std::vector<ResponseRecord> Runner::validate(
    const PreparedQuery& prepared, const std::map<std::string, double>& cost_factors,
    const std::map<std::string, double>& thresholds) const {
  std::vector<ResponseRecord> records;
  auto make_record = [&](const PreparedCandidate& pc, const std::string& relation,
                         double confidence, const char* provenance) {
    const Sentence& sentence = *pc.candidate.sentence;
    ResponseRecord rec;
    rec.query_id = prepared.query->id;
    rec.relation = relation;
    rec.doc_id = sentence.doc_id;
    rec.filler = span_text(sentence, pc.candidate.filler_span);
    rec.filler_begin = sentence.tokens[static_cast<size_t>(pc.candidate.filler_span.first)].begin;
    rec.filler_end = sentence.tokens[static_cast<size_t>(pc.candidate.filler_span.last)].end;
    rec.just_begin = sentence.char_begin();
    rec.just_end = sentence.char_end();
    rec.confidence = confidence;
    rec.provenance = provenance;
    records.push_back(std::move(rec));
  };

  for (const PreparedCandidate& pc : prepared.candidates) {
    if (enabled("classifier")) {
      for (const std::string& relation : pc.applicable) {
        auto it = cost_factors.find(relation);
        if (it == cost_factors.end()) continue;
        const LinearModel* model = find_model(relation, it->second);
        if (model == nullptr) continue;
        double score = decision_score(*model, pc.normalized);
        if (score >= 0.0) make_record(pc, relation, logistic(score), "classifier");
      }
    }
    if (enabled("ds_patterns")) {
      for (const auto& [relation, score] : pc.pattern_scores) {
        auto it = thresholds.find(relation);
        double threshold = it != thresholds.end() ? it->second : config_.default_threshold;
        if (score >= threshold) make_record(pc, relation, score, "ds_patterns");
      }
    }
    if (enabled("manual_patterns")) {
      for (const std::string& relation : pc.manual_matches) {
        make_record(pc, relation, kManualPatternConfidence, "manual_patterns");
      }
    }
  }
  for (const ResponseRecord& rec : prepared.alt_name_records) records.push_back(rec);
  return records;
}

std::vector<ResponseRecord> Runner::run(const std::vector<Query>& queries,
                                        const std::map<std::string, double>& cost_factors,
                                        const std::map<std::string, double>& thresholds) {
  std::vector<PreparedQuery> prepared(queries.size());
  parallel_for(queries.size(), config_.threads,
               [&](size_t i) { prepared[i] = prepare(queries[i]); });
  std::vector<ResponseRecord> all;
  for (const PreparedQuery& pq : prepared) {
    std::vector<ResponseRecord> records = validate(pq, cost_factors, thresholds);
    all.insert(all.end(), records.begin(), records.end());
  }
  std::vector<ResponseRecord> merged = merge_and_dedup(all, lexicon_, config_.validators);
  std::vector<ResponseRecord> pruned = enforce_arity(merged, schemas_);
  return emit(pruned, queries, schemas_, config_.run_id);
}

std::vector<ResponseRecord> cmd_run(const PipelineConfig& config,
                                    const std::vector<Query>& queries) {
  Runner runner(config);
  return runner.run(queries, runner.stored_cost_factors(), runner.stored_thresholds());
}

std::vector<ResponseRecord> cmd_run(const PipelineConfig& config) {
  require_file(config.queries_path, "queries");
  return cmd_run(config, parse_queries(config.queries_path));
}

TuneReport cmd_tune(const PipelineConfig& config) {
  require_file(config.dev_queries_path, "dev_queries");
  require_file(config.dev_gold_path, "dev_gold");
  std::vector<Query> dev_queries = parse_queries(config.dev_queries_path);
  std::vector<GoldEntry> dev_gold = parse_gold(config.dev_gold_path);
  if (dev_gold.empty()) throw ConfigError("dev gold file is empty");

  Runner runner(config);
  std::vector<Runner::PreparedQuery> prepared(dev_queries.size());
  parallel_for(dev_queries.size(), config.threads,
               [&](size_t i) { prepared[i] = runner.prepare(dev_queries[i]); });

  const AnchorLexicon* lexicon = runner.lexicon_.empty() ? nullptr : &runner.lexicon_;
  auto evaluate_with = [&](const std::map<std::string, double>& cost_factors,
                           const std::map<std::string, double>& thresholds) {
    std::vector<ResponseRecord> all;
    for (const Runner::PreparedQuery& pq : prepared) {
      std::vector<ResponseRecord> records = runner.validate(pq, cost_factors, thresholds);
      all.insert(all.end(), records.begin(), records.end());
    }
    std::vector<ResponseRecord> merged =
        merge_and_dedup(all, runner.lexicon_, config.validators);
    std::vector<ResponseRecord> pruned = enforce_arity(merged, runner.schemas_);
    return score_run(pruned, dev_gold, ScoreFlags{}, lexicon).f1;
  };

  TuneReport report;
  std::map<std::string, double> base_thresholds = runner.stored_thresholds();
  report.cost_factors = greedy_tune(
      runner.classifier_relations(), kCostFactorGrid,
      [&](const std::map<std::string, double>& params) {
        return evaluate_with(params, base_thresholds);
      },
      config.tuner_iterations);

  std::set<std::string> pattern_relations;
  for (const auto& [key, row] : runner.pattern_table_.rows) {
    for (const auto& [relation, score] : row) pattern_relations.insert(relation);
  }
  report.thresholds = greedy_tune(
      std::vector<std::string>(pattern_relations.begin(), pattern_relations.end()),
      kThresholdGrid,
      [&](const std::map<std::string, double>& params) {
        return evaluate_with(report.cost_factors.params, params);
      },
      config.tuner_iterations);

  write_param_file((fs::path(config.model_dir) / kCostFactorParamsFile).string(),
                   report.cost_factors.params);
  write_param_file((fs::path(config.model_dir) / kThresholdParamsFile).string(),
                   report.thresholds.params);
  return report;
}

ScoreReport cmd_score(const std::string& responses_path, const std::string& gold_path,
                      ScoreFlags flags, const std::string& lexicon_path) {
  std::vector<ResponseRecord> responses = parse_responses(responses_path);
  std::vector<GoldEntry> gold = parse_gold(gold_path);
  AnchorLexicon lexicon;
  if (!lexicon_path.empty()) lexicon = load_anchor_lexicon(lexicon_path);
  return score_run(responses, gold, flags, lexicon_path.empty() ? nullptr : &lexicon);
}

}  // namespace slotfill
