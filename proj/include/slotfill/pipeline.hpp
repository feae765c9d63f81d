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
//
// End-to-end orchestration: expand and retrieve per query, generate
// candidates, let the enabled validators vote, then merge, enforce arity,
// and emit. Training builds classifier and pattern artifacts from the KB;
// tuning runs the greedy global parameter search against dev gold.

#ifndef SLOTFILL_PIPELINE_HPP_
#define SLOTFILL_PIPELINE_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "slotfill/candidates.hpp"
#include "slotfill/classifier.hpp"
#include "slotfill/distsup.hpp"
#include "slotfill/evaluation.hpp"
#include "slotfill/formats.hpp"
#include "slotfill/patterns.hpp"
#include "slotfill/response.hpp"
#include "slotfill/retrieval.hpp"

namespace slotfill {

// Validator names, in default pipeline (and tie-break) order.
inline const std::vector<std::string> kAllValidators{"classifier", "ds_patterns",
                                                     "manual_patterns", "alt_names"};

struct PipelineConfig {
  // inputs
  std::string corpus_path;
  std::string queries_path;
  std::string schemas_path;
  std::string kb_path;
  std::string kb_mapping_path;
  std::string anchor_lexicon_path;
  std::string org_suffixes_path;
  std::string type_lists_path;
  std::string surface_patterns_path;
  std::string seed_pairs_path;  // optional precomputed second seed set
  std::string model_dir;

  // run options
  std::vector<std::string> validators = kAllValidators;
  int retrieval_limit = kDefaultRetrievalLimit;
  bool fold_case = false;
  int max_candidate_gap = kDefaultMaxCandidateGap;
  std::string run_id = "run1";
  unsigned seed = 42;
  int threads = 0;  // 0 = hardware concurrency

  // training options
  int epochs = 20;
  double regularization = 1e-4;
  int perceptron_epochs = 10;
  double default_j = 1.0;
  double default_threshold = 0.5;
  size_t pair_cap = kMaxPairsPerRelation;
  size_t sentence_cap = kMaxSentencesPerPair;
  bool cap_sample = false;
  bool restrict_negatives = true;

  // tuning options
  std::string dev_queries_path;
  std::string dev_gold_path;
  int tuner_iterations = 2;
};

// "key = value" lines; '#' starts a comment line. Relative paths resolve
// against the config file's directory. Unknown keys are rejected.
PipelineConfig load_config(const std::string& path);
PipelineConfig parse_config_text(std::string_view text, const std::string& origin);

// Artifact filenames under model_dir.
std::string model_filename(const std::string& relation, double j);
inline constexpr const char* kPatternStatsFile = "patterns.stats";
inline constexpr const char* kPerceptronFile = "patterns.perceptron";
inline constexpr const char* kPatternTableFile = "patterns.table";
inline constexpr const char* kCostFactorParamsFile = "params.j";
inline constexpr const char* kThresholdParamsFile = "params.threshold";
inline constexpr const char* kHarvestedPairsFile = "harvested_pairs.kb";

struct TrainReport {
  std::vector<std::string> relations_trained;
  long training_matches = 0;
  long pattern_examples = 0;
  long nil_examples = 0;
  long unmapped_kb_records = 0;
  std::vector<std::string> warnings;
};

// Trains one classifier per relation and grid cost factor, fits the
// pattern model, and writes all artifacts. Byte-identical reruns for a
// fixed config and seed.
TrainReport cmd_train(const PipelineConfig& config);

struct TuneReport {
  TunerState cost_factors;
  TunerState thresholds;
};

TuneReport cmd_tune(const PipelineConfig& config);

std::vector<ResponseRecord> cmd_run(const PipelineConfig& config);
std::vector<ResponseRecord> cmd_run(const PipelineConfig& config,
                                    const std::vector<Query>& queries);

ScoreReport cmd_score(const std::string& responses_path, const std::string& gold_path,
                      ScoreFlags flags, const std::string& lexicon_path = "");

// Loaded artifacts plus per-query preparation, shared by run and tune.
class Runner {
 public:
  explicit Runner(const PipelineConfig& config);

  // Validates prepared queries under explicit parameter choices and
  // produces the final merged response set.
  std::vector<ResponseRecord> run(const std::vector<Query>& queries,
                                  const std::map<std::string, double>& cost_factors,
                                  const std::map<std::string, double>& thresholds);

  // Parameter maps from the artifact dir, falling back to config defaults.
  std::map<std::string, double> stored_cost_factors() const;
  std::map<std::string, double> stored_thresholds() const;

  // Relations with at least one trained model.
  std::vector<std::string> classifier_relations() const;

  const std::vector<RelationSchema>& schemas() const { return schemas_; }
  const AnchorLexicon& lexicon() const { return lexicon_; }

 private:
  struct PreparedCandidate {
    Candidate candidate;
    FeatureVector normalized;  // max-normalized per-sentence counts
    std::vector<std::string> applicable;  // relations compatible by type
    std::vector<std::pair<std::string, double>> pattern_scores;  // unthresholded
    std::vector<std::string> manual_matches;
  };
  struct PreparedQuery {
    const Query* query = nullptr;
    std::vector<PreparedCandidate> candidates;
    std::vector<ResponseRecord> alt_name_records;
  };

  PreparedQuery prepare(const Query& query) const;
  std::vector<ResponseRecord> validate(const PreparedQuery& prepared,
                                       const std::map<std::string, double>& cost_factors,
                                       const std::map<std::string, double>& thresholds) const;
  const LinearModel* find_model(const std::string& relation, double j) const;
  bool enabled(const std::string& validator) const;

  PipelineConfig config_;
  std::vector<RelationSchema> schemas_;
  Corpus corpus_;
  InvertedIndex index_;
  AnchorLexicon lexicon_;
  std::vector<std::string> org_suffixes_;
  TypeLists type_lists_;
  std::vector<SurfacePattern> surface_patterns_;
  std::map<std::string, std::map<std::string, LinearModel>> models_;  // relation -> j key
  ScoredPatternTable pattern_table_;

  friend TuneReport cmd_tune(const PipelineConfig& config);
};

}  // namespace slotfill

#endif  // SLOTFILL_PIPELINE_HPP_
