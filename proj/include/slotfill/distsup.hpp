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
// Distant-supervision training data: KB argument pairs mapped to slot
// relations, matched against the corpus under per-relation and per-pair
// caps, pooled per pair, and split into per-relation positives/negatives
// with cross-label duplicates removed from the negatives.

#ifndef SLOTFILL_DISTSUP_HPP_
#define SLOTFILL_DISTSUP_HPP_

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "slotfill/candidates.hpp"
#include "slotfill/classifier.hpp"
#include "slotfill/patterns.hpp"
#include "slotfill/retrieval.hpp"
#include "slotfill/types.hpp"

namespace slotfill {

enum class SeedSource { kKbMapping, kSeedPatterns };

inline constexpr size_t kMaxPairsPerRelation = 10000;
inline constexpr size_t kMaxSentencesPerPair = 500;

struct DistsupConfig {
  size_t pair_cap = kMaxPairsPerRelation;
  size_t sentence_cap = kMaxSentencesPerPair;
  // Truncation keeps the first N in input order by default; the sampled
  // mode draws a seeded random subset instead.
  bool sample = false;
  unsigned seed = 42;
  bool fold_case = false;
};

struct PairSet {
  std::string relation;
  std::vector<std::pair<std::string, std::string>> pairs;
  SeedSource source = SeedSource::kKbMapping;
};

struct PairSetResult {
  std::vector<PairSet> sets;  // sorted by relation
  long unmapped_records = 0;  // KB rows whose relation had no mapping
};

// Deduplicates pairs in input order, then applies the per-relation cap.
// KB relations absent from the mapping are skipped and counted; mappings
// to relations outside the schema set are configuration errors.
PairSetResult build_pair_sets(const std::vector<KbRecord>& kb,
                              const std::unordered_map<std::string, std::string>& mapping,
                              const std::vector<RelationSchema>& schemas,
                              SeedSource source, const DistsupConfig& config);

struct TrainingMatch {
  std::string relation;
  std::string subject;
  std::string object;
  int doc_index = 0;
  int sentence_index = 0;
  Span subject_span;
  Span object_span;
};

// Sentences containing both argument phrases with non-overlapping spans,
// in corpus order, truncated at the per-pair sentence cap. Pairs repeated
// across seed sources are matched once.
std::vector<TrainingMatch> match_pairs(const std::vector<PairSet>& pair_sets,
                                       const Corpus& corpus, const InvertedIndex& index,
                                       const DistsupConfig& config);

struct RelationTrainingSet {
  std::vector<AggregatedExample> positives;
  std::vector<AggregatedExample> negatives;
};

struct TrainingSets {
  std::map<std::string, RelationTrainingSet> by_relation;
  std::vector<std::string> warnings;
};

// Pools matches per (relation, pair) into aggregated examples. For each
// relation the other relations' examples form the negatives (restricted to
// relations with the same query entity type when the flag is set). Any
// vector equal to a positive is removed from the negatives.
TrainingSets build_training_sets(const std::vector<TrainingMatch>& matches,
                                 const Corpus& corpus,
                                 const std::vector<RelationSchema>& schemas,
                                 bool restrict_negatives_to_query_type);

// Seed pairs harvested by matching the hand-written patterns against the
// corpus: ARG1 binds to an entity span of the relation's query type, ARG2
// to an admissible filler span. Output follows the KB record format.
std::vector<KbRecord> harvest_seed_pairs(const Corpus& corpus,
                                         const std::vector<SurfacePattern>& patterns,
                                         const std::vector<RelationSchema>& schemas,
                                         const TypeLists& type_lists, bool fold_case);

}  // namespace slotfill

#endif  // SLOTFILL_DISTSUP_HPP_
