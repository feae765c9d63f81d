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

#include "slotfill/distsup.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "slotfill/errors.hpp"
#include "slotfill/tokenmatch.hpp"

namespace slotfill {

namespace {

void shuffle_indices(std::vector<size_t>* indices, std::mt19937* rng) {
  for (size_t i = indices->size(); i > 1; --i) {
    size_t k = static_cast<size_t>((*rng)() % i);
    std::swap((*indices)[i - 1], (*indices)[k]);
  }
}

// Keeps the first `cap` items, or a seeded sample of them in input order.
template <typename T>
void apply_cap(std::vector<T>* items, size_t cap, bool sample, unsigned seed) {
  if (items->size() <= cap) return;
  if (!sample) {
    items->resize(cap);
    return;
  }
  std::mt19937 rng(seed);
  std::vector<size_t> order(items->size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  shuffle_indices(&order, &rng);
  order.resize(cap);
  std::sort(order.begin(), order.end());
  std::vector<T> kept;
  kept.reserve(cap);
  for (size_t idx : order) kept.push_back(std::move((*items)[idx]));
  *items = std::move(kept);
}

}  // namespace

PairSetResult build_pair_sets(const std::vector<KbRecord>& kb,
                              const std::unordered_map<std::string, std::string>& mapping,
                              const std::vector<RelationSchema>& schemas,
                              SeedSource source, const DistsupConfig& config) {
  std::set<std::string> schema_names;
  for (const RelationSchema& schema : schemas) schema_names.insert(schema.name);
  for (const auto& [kb_relation, target] : mapping) {
    if (!schema_names.count(target)) {
      throw ConfigError("mapping target '" + target + "' is not a known relation");
    }
  }

  PairSetResult result;
  std::map<std::string, PairSet> by_relation;
  std::map<std::string, std::set<std::pair<std::string, std::string>>> seen;
  for (const KbRecord& rec : kb) {
    auto it = mapping.find(rec.relation);
    if (it == mapping.end()) {
      ++result.unmapped_records;
      continue;
    }
    const std::string& relation = it->second;
    if (!seen[relation].emplace(rec.subject, rec.object).second) continue;
    PairSet& set = by_relation[relation];
    set.relation = relation;
    set.source = source;
    set.pairs.emplace_back(rec.subject, rec.object);
  }
  for (auto& [relation, set] : by_relation) {
    apply_cap(&set.pairs, config.pair_cap, config.sample, config.seed);
    result.sets.push_back(std::move(set));
  }
  return result;
}

std::vector<TrainingMatch> match_pairs(const std::vector<PairSet>& pair_sets,
                                       const Corpus& corpus, const InvertedIndex& index,
                                       const DistsupConfig& config) {
  // Merge pair lists per relation, deduplicating across seed sources.
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> merged;
  std::map<std::string, std::set<std::pair<std::string, std::string>>> seen;
  for (const PairSet& set : pair_sets) {
    for (const auto& pair : set.pairs) {
      if (seen[set.relation].insert(pair).second) merged[set.relation].push_back(pair);
    }
  }

  std::vector<TrainingMatch> matches;
  for (const auto& [relation, pairs] : merged) {
    for (const auto& [subject, object] : pairs) {
      std::vector<std::string> subject_phrase = phrase_tokens(subject);
      std::vector<std::string> object_phrase = phrase_tokens(object);
      if (subject_phrase.empty() || object_phrase.empty()) continue;
      std::vector<int> subject_docs = phrase_docs(index, corpus, subject_phrase);
      std::vector<int> object_docs = phrase_docs(index, corpus, object_phrase);
      std::vector<int> both;
      std::set_intersection(subject_docs.begin(), subject_docs.end(), object_docs.begin(),
                            object_docs.end(), std::back_inserter(both));
      size_t taken = 0;
      for (int doc_ordinal : both) {
        if (taken >= config.sentence_cap) break;
        const Document& doc = corpus.docs[static_cast<size_t>(doc_ordinal)];
        for (size_t si = 0; si < doc.sentences.size() && taken < config.sentence_cap; ++si) {
          const Sentence& sentence = doc.sentences[si];
          std::vector<Span> subject_spans =
              find_phrase_spans(sentence, subject_phrase, config.fold_case);
          if (subject_spans.empty()) continue;
          std::vector<Span> object_spans =
              find_phrase_spans(sentence, object_phrase, config.fold_case);
          if (object_spans.empty()) continue;
          // First non-overlapping span combination, subject-first scan.
          bool found = false;
          for (const Span& ss : subject_spans) {
            for (const Span& os : object_spans) {
              if (ss.overlaps(os)) continue;
              TrainingMatch match;
              match.relation = relation;
              match.subject = subject;
              match.object = object;
              match.doc_index = doc_ordinal;
              match.sentence_index = static_cast<int>(si);
              match.subject_span = ss;
              match.object_span = os;
              matches.push_back(std::move(match));
              found = true;
              break;
            }
            if (found) break;
          }
          if (found) ++taken;
        }
      }
    }
  }
  return matches;
}

TrainingSets build_training_sets(const std::vector<TrainingMatch>& matches,
                                 const Corpus& corpus,
                                 const std::vector<RelationSchema>& schemas,
                                 bool restrict_negatives_to_query_type) {
  std::map<std::string, EntityType> query_types;
  for (const RelationSchema& schema : schemas) query_types[schema.name] = schema.query_type;

  // relation -> pair -> per-sentence count vectors, in match order
  std::map<std::string, std::map<std::pair<std::string, std::string>, PairGroup>> grouped;
  for (const TrainingMatch& match : matches) {
    const Sentence& sentence =
        corpus.docs[static_cast<size_t>(match.doc_index)]
            .sentences[static_cast<size_t>(match.sentence_index)];
    PairGroup& group = grouped[match.relation][{match.subject, match.object}];
    group.subject = match.subject;
    group.object = match.object;
    group.sentence_counts.push_back(
        extract_features(sentence, match.subject_span, match.object_span));
  }

  TrainingSets sets;
  std::map<std::string, std::vector<AggregatedExample>> positives;
  for (auto& [relation, by_pair] : grouped) {
    std::vector<PairGroup> groups;
    groups.reserve(by_pair.size());
    for (auto& [pair, group] : by_pair) groups.push_back(std::move(group));
    AggregateResult aggregated = aggregate_examples(groups);
    if (aggregated.dropped_empty > 0) {
      sets.warnings.push_back("relation " + relation + ": dropped " +
                              std::to_string(aggregated.dropped_empty) +
                              " pair(s) with no features");
    }
    for (AggregatedExample& ex : aggregated.examples) ex.positive = true;
    positives[relation] = std::move(aggregated.examples);
  }

  for (auto& [relation, pos] : positives) {
    if (pos.empty()) {
      sets.warnings.push_back("relation " + relation + ": no positive examples, excluded");
      continue;
    }
    RelationTrainingSet set;
    set.positives = pos;
    // Negatives: all other relations' positives, optionally restricted to
    // relations sharing the query entity type.
    std::set<FeatureVector> positive_vectors;
    for (const AggregatedExample& ex : set.positives) positive_vectors.insert(ex.features);
    for (const auto& [other, examples] : positives) {
      if (other == relation) continue;
      if (restrict_negatives_to_query_type) {
        auto a = query_types.find(relation);
        auto b = query_types.find(other);
        if (a != query_types.end() && b != query_types.end() && a->second != b->second) {
          continue;
        }
      }
      for (const AggregatedExample& ex : examples) {
        // A vector that also occurs as a positive keeps only its positive copies.
        if (positive_vectors.count(ex.features)) continue;
        AggregatedExample negative = ex;
        negative.positive = false;
        set.negatives.push_back(std::move(negative));
      }
    }
    if (set.negatives.empty()) {
      sets.warnings.push_back("relation " + relation + ": no negative examples");
    }
    sets.by_relation[relation] = std::move(set);
  }
  return sets;
}

std::vector<KbRecord> harvest_seed_pairs(const Corpus& corpus,
                                         const std::vector<SurfacePattern>& patterns,
                                         const std::vector<RelationSchema>& schemas,
                                         const TypeLists& type_lists, bool fold_case) {
  std::map<std::string, const RelationSchema*> schema_by_name;
  for (const RelationSchema& schema : schemas) schema_by_name[schema.name] = &schema;

  std::vector<KbRecord> records;
  std::set<std::pair<std::string, std::pair<std::string, std::string>>> seen;
  for (const Document& doc : corpus.docs) {
    for (const Sentence& sentence : doc.sentences) {
      for (const SurfacePattern& pattern : patterns) {
        auto it = schema_by_name.find(pattern.relation);
        if (it == schema_by_name.end()) continue;
        const RelationSchema& schema = *it->second;
        const std::string query_tag = to_string(schema.query_type);

        std::vector<Span> subject_spans;
        for (const EntitySpan& es : sentence.entity_spans) {
          if (es.type == query_tag) subject_spans.push_back(es.span());
        }
        if (subject_spans.empty()) continue;
        std::vector<TypedSpan> filler_spans =
            match_fillers(sentence, {schema}, type_lists, fold_case);
        for (const Span& ss : subject_spans) {
          for (const TypedSpan& fs : filler_spans) {
            if (ss.overlaps(fs.span)) continue;
            if (!match_surface_pattern(pattern, sentence, ss, fs.span, fold_case)) continue;
            KbRecord rec{pattern.relation, span_text(sentence, ss),
                         span_text(sentence, fs.span)};
            if (seen.insert({rec.relation, {rec.subject, rec.object}}).second) {
              records.push_back(std::move(rec));
            }
          }
        }
      }
    }
  }
  return records;
}

}  // namespace slotfill
