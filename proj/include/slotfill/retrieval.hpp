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
// Inverted-index retrieval: documents matching the query name plus one
// expansion selected by pointwise mutual information.

#ifndef SLOTFILL_RETRIEVAL_HPP_
#define SLOTFILL_RETRIEVAL_HPP_

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "slotfill/alias.hpp"
#include "slotfill/types.hpp"

namespace slotfill {

struct InvertedIndex {
  std::vector<std::string> doc_ids;                          // ordinal -> id, corpus order
  std::unordered_map<std::string, int> doc_ordinals;         // id -> ordinal
  std::unordered_map<std::string, std::vector<int>> postings;  // token -> sorted ordinals
  bool fold_case = false;

  int doc_count() const { return static_cast<int>(doc_ids.size()); }
  int doc_freq(const std::string& token) const;
};

InvertedIndex build_index(const Corpus& corpus, bool fold_case);

// Sorted ordinals of documents containing the contiguous token sequence
// (within a single sentence).
std::vector<int> phrase_docs(const InvertedIndex& index, const Corpus& corpus,
                             const std::vector<std::string>& phrase);

int phrase_doc_freq(const InvertedIndex& index, const Corpus& corpus,
                    const std::vector<std::string>& phrase);

// Retrieval-eligible expansion with maximal document-level PMI w.r.t. the
// query name:  log2(N * df(e,q) / (df(e) * df(q))).  Expansions with zero
// document frequency or zero co-occurrence are skipped; ties break on
// lexicographically smallest expansion text. Absent when the query name
// itself never occurs.
std::optional<Expansion> select_expansion_by_pmi(const Query& query,
                                                 const ExpansionSet& expansions,
                                                 const InvertedIndex& index,
                                                 const Corpus& corpus);

// All documents containing the query-name phrase or the selected-expansion
// phrase: name matches first, each group ordered by doc_id, truncated to
// limit (limit < 0 means unbounded).
std::vector<std::string> retrieve(const Query& query,
                                  const std::optional<Expansion>& selected,
                                  const InvertedIndex& index, const Corpus& corpus,
                                  int limit);

inline constexpr int kDefaultRetrievalLimit = 100;

}  // namespace slotfill

#endif  // SLOTFILL_RETRIEVAL_HPP_
