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
// Sentence-level candidate generation: query mention matching and
// NE/type-list filler matching.

#ifndef SLOTFILL_CANDIDATES_HPP_
#define SLOTFILL_CANDIDATES_HPP_

#include <map>
#include <string>
#include <vector>

#include "slotfill/alias.hpp"
#include "slotfill/types.hpp"

namespace slotfill {

// Surface-form gazetteers for filler types that the NE tagger does not
// cover (e.g. job titles, causes of death).
struct TypeLists {
  // type name -> sorted distinct surface forms
  std::map<std::string, std::vector<std::string>> forms;

  void add(const std::string& type, const std::string& surface);
};

// Token spans where the query name or any expansion (last-name forms
// included) matches contiguously. Matches contained in a longer possible
// match are dropped, then overlaps are resolved leftmost-longest-first.
std::vector<Span> match_query(const Sentence& sentence, const ExpansionSet& expansions,
                              const Query& query, bool fold_case);

struct TypedSpan {
  Span span;
  std::string type;
  friend auto operator<=>(const TypedSpan&, const TypedSpan&) = default;
};

// Union of NE spans whose type some schema accepts as a filler, and
// type-list surface matches for accepted list types. Overlapping results
// from the two sources are all kept.
std::vector<TypedSpan> match_fillers(const Sentence& sentence,
                                     const std::vector<RelationSchema>& schemas,
                                     const TypeLists& type_lists, bool fold_case);

// Cross product of query spans and filler spans, minus overlapping pairs
// and pairs farther apart than max_gap tokens (gap counts tokens strictly
// between the spans).
std::vector<Candidate> generate_candidates(const Query& query, const Sentence& sentence,
                                           const std::vector<Span>& query_spans,
                                           const std::vector<TypedSpan>& filler_spans,
                                           int max_gap);

inline constexpr int kDefaultMaxCandidateGap = 40;

}  // namespace slotfill

#endif  // SLOTFILL_CANDIDATES_HPP_
