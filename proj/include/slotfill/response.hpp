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
// Response postprocessing: normal-form redundancy removal, single-slot
// arity enforcement, and final response assembly with NIL rows.

#ifndef SLOTFILL_RESPONSE_HPP_
#define SLOTFILL_RESPONSE_HPP_

#include <string>
#include <vector>

#include "slotfill/alias.hpp"
#include "slotfill/types.hpp"

namespace slotfill {

// Fixed confidences for validators without a natural score.
inline constexpr double kManualPatternConfidence = 0.95;
inline constexpr double kAltNamesConfidence = 0.9;

// Anchor-translation normal form when the lexicon knows the text, else the
// lowercased surface.
std::string normalize_filler(const std::string& filler, const AnchorLexicon& lexicon);

// Collapses records sharing (query_id, relation, normalized filler) to the
// highest-confidence one; ties break on the earliest module in
// module_priority, then lexicographic doc_id, then filler. Idempotent.
std::vector<ResponseRecord> merge_and_dedup(const std::vector<ResponseRecord>& records,
                                            const AnchorLexicon& lexicon,
                                            const std::vector<std::string>& module_priority);

// Single-arity relations keep only the highest-confidence record per
// (query_id, relation); list relations pass through without any cut-off.
std::vector<ResponseRecord> enforce_arity(const std::vector<ResponseRecord>& records,
                                          const std::vector<RelationSchema>& schemas);

// Stamps the run id, adds a NIL row for every (query, applicable relation)
// without an answer, and sorts rows by (query_id, relation). Records that
// reference an unknown query are an error.
std::vector<ResponseRecord> emit(const std::vector<ResponseRecord>& records,
                                 const std::vector<Query>& queries,
                                 const std::vector<RelationSchema>& schemas,
                                 const std::string& run_id);

}  // namespace slotfill

#endif  // SLOTFILL_RESPONSE_HPP_
