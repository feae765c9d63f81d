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
// Shallow context features for a (query mention, filler mention) pair.
//
// Every feature is "<GROUP>#<marked token>(#<marked token>)*". The query
// mention is replaced by the placeholder ARG1 and the filler mention by
// ARG2; each emitted token carries a direction mark, '>' when the filler
// is right of the query and '<' when it is left.
//
//   BETWEEN_NGRAM  n-grams of length 1-3 over [first placeholder] +
//                  between tokens + [second placeholder]
//   SKIP_NGRAM     windows of length 3 and 4 over the same sequence with
//                  interior tokens wildcarded to the empty string, e.g.
//                  "SKIP_NGRAM#native>###first>"
//   OUTSIDE_NGRAM  n-grams of length 1-3 ending at the left placeholder
//                  (up to 3 tokens of left context) or starting at the
//                  right placeholder (up to 3 tokens of right context)

#ifndef SLOTFILL_FEATURES_HPP_
#define SLOTFILL_FEATURES_HPP_

#include <map>
#include <string>
#include <vector>

#include "slotfill/types.hpp"

namespace slotfill {

// Sparse feature map. Extraction produces integer counts; aggregation and
// model weights reuse the same representation with real values.
using FeatureVector = std::map<std::string, double>;

FeatureVector extract_features(const Sentence& sentence, Span query_span, Span filler_span);
FeatureVector extract_features(const Candidate& candidate);

// Grammar round-trip support. Feature strings with token surfaces
// containing '#' are outside the grammar.
struct ParsedFeature {
  std::string group;
  std::vector<std::string> marked_tokens;  // wildcard slots are empty strings
  friend bool operator==(const ParsedFeature&, const ParsedFeature&) = default;
};

ParsedFeature parse_feature(const std::string& feature);
std::string print_feature(const ParsedFeature& feature);

}  // namespace slotfill

#endif  // SLOTFILL_FEATURES_HPP_
