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

#ifndef SLOTFILL_TOKENMATCH_HPP_
#define SLOTFILL_TOKENMATCH_HPP_

#include <string>
#include <vector>

#include "slotfill/types.hpp"

namespace slotfill {

// Whitespace tokenization of a query name, expansion, or list surface form.
std::vector<std::string> phrase_tokens(std::string_view text);

bool tokens_equal(const std::string& a, const std::string& b, bool fold_case);

// All contiguous occurrences of the phrase in the sentence, left to right.
std::vector<Span> find_phrase_spans(const Sentence& sentence,
                                    const std::vector<std::string>& phrase,
                                    bool fold_case);

bool sentence_contains_phrase(const Sentence& sentence,
                              const std::vector<std::string>& phrase,
                              bool fold_case);

}  // namespace slotfill

#endif  // SLOTFILL_TOKENMATCH_HPP_
