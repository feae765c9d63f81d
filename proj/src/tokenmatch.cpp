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

#include "slotfill/tokenmatch.hpp"

#include "slotfill/strings.hpp"

namespace slotfill {

std::vector<std::string> phrase_tokens(std::string_view text) {
  return split_ws(text);
}

bool tokens_equal(const std::string& a, const std::string& b, bool fold_case) {
  if (!fold_case) return a == b;
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    char ca = a[i], cb = b[i];
    if (ca >= 'A' && ca <= 'Z') ca = static_cast<char>(ca - 'A' + 'a');
    if (cb >= 'A' && cb <= 'Z') cb = static_cast<char>(cb - 'A' + 'a');
    if (ca != cb) return false;
  }
  return true;
}

std::vector<Span> find_phrase_spans(const Sentence& sentence,
                                    const std::vector<std::string>& phrase,
                                    bool fold_case) {
  std::vector<Span> out;
  if (phrase.empty() || phrase.size() > sentence.tokens.size()) return out;
  const size_t n = sentence.tokens.size();
  const size_t m = phrase.size();
  for (size_t start = 0; start + m <= n; ++start) {
    bool match = true;
    for (size_t k = 0; k < m; ++k) {
      if (!tokens_equal(sentence.tokens[start + k].surface, phrase[k], fold_case)) {
        match = false;
        break;
      }
    }
    if (match) {
      out.push_back(Span{static_cast<int>(start), static_cast<int>(start + m - 1)});
    }
  }
  return out;
}

bool sentence_contains_phrase(const Sentence& sentence,
                              const std::vector<std::string>& phrase,
                              bool fold_case) {
  return !find_phrase_spans(sentence, phrase, fold_case).empty();
}

}  // namespace slotfill
