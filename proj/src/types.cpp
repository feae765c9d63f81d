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

#include "slotfill/types.hpp"

#include "slotfill/errors.hpp"

namespace slotfill {

EntityType parse_entity_type(std::string_view text) {
  if (text == "PER") return EntityType::kPer;
  if (text == "ORG") return EntityType::kOrg;
  throw ParseError("unknown entity type token '" + std::string(text) + "'");
}

const char* to_string(EntityType type) {
  return type == EntityType::kPer ? "PER" : "ORG";
}

std::string span_text(const Sentence& sentence, Span span) {
  std::string out;
  for (int i = span.first; i <= span.last; ++i) {
    if (i > span.first) out += ' ';
    out += sentence.tokens[static_cast<size_t>(i)].surface;
  }
  return out;
}

void validate_sentence(const Sentence& sentence, const std::string& origin, long line) {
  if (sentence.tokens.empty()) throw ParseError(origin, line, "empty sentence");
  int prev_end = -1;
  for (const Token& tok : sentence.tokens) {
    if (tok.begin >= tok.end)
      throw ParseError(origin, line, "token offsets not increasing");
    if (tok.begin < prev_end)
      throw ParseError(origin, line, "token offsets overlap or decrease");
    prev_end = tok.end;
  }
  const int n = static_cast<int>(sentence.tokens.size());
  for (const EntitySpan& es : sentence.entity_spans) {
    if (es.first < 0 || es.last >= n || es.first > es.last)
      throw ParseError(origin, line, "entity span outside token range");
    for (const EntitySpan& other : sentence.entity_spans) {
      if (&other == &es || other.type != es.type) continue;
      if (es.span().overlaps(other.span()))
        throw ParseError(origin, line, "overlapping entity spans of type " + es.type);
    }
  }
}

}  // namespace slotfill
