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

#ifndef SLOTFILL_TYPES_HPP_
#define SLOTFILL_TYPES_HPP_

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace slotfill {

enum class EntityType { kPer, kOrg };

// Accepts "PER" / "ORG"; throws ParseError otherwise.
EntityType parse_entity_type(std::string_view text);
const char* to_string(EntityType type);

enum class Arity { kSingle, kList };

// One slot definition: relation name, admissible query entity type,
// admissible filler types (NE tags or type-list names), and whether the
// slot takes a single value or a list.
struct RelationSchema {
  std::string name;
  EntityType query_type = EntityType::kPer;
  std::vector<std::string> filler_types;
  Arity arity = Arity::kList;
};

// A token with character offsets into the original document text.
// Offsets are 0-based and end-exclusive.
struct Token {
  std::string surface;
  int begin = 0;
  int end = 0;
  friend bool operator==(const Token&, const Token&) = default;
};

// Inclusive token-index range within one sentence.
struct Span {
  int first = 0;
  int last = 0;

  int length() const { return last - first + 1; }
  bool overlaps(const Span& other) const {
    return !(last < other.first || other.last < first);
  }
  bool contains(const Span& other) const {
    return first <= other.first && other.last <= last;
  }
  friend auto operator<=>(const Span&, const Span&) = default;
};

struct EntitySpan {
  std::string type;
  int first = 0;
  int last = 0;

  Span span() const { return Span{first, last}; }
  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

struct Sentence {
  std::string doc_id;
  std::vector<Token> tokens;
  std::vector<EntitySpan> entity_spans;

  // Character range covered by the sentence (first token begin, last token
  // end). Requires at least one token.
  int char_begin() const { return tokens.front().begin; }
  int char_end() const { return tokens.back().end; }
  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Document {
  std::string doc_id;
  std::vector<Sentence> sentences;
  friend bool operator==(const Document&, const Document&) = default;
};

struct Corpus {
  std::vector<Document> docs;
  friend bool operator==(const Corpus&, const Corpus&) = default;
};

struct Query {
  std::string id;
  std::string name;
  EntityType entity_type = EntityType::kPer;
  friend bool operator==(const Query&, const Query&) = default;
};

// A (query mention, filler mention) pair in one sentence, the unit passed
// to every validator.
struct Candidate {
  const Query* query = nullptr;
  const Sentence* sentence = nullptr;
  Span query_span;
  Span filler_span;
  std::string filler_type;
};

// One output row. NIL records carry no filler or offsets.
struct ResponseRecord {
  std::string query_id;
  std::string relation;
  std::string run_id;
  bool nil = false;
  std::string doc_id;      // empty for NIL rows
  std::string filler;
  int filler_begin = 0;
  int filler_end = 0;
  int just_begin = 0;
  int just_end = 0;
  double confidence = 0.0;
  std::string provenance;  // producing module; in-memory only, not serialized

  friend bool operator==(const ResponseRecord&, const ResponseRecord&) = default;
};

// One acceptable answer variant. Rows sharing (query_id, relation,
// class_id) form an equivalence class that credits at most one response.
// doc_id "*" accepts any document.
struct GoldEntry {
  std::string query_id;
  std::string relation;
  std::string class_id;
  std::string filler;
  std::string doc_id;
  friend bool operator==(const GoldEntry&, const GoldEntry&) = default;
};

struct KbRecord {
  std::string relation;
  std::string subject;
  std::string object;
  friend bool operator==(const KbRecord&, const KbRecord&) = default;
};

// Surface text of a token span: token surfaces joined by single spaces.
std::string span_text(const Sentence& sentence, Span span);

// Throws ParseError (with the given origin label) if the sentence violates
// its invariants: non-empty, strictly increasing non-overlapping token
// offsets, spans inside the token range, same-type spans non-overlapping.
void validate_sentence(const Sentence& sentence, const std::string& origin, long line);

}  // namespace slotfill

#endif  // SLOTFILL_TYPES_HPP_
