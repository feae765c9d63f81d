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
// Query-name expansion from an anchor-text translation table, plus the
// alternate-names answer component built on top of it.

#ifndef SLOTFILL_ALIAS_HPP_
#define SLOTFILL_ALIAS_HPP_

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "slotfill/types.hpp"

namespace slotfill {

// Anchor text -> pages it links to, with co-occurrence counts.
// Pages are distinct per anchor; counts are positive.
struct AnchorLexicon {
  std::unordered_map<std::string, std::vector<std::pair<std::string, long>>> entries;

  bool empty() const { return entries.empty(); }
  // Adds a count, merging with an existing (anchor, page) row.
  void add(const std::string& anchor, const std::string& page, long count);
};

// Page with the maximal count for this exact anchor text; ties broken by
// lexicographically smallest page title. Absent if the anchor is unknown.
std::optional<std::string> top_page(const AnchorLexicon& lexicon, const std::string& text);

enum class ExpansionKind { kAnchor, kOrgSuffix, kLastName };

struct Expansion {
  std::string text;
  ExpansionKind kind = ExpansionKind::kAnchor;

  // Last-name expansions are used for sentence matching only.
  bool retrieval_eligible() const { return kind != ExpansionKind::kLastName; }
  friend bool operator==(const Expansion&, const Expansion&) = default;
};

struct ExpansionSet {
  std::string query_name;
  std::vector<Expansion> expansions;
};

// Anchor expansions are all anchors sharing the query name's top page
// (link-back requirement), excluding the name itself. ORG queries also get
// "<name> <suffix>" forms; PER queries with a multi-token name also get the
// bare last name, flagged as non-retrieval.
ExpansionSet expand_query(const Query& query, const AnchorLexicon& lexicon,
                          const std::vector<std::string>& org_suffixes);

// One per:alternate_names / org:alternate_names record per anchor-kind
// expansion whose token sequence occurs in a retrieved document. Expansions
// equal to the query name (case-insensitively) are skipped.
std::vector<ResponseRecord> alternate_name_answers(
    const Query& query, const ExpansionSet& expansions,
    const std::vector<const Document*>& retrieved_docs, bool fold_case,
    double confidence);

}  // namespace slotfill

#endif  // SLOTFILL_ALIAS_HPP_
