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

#include "slotfill/alias.hpp"

#include <algorithm>
#include <set>

#include "slotfill/strings.hpp"
#include "slotfill/tokenmatch.hpp"

namespace slotfill {

void AnchorLexicon::add(const std::string& anchor, const std::string& page, long count) {
  auto& pages = entries[anchor];
  for (auto& [title, n] : pages) {
    if (title == page) {
      n += count;
      return;
    }
  }
  pages.emplace_back(page, count);
}

std::optional<std::string> top_page(const AnchorLexicon& lexicon, const std::string& text) {
  auto it = lexicon.entries.find(text);
  if (it == lexicon.entries.end() || it->second.empty()) return std::nullopt;
  const std::string* best = nullptr;
  long best_count = 0;
  for (const auto& [title, count] : it->second) {
    if (best == nullptr || count > best_count ||
        (count == best_count && title < *best)) {
      best = &title;
      best_count = count;
    }
  }
  return *best;
}

ExpansionSet expand_query(const Query& query, const AnchorLexicon& lexicon,
                          const std::vector<std::string>& org_suffixes) {
  ExpansionSet result;
  result.query_name = query.name;
  std::set<std::string> seen;  // dedup; anchor forms take precedence

  auto push = [&](std::string text, ExpansionKind kind) {
    if (seen.insert(text).second) {
      result.expansions.push_back(Expansion{std::move(text), kind});
    }
  };

  std::optional<std::string> query_page = top_page(lexicon, query.name);
  if (query_page) {
    std::vector<std::string> anchors;
    for (const auto& [anchor, pages] : lexicon.entries) {
      if (anchor == query.name) continue;
      std::optional<std::string> page = top_page(lexicon, anchor);
      if (page && *page == *query_page) anchors.push_back(anchor);
    }
    std::sort(anchors.begin(), anchors.end());
    for (std::string& a : anchors) push(std::move(a), ExpansionKind::kAnchor);
  }

  if (query.entity_type == EntityType::kOrg) {
    for (const std::string& suffix : org_suffixes) {
      push(query.name + " " + suffix, ExpansionKind::kOrgSuffix);
    }
  } else {
    std::vector<std::string> name_tokens = phrase_tokens(query.name);
    if (name_tokens.size() >= 2) {
      push(name_tokens.back(), ExpansionKind::kLastName);
    }
  }
  return result;
}

std::vector<ResponseRecord> alternate_name_answers(
    const Query& query, const ExpansionSet& expansions,
    const std::vector<const Document*>& retrieved_docs, bool fold_case,
    double confidence) {
  std::vector<ResponseRecord> out;
  const std::string relation = query.entity_type == EntityType::kPer
                                   ? "per:alternate_names"
                                   : "org:alternate_names";
  const std::string query_lower = ascii_lower(query.name);
  for (const Expansion& exp : expansions.expansions) {
    if (exp.kind != ExpansionKind::kAnchor) continue;
    if (ascii_lower(exp.text) == query_lower) continue;
    std::vector<std::string> phrase = phrase_tokens(exp.text);
    if (phrase.empty()) continue;
    bool found = false;
    for (const Document* doc : retrieved_docs) {
      for (const Sentence& sentence : doc->sentences) {
        std::vector<Span> spans = find_phrase_spans(sentence, phrase, fold_case);
        if (spans.empty()) continue;
        ResponseRecord rec;
        rec.query_id = query.id;
        rec.relation = relation;
        rec.nil = false;
        rec.doc_id = doc->doc_id;
        rec.filler = span_text(sentence, spans.front());
        rec.filler_begin = sentence.tokens[static_cast<size_t>(spans.front().first)].begin;
        rec.filler_end = sentence.tokens[static_cast<size_t>(spans.front().last)].end;
        rec.just_begin = sentence.char_begin();
        rec.just_end = sentence.char_end();
        rec.confidence = confidence;
        rec.provenance = "alt_names";
        out.push_back(std::move(rec));
        found = true;
        break;
      }
      if (found) break;
    }
  }
  return out;
}

}  // namespace slotfill
