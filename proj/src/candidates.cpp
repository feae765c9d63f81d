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

#include "slotfill/candidates.hpp"

#include <algorithm>
#include <set>

#include "slotfill/tokenmatch.hpp"

namespace slotfill {

void TypeLists::add(const std::string& type, const std::string& surface) {
  auto& list = forms[type];
  auto it = std::lower_bound(list.begin(), list.end(), surface);
  if (it == list.end() || *it != surface) list.insert(it, surface);
}

std::vector<Span> match_query(const Sentence& sentence, const ExpansionSet& expansions,
                              const Query& query, bool fold_case) {
  std::set<Span> matches;
  auto collect = [&](const std::string& text) {
    std::vector<std::string> phrase = phrase_tokens(text);
    for (Span s : find_phrase_spans(sentence, phrase, fold_case)) matches.insert(s);
  };
  collect(query.name);
  for (const Expansion& exp : expansions.expansions) collect(exp.text);

  // Drop matches strictly contained in another match, so every returned
  // span is maximal among possible matches.
  std::vector<Span> maximal;
  for (const Span& s : matches) {
    bool contained = false;
    for (const Span& other : matches) {
      if (other != s && other.contains(s)) {
        contained = true;
        break;
      }
    }
    if (!contained) maximal.push_back(s);
  }
  std::sort(maximal.begin(), maximal.end(), [](const Span& a, const Span& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.length() > b.length();
  });

  std::vector<Span> out;
  for (const Span& s : maximal) {
    bool clashes = false;
    for (const Span& kept : out) {
      if (kept.overlaps(s)) {
        clashes = true;
        break;
      }
    }
    if (!clashes) out.push_back(s);
  }
  return out;
}

std::vector<TypedSpan> match_fillers(const Sentence& sentence,
                                     const std::vector<RelationSchema>& schemas,
                                     const TypeLists& type_lists, bool fold_case) {
  std::set<std::string> accepted;
  for (const RelationSchema& schema : schemas) {
    accepted.insert(schema.filler_types.begin(), schema.filler_types.end());
  }

  std::set<TypedSpan> results;
  for (const EntitySpan& es : sentence.entity_spans) {
    if (accepted.count(es.type)) results.insert(TypedSpan{es.span(), es.type});
  }
  for (const auto& [type, surfaces] : type_lists.forms) {
    if (!accepted.count(type)) continue;
    for (const std::string& surface : surfaces) {
      std::vector<std::string> phrase = phrase_tokens(surface);
      for (Span s : find_phrase_spans(sentence, phrase, fold_case)) {
        results.insert(TypedSpan{s, type});
      }
    }
  }
  return std::vector<TypedSpan>(results.begin(), results.end());
}

std::vector<Candidate> generate_candidates(const Query& query, const Sentence& sentence,
                                           const std::vector<Span>& query_spans,
                                           const std::vector<TypedSpan>& filler_spans,
                                           int max_gap) {
  std::vector<Candidate> out;
  for (const Span& qs : query_spans) {
    for (const TypedSpan& fs : filler_spans) {
      if (qs.overlaps(fs.span)) continue;
      int gap = qs.first < fs.span.first ? fs.span.first - qs.last - 1
                                         : qs.first - fs.span.last - 1;
      if (max_gap >= 0 && gap > max_gap) continue;
      Candidate cand;
      cand.query = &query;
      cand.sentence = &sentence;
      cand.query_span = qs;
      cand.filler_span = fs.span;
      cand.filler_type = fs.type;
      out.push_back(std::move(cand));
    }
  }
  return out;
}

}  // namespace slotfill
