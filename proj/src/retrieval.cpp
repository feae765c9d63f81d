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

#include "slotfill/retrieval.hpp"

#include <algorithm>
#include <cmath>

#include "slotfill/strings.hpp"
#include "slotfill/tokenmatch.hpp"

namespace slotfill {

namespace {

std::string fold_token(const std::string& token, bool fold_case) {
  return fold_case ? ascii_lower(token) : token;
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool doc_contains_phrase(const Document& doc, const std::vector<std::string>& phrase,
                         bool fold_case) {
  for (const Sentence& sentence : doc.sentences) {
    if (sentence_contains_phrase(sentence, phrase, fold_case)) return true;
  }
  return false;
}

}  // namespace

int InvertedIndex::doc_freq(const std::string& token) const {
  auto it = postings.find(fold_case ? ascii_lower(token) : token);
  return it == postings.end() ? 0 : static_cast<int>(it->second.size());
}

InvertedIndex build_index(const Corpus& corpus, bool fold_case) {
  InvertedIndex index;
  index.fold_case = fold_case;
  for (const Document& doc : corpus.docs) {
    int ordinal = static_cast<int>(index.doc_ids.size());
    index.doc_ids.push_back(doc.doc_id);
    index.doc_ordinals[doc.doc_id] = ordinal;
    for (const Sentence& sentence : doc.sentences) {
      for (const Token& token : sentence.tokens) {
        auto& list = index.postings[fold_token(token.surface, fold_case)];
        if (list.empty() || list.back() != ordinal) list.push_back(ordinal);
      }
    }
  }
  return index;
}

std::vector<int> phrase_docs(const InvertedIndex& index, const Corpus& corpus,
                             const std::vector<std::string>& phrase) {
  if (phrase.empty()) return {};
  std::vector<int> candidates;
  for (size_t k = 0; k < phrase.size(); ++k) {
    auto it = index.postings.find(fold_token(phrase[k], index.fold_case));
    if (it == index.postings.end()) return {};
    if (k == 0) {
      candidates = it->second;
    } else {
      candidates = intersect_sorted(candidates, it->second);
    }
    if (candidates.empty()) return {};
  }
  if (phrase.size() == 1) return candidates;
  std::vector<int> out;
  for (int ordinal : candidates) {
    if (doc_contains_phrase(corpus.docs[static_cast<size_t>(ordinal)], phrase,
                            index.fold_case)) {
      out.push_back(ordinal);
    }
  }
  return out;
}

int phrase_doc_freq(const InvertedIndex& index, const Corpus& corpus,
                    const std::vector<std::string>& phrase) {
  return static_cast<int>(phrase_docs(index, corpus, phrase).size());
}

std::optional<Expansion> select_expansion_by_pmi(const Query& query,
                                                 const ExpansionSet& expansions,
                                                 const InvertedIndex& index,
                                                 const Corpus& corpus) {
  std::vector<std::string> name_phrase = phrase_tokens(query.name);
  std::vector<int> name_docs = phrase_docs(index, corpus, name_phrase);
  if (name_docs.empty()) return std::nullopt;
  const double df_query = static_cast<double>(name_docs.size());
  const double total = static_cast<double>(index.doc_count());

  const Expansion* best = nullptr;
  double best_pmi = 0.0;
  for (const Expansion& exp : expansions.expansions) {
    if (!exp.retrieval_eligible()) continue;
    std::vector<int> exp_docs = phrase_docs(index, corpus, phrase_tokens(exp.text));
    if (exp_docs.empty()) continue;
    size_t both = intersect_sorted(name_docs, exp_docs).size();
    if (both == 0) continue;
    double pmi = std::log2(total * static_cast<double>(both) /
                           (static_cast<double>(exp_docs.size()) * df_query));
    if (best == nullptr || pmi > best_pmi ||
        (pmi == best_pmi && exp.text < best->text)) {
      best = &exp;
      best_pmi = pmi;
    }
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

std::vector<std::string> retrieve(const Query& query,
                                  const std::optional<Expansion>& selected,
                                  const InvertedIndex& index, const Corpus& corpus,
                                  int limit) {
  std::vector<int> name_docs = phrase_docs(index, corpus, phrase_tokens(query.name));
  std::vector<int> exp_docs;
  if (selected) exp_docs = phrase_docs(index, corpus, phrase_tokens(selected->text));

  auto ids_sorted = [&](const std::vector<int>& ordinals) {
    std::vector<std::string> ids;
    ids.reserve(ordinals.size());
    for (int o : ordinals) ids.push_back(index.doc_ids[static_cast<size_t>(o)]);
    std::sort(ids.begin(), ids.end());
    return ids;
  };

  std::vector<std::string> out = ids_sorted(name_docs);
  std::vector<int> expansion_only;
  std::set_difference(exp_docs.begin(), exp_docs.end(), name_docs.begin(),
                      name_docs.end(), std::back_inserter(expansion_only));
  for (std::string& id : ids_sorted(expansion_only)) out.push_back(std::move(id));

  if (limit >= 0 && out.size() > static_cast<size_t>(limit)) out.resize(static_cast<size_t>(limit));
  return out;
}

}  // namespace slotfill
