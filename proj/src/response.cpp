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

#include "slotfill/response.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "slotfill/errors.hpp"
#include "slotfill/strings.hpp"

namespace slotfill {

namespace {

int module_rank(const std::string& provenance, const std::vector<std::string>& priority) {
  for (size_t i = 0; i < priority.size(); ++i) {
    if (priority[i] == provenance) return static_cast<int>(i);
  }
  return static_cast<int>(priority.size());
}

// True when challenger should replace incumbent: higher confidence first,
// then earlier module, then lexicographic doc_id, then filler.
bool wins(const ResponseRecord& challenger, const ResponseRecord& incumbent,
          const std::vector<std::string>& priority) {
  if (challenger.confidence != incumbent.confidence)
    return challenger.confidence > incumbent.confidence;
  int cr = module_rank(challenger.provenance, priority);
  int ir = module_rank(incumbent.provenance, priority);
  if (cr != ir) return cr < ir;
  if (challenger.doc_id != incumbent.doc_id) return challenger.doc_id < incumbent.doc_id;
  return challenger.filler < incumbent.filler;
}

}  // namespace

std::string normalize_filler(const std::string& filler, const AnchorLexicon& lexicon) {
  if (auto page = top_page(lexicon, filler)) return *page;
  return ascii_lower(filler);
}

std::vector<ResponseRecord> merge_and_dedup(const std::vector<ResponseRecord>& records,
                                            const AnchorLexicon& lexicon,
                                            const std::vector<std::string>& module_priority) {
  // (query, relation, normal form) -> best record seen so far
  std::map<std::tuple<std::string, std::string, std::string>, ResponseRecord> best;
  std::vector<std::tuple<std::string, std::string, std::string>> insertion_order;
  for (const ResponseRecord& rec : records) {
    if (rec.nil) continue;
    auto key = std::make_tuple(rec.query_id, rec.relation, normalize_filler(rec.filler, lexicon));
    auto it = best.find(key);
    if (it == best.end()) {
      best.emplace(key, rec);
      insertion_order.push_back(key);
    } else if (wins(rec, it->second, module_priority)) {
      it->second = rec;
    }
  }
  std::vector<ResponseRecord> out;
  out.reserve(insertion_order.size());
  for (const auto& key : insertion_order) out.push_back(best.at(key));
  return out;
}

std::vector<ResponseRecord> enforce_arity(const std::vector<ResponseRecord>& records,
                                          const std::vector<RelationSchema>& schemas) {
  std::map<std::string, Arity> arity;
  for (const RelationSchema& schema : schemas) arity[schema.name] = schema.arity;

  std::map<std::pair<std::string, std::string>, const ResponseRecord*> single_best;
  std::vector<ResponseRecord> out;
  for (const ResponseRecord& rec : records) {
    auto it = arity.find(rec.relation);
    if (rec.nil || it == arity.end() || it->second == Arity::kList) {
      out.push_back(rec);
      continue;
    }
    auto key = std::make_pair(rec.query_id, rec.relation);
    auto [slot, inserted] = single_best.emplace(key, &rec);
    if (!inserted && wins(rec, *slot->second, {})) slot->second = &rec;
  }
  for (const auto& [key, rec] : single_best) out.push_back(*rec);
  return out;
}

std::vector<ResponseRecord> emit(const std::vector<ResponseRecord>& records,
                                 const std::vector<Query>& queries,
                                 const std::vector<RelationSchema>& schemas,
                                 const std::string& run_id) {
  std::map<std::string, const Query*> query_by_id;
  for (const Query& query : queries) query_by_id[query.id] = &query;

  std::vector<ResponseRecord> out;
  std::map<std::pair<std::string, std::string>, bool> answered;
  for (const ResponseRecord& rec : records) {
    if (!query_by_id.count(rec.query_id))
      throw ContractError("response references unknown query '" + rec.query_id + "'");
    ResponseRecord stamped = rec;
    stamped.run_id = run_id;
    answered[{rec.query_id, rec.relation}] = true;
    out.push_back(std::move(stamped));
  }
  for (const Query& query : queries) {
    for (const RelationSchema& schema : schemas) {
      if (schema.query_type != query.entity_type) continue;
      if (answered.count({query.id, schema.name})) continue;
      ResponseRecord nil_row;
      nil_row.query_id = query.id;
      nil_row.relation = schema.name;
      nil_row.run_id = run_id;
      nil_row.nil = true;
      out.push_back(std::move(nil_row));
    }
  }
  std::sort(out.begin(), out.end(), [](const ResponseRecord& a, const ResponseRecord& b) {
    if (a.query_id != b.query_id) return a.query_id < b.query_id;
    if (a.relation != b.relation) return a.relation < b.relation;
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.filler != b.filler) return a.filler < b.filler;
    return a.doc_id < b.doc_id;
  });
  return out;
}

}  // namespace slotfill
