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

#include "slotfill/evaluation.hpp"

#include <algorithm>
#include <iostream>
#include <set>

#include "slotfill/errors.hpp"
#include "slotfill/response.hpp"
#include "slotfill/strings.hpp"

namespace slotfill {

ScoreReport score_run(const std::vector<ResponseRecord>& responses,
                      const std::vector<GoldEntry>& gold, ScoreFlags flags,
                      const AnchorLexicon* lexicon) {
  // Group gold rows into equivalence classes.
  struct GoldClass {
    std::vector<const GoldEntry*> entries;
    bool credited = false;
  };
  std::map<std::tuple<std::string, std::string, std::string>, GoldClass> classes;
  std::set<std::string> gold_relations;
  for (const GoldEntry& entry : gold) {
    classes[{entry.query_id, entry.relation, entry.class_id}].entries.push_back(&entry);
    gold_relations.insert(entry.relation);
  }

  ScoreReport report;
  report.gold_classes = static_cast<long>(classes.size());

  for (const ResponseRecord& response : responses) {
    if (response.nil) continue;
    ++report.returned;
    if (!gold_relations.count(response.relation)) {
      ++report.unknown_relation_responses;
      std::cerr << "warning: response for relation '" << response.relation
                << "' unknown to the gold set\n";
    }
    std::string filler =
        lexicon != nullptr ? normalize_filler(response.filler, *lexicon) : response.filler;
    if (flags.lowercase) filler = ascii_lower(filler);
    for (auto& [key, cls] : classes) {
      if (cls.credited) continue;
      if (std::get<0>(key) != response.query_id || std::get<1>(key) != response.relation)
        continue;
      bool matched = false;
      for (const GoldEntry* entry : cls.entries) {
        std::string gold_filler = flags.lowercase ? ascii_lower(entry->filler) : entry->filler;
        if (gold_filler != filler) continue;
        if (!flags.anydoc && entry->doc_id != "*" && entry->doc_id != response.doc_id)
          continue;
        matched = true;
        break;
      }
      if (matched) {
        cls.credited = true;
        ++report.correct;
        break;
      }
    }
  }

  if (report.returned > 0)
    report.precision = static_cast<double>(report.correct) / static_cast<double>(report.returned);
  if (report.gold_classes > 0)
    report.recall = static_cast<double>(report.correct) / static_cast<double>(report.gold_classes);
  if (report.precision + report.recall > 0.0) {
    report.f1 =
        2.0 * report.precision * report.recall / (report.precision + report.recall);
  }
  return report;
}

TunerState greedy_tune(const std::vector<std::string>& relations,
                       const std::vector<double>& grid, const EvaluateFn& evaluate,
                       int iterations) {
  if (grid.empty()) throw ContractError("tuner grid is empty");

  std::vector<std::string> order = relations;
  std::sort(order.begin(), order.end());

  TunerState state;
  state.grid = grid;
  state.iterations = iterations;
  for (const std::string& relation : order) state.params[relation] = grid.front();

  auto checked_evaluate = [&](const std::map<std::string, double>& params) {
    double f1 = evaluate(params);
    if (f1 < 0.0 || f1 > 1.0)
      throw ContractError("evaluate returned F1 outside [0,1]: " + fmt_double(f1));
    return f1;
  };

  state.f1 = checked_evaluate(state.params);
  for (int iter = 0; iter < iterations; ++iter) {
    for (const std::string& relation : order) {
      for (double value : grid) {
        std::map<std::string, double> trial = state.params;
        trial[relation] = value;
        double f1 = checked_evaluate(trial);
        if (f1 > state.f1) {
          state.f1 = f1;
          state.params[relation] = value;
        }
      }
    }
  }
  return state;
}

}  // namespace slotfill
