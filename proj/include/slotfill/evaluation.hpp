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
// Micro-averaged P/R/F1 scoring with anydoc and lowercase modes, and the
// greedy global parameter tuner shared by classifier cost factors and
// pattern score thresholds.

#ifndef SLOTFILL_EVALUATION_HPP_
#define SLOTFILL_EVALUATION_HPP_

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "slotfill/alias.hpp"
#include "slotfill/types.hpp"

namespace slotfill {

struct ScoreFlags {
  bool anydoc = false;     // accept a correct filler regardless of doc id
  bool lowercase = false;  // case-insensitive filler comparison
};

struct ScoreReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long returned = 0;
  long correct = 0;
  long gold_classes = 0;
  long unknown_relation_responses = 0;
};

// A non-NIL response is correct iff some gold entry of its (query_id,
// relation) matches on filler (both sides lowercased iff the flag is set)
// and on doc id ("*" accepts any; anydoc skips the check). Each gold
// equivalence class credits at most one response. When a lexicon is given,
// response fillers are first mapped to normal forms, matching the
// postprocessing convention; gold fillers are stored normalized.
ScoreReport score_run(const std::vector<ResponseRecord>& responses,
                      const std::vector<GoldEntry>& gold, ScoreFlags flags,
                      const AnchorLexicon* lexicon = nullptr);

struct TunerState {
  std::map<std::string, double> params;  // relation -> chosen grid value
  double f1 = 0.0;
  std::vector<double> grid;
  int iterations = 2;
};

using EvaluateFn = std::function<double(const std::map<std::string, double>&)>;

inline const std::vector<double> kCostFactorGrid{0.1, 1.0, 10.0};
inline const std::vector<double> kThresholdGrid{0.1, 0.3, 0.5, 0.7, 0.9};

// Coordinate ascent on the global F1: start every relation at the first
// grid value, then sweep relations (lexicographically) and grid values for
// the given number of iterations, committing any strictly improving single
// substitution immediately. evaluate must be deterministic and in [0,1].
TunerState greedy_tune(const std::vector<std::string>& relations,
                       const std::vector<double>& grid, const EvaluateFn& evaluate,
                       int iterations = 2);

}  // namespace slotfill

#endif  // SLOTFILL_EVALUATION_HPP_
