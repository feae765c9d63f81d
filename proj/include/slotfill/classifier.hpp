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
// Per-relation binary linear max-margin classifiers. Training pools all
// sentences of an entity pair into one max-normalized feature vector
// (aggregate training) and minimizes L2-regularized hinge loss where
// errors on positives cost j times errors on negatives. Prediction runs
// per sentence on the max-normalized count vector; the decision threshold
// is exactly 0.

#ifndef SLOTFILL_CLASSIFIER_HPP_
#define SLOTFILL_CLASSIFIER_HPP_

#include <string>
#include <unordered_map>
#include <vector>

#include "slotfill/features.hpp"

namespace slotfill {

// One entity pair's pooled training vector; max weight is exactly 1.0 for
// non-empty vectors.
struct AggregatedExample {
  std::string subject;
  std::string object;
  FeatureVector features;
  bool positive = true;
};

struct TrainConfig {
  double j = 1.0;
  int epochs = 20;
  double regularization = 1e-4;
  unsigned seed = 42;
  double eta0 = 1.0;
  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

struct LinearModel {
  std::string relation;
  std::unordered_map<std::string, double> weights;
  double bias = 0.0;
  TrainConfig config;
};

// Scales so the largest weight becomes exactly 1.0; empty input stays empty.
FeatureVector max_normalize(const FeatureVector& counts);

// Element-wise sum of the per-sentence count vectors, then max-normalized.
AggregatedExample aggregate_pair(const std::string& subject, const std::string& object,
                                 const std::vector<FeatureVector>& sentence_counts);

struct PairGroup {
  std::string subject;
  std::string object;
  std::vector<FeatureVector> sentence_counts;
};

struct AggregateResult {
  std::vector<AggregatedExample> examples;
  int dropped_empty = 0;  // groups whose sentences produced no features
};

AggregateResult aggregate_examples(const std::vector<PairGroup>& groups);

// Seeded stochastic subgradient descent; throws ContractError on empty
// positives. Deterministic for a fixed seed.
LinearModel train(const std::string& relation,
                  const std::vector<AggregatedExample>& positives,
                  const std::vector<AggregatedExample>& negatives,
                  const TrainConfig& config);

// Mean cost-weighted hinge loss plus (lambda/2)*||w||^2; the objective the
// trainer descends, exposed so callers can check conventions.
double objective(const LinearModel& model, const std::vector<AggregatedExample>& examples);

struct Prediction {
  bool decision = false;
  double score = 0.0;
};

// Normalizes the raw per-sentence counts by the training rule, then scores.
Prediction predict(const LinearModel& model, const FeatureVector& counts);

// Dot product plus bias over an already-normalized vector.
double decision_score(const LinearModel& model, const FeatureVector& normalized);

double logistic(double score);

// Model file: one header line "relation <tab> j <tab> epochs <tab>
// regularization <tab> seed <tab> bias", then "<feature>\t<weight>" lines
// sorted by feature.
void save_model(const std::string& path, const LinearModel& model);
LinearModel load_model(const std::string& path);

}  // namespace slotfill

#endif  // SLOTFILL_CLASSIFIER_HPP_
