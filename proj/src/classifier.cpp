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

#include "slotfill/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "slotfill/errors.hpp"
#include "slotfill/formats.hpp"
#include "slotfill/strings.hpp"

namespace slotfill {

namespace {

// Portable Fisher-Yates; std::shuffle is implementation-defined.
void shuffle_indices(std::vector<size_t>* indices, std::mt19937* rng) {
  for (size_t i = indices->size(); i > 1; --i) {
    size_t k = static_cast<size_t>((*rng)() % i);
    std::swap((*indices)[i - 1], (*indices)[k]);
  }
}

}  // namespace

FeatureVector max_normalize(const FeatureVector& counts) {
  double max_count = 0.0;
  for (const auto& [feature, count] : counts) max_count = std::max(max_count, count);
  if (max_count <= 0.0) return {};
  FeatureVector out;
  for (const auto& [feature, count] : counts) {
    if (count > 0.0) out[feature] = count / max_count;
  }
  return out;
}

AggregatedExample aggregate_pair(const std::string& subject, const std::string& object,
                                 const std::vector<FeatureVector>& sentence_counts) {
  FeatureVector sum;
  for (const FeatureVector& counts : sentence_counts) {
    for (const auto& [feature, count] : counts) sum[feature] += count;
  }
  AggregatedExample example;
  example.subject = subject;
  example.object = object;
  example.features = max_normalize(sum);
  return example;
}

AggregateResult aggregate_examples(const std::vector<PairGroup>& groups) {
  AggregateResult result;
  for (const PairGroup& group : groups) {
    AggregatedExample example =
        aggregate_pair(group.subject, group.object, group.sentence_counts);
    if (example.features.empty()) {
      ++result.dropped_empty;
      continue;
    }
    result.examples.push_back(std::move(example));
  }
  return result;
}

LinearModel train(const std::string& relation,
                  const std::vector<AggregatedExample>& positives,
                  const std::vector<AggregatedExample>& negatives,
                  const TrainConfig& config) {
  if (positives.empty())
    throw ContractError("training relation '" + relation + "' with no positive examples");

  struct Slot {
    const FeatureVector* features;
    double y;
    double cost;
  };
  std::vector<Slot> data;
  data.reserve(positives.size() + negatives.size());
  for (const AggregatedExample& ex : positives)
    data.push_back(Slot{&ex.features, 1.0, config.j});
  for (const AggregatedExample& ex : negatives)
    data.push_back(Slot{&ex.features, -1.0, 1.0});

  // w is kept as scale * values so the per-step L2 decay stays O(nnz).
  std::map<std::string, double> values;
  double scale = 1.0;
  double bias = 0.0;
  const double lambda = config.regularization;

  std::mt19937 rng(config.seed);
  std::vector<size_t> order(data.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  long step = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle_indices(&order, &rng);
    for (size_t idx : order) {
      const Slot& slot = data[idx];
      const double eta = config.eta0 / (1.0 + config.eta0 * lambda * static_cast<double>(step));
      ++step;
      double score = bias;
      for (const auto& [feature, value] : *slot.features) {
        auto it = values.find(feature);
        if (it != values.end()) score += scale * it->second * value;
      }
      scale *= (1.0 - eta * lambda);
      if (slot.y * score < 1.0) {
        const double delta = eta * slot.cost * slot.y;
        for (const auto& [feature, value] : *slot.features) {
          values[feature] += delta * value / scale;
        }
        bias += delta;  // bias is unregularized
      }
    }
  }

  LinearModel model;
  model.relation = relation;
  model.bias = bias;
  model.config = config;
  for (const auto& [feature, value] : values) {
    const double w = scale * value;
    if (w != 0.0) model.weights.emplace(feature, w);
  }
  return model;
}

double objective(const LinearModel& model, const std::vector<AggregatedExample>& examples) {
  double loss = 0.0;
  for (const AggregatedExample& ex : examples) {
    const double y = ex.positive ? 1.0 : -1.0;
    const double cost = ex.positive ? model.config.j : 1.0;
    loss += cost * std::max(0.0, 1.0 - y * decision_score(model, ex.features));
  }
  if (!examples.empty()) loss /= static_cast<double>(examples.size());
  double norm = 0.0;
  for (const auto& [feature, w] : model.weights) norm += w * w;
  return loss + 0.5 * model.config.regularization * norm;
}

double decision_score(const LinearModel& model, const FeatureVector& normalized) {
  double score = model.bias;
  for (const auto& [feature, value] : normalized) {
    auto it = model.weights.find(feature);
    if (it != model.weights.end()) score += it->second * value;
  }
  return score;
}

Prediction predict(const LinearModel& model, const FeatureVector& counts) {
  const double score = decision_score(model, max_normalize(counts));
  return Prediction{score >= 0.0, score};
}

double logistic(double score) { return 1.0 / (1.0 + std::exp(-score)); }

void save_model(const std::string& path, const LinearModel& model) {
  std::string out = model.relation + '\t' + fmt_double(model.config.j) + '\t' +
                    std::to_string(model.config.epochs) + '\t' +
                    fmt_double(model.config.regularization) + '\t' +
                    std::to_string(model.config.seed) + '\t' + fmt_double(model.bias) + '\n';
  std::map<std::string, double> sorted(model.weights.begin(), model.weights.end());
  for (const auto& [feature, weight] : sorted) {
    out += feature + '\t' + fmt_double(weight) + '\n';
  }
  write_file(path, out);
}

LinearModel load_model(const std::string& path) {
  std::string text = read_file(path);
  std::vector<std::string> lines = split(text, '\n');
  if (lines.empty() || lines[0].empty()) throw ParseError(path + ": empty model file");
  std::vector<std::string> header = split(lines[0], '\t');
  if (header.size() != 6) throw ParseError(path, 1, "bad model header");
  LinearModel model;
  model.relation = header[0];
  long epochs = 0, seed = 0;
  if (!parse_double(header[1], &model.config.j) || !parse_long(header[2], &epochs) ||
      !parse_double(header[3], &model.config.regularization) ||
      !parse_long(header[4], &seed) || !parse_double(header[5], &model.bias)) {
    throw ParseError(path, 1, "bad model header field");
  }
  model.config.epochs = static_cast<int>(epochs);
  model.config.seed = static_cast<unsigned>(seed);
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::vector<std::string> fields = split(lines[i], '\t');
    if (fields.size() != 2)
      throw ParseError(path, static_cast<long>(i + 1), "bad model weight row");
    double weight = 0.0;
    if (!parse_double(fields[1], &weight))
      throw ParseError(path, static_cast<long>(i + 1), "bad model weight value");
    model.weights[fields[0]] = weight;
  }
  return model;
}

}  // namespace slotfill
