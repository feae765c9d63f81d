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

#include "slotfill/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "slotfill/errors.hpp"
#include "slotfill/formats.hpp"
#include "slotfill/strings.hpp"
#include "slotfill/tokenmatch.hpp"

namespace slotfill {

namespace {

constexpr const char* kArg1 = "ARG1";
constexpr const char* kArg2 = "ARG2";

// Bag of intertext tokens, the full pattern string, and the argument order.
std::map<std::string, double> pattern_features(const Pattern& pattern) {
  std::map<std::string, double> features;
  for (const std::string& token : pattern.tokens) features["tok=" + token] += 1.0;
  features["pat=" + join(pattern.tokens, " ")] = 1.0;
  features["ord=" + std::string(to_string(pattern.arg_order))] = 1.0;
  return features;
}

Pattern pattern_from_key(const std::string& key) {
  size_t tab = key.find('\t');
  Pattern pattern;
  pattern.arg_order = parse_arg_order(key.substr(0, tab));
  pattern.tokens = split_ws(key.substr(tab + 1));
  return pattern;
}

void shuffle_indices(std::vector<size_t>* indices, std::mt19937* rng) {
  for (size_t i = indices->size(); i > 1; --i) {
    size_t k = static_cast<size_t>((*rng)() % i);
    std::swap((*indices)[i - 1], (*indices)[k]);
  }
}

}  // namespace

const char* to_string(ArgOrder order) {
  return order == ArgOrder::kQueryFirst ? "query_first" : "filler_first";
}

ArgOrder parse_arg_order(std::string_view text) {
  if (text == "query_first") return ArgOrder::kQueryFirst;
  if (text == "filler_first") return ArgOrder::kFillerFirst;
  throw ParseError("bad argument order '" + std::string(text) + "'");
}

std::string Pattern::key() const {
  return std::string(to_string(arg_order)) + '\t' + join(tokens, " ");
}

Pattern extract_intertext_pattern(const Sentence& sentence, Span query_span,
                                  Span filler_span) {
  if (query_span.overlaps(filler_span))
    throw ContractError("intertext pattern of overlapping spans");
  Pattern pattern;
  const bool query_first = query_span.first < filler_span.first;
  pattern.arg_order = query_first ? ArgOrder::kQueryFirst : ArgOrder::kFillerFirst;
  const Span& left = query_first ? query_span : filler_span;
  const Span& right = query_first ? filler_span : query_span;
  for (int i = left.last + 1; i < right.first; ++i) {
    pattern.tokens.push_back(sentence.tokens[static_cast<size_t>(i)].surface);
  }
  return pattern;
}

long PatternStats::total(const Pattern& pattern) const {
  auto it = counts.find(pattern.key());
  return it == counts.end() ? 0 : it->second.total;
}

long PatternStats::relation_count(const Pattern& pattern, const std::string& relation) const {
  auto it = counts.find(pattern.key());
  if (it == counts.end()) return 0;
  auto rit = it->second.by_relation.find(relation);
  return rit == it->second.by_relation.end() ? 0 : rit->second;
}

long PatternStats::topic_count(const Pattern& pattern, const std::string& relation) const {
  auto it = counts.find(pattern.key());
  if (it == counts.end()) return 0;
  auto tit = it->second.by_topic.find(relation);
  return tit == it->second.by_topic.end() ? 0 : tit->second;
}

std::map<std::string, double> class_probabilities(const PatternRelationModel& model,
                                                  const Pattern& pattern) {
  std::map<std::string, double> features = pattern_features(pattern);
  std::vector<double> scores;
  scores.reserve(model.classes.size());
  for (const std::string& cls : model.classes) {
    double score = 0.0;
    auto wit = model.weights.find(cls);
    if (wit != model.weights.end()) {
      for (const auto& [feature, value] : features) {
        auto fit = wit->second.find(feature);
        if (fit != wit->second.end()) score += fit->second * value;
      }
    }
    scores.push_back(score);
  }
  const double temperature = model.config.temperature > 0 ? model.config.temperature : 1.0;
  double max_score = scores.empty() ? 0.0 : *std::max_element(scores.begin(), scores.end());
  double total = 0.0;
  for (double& s : scores) {
    s = std::exp((s - max_score) / temperature);
    total += s;
  }
  std::map<std::string, double> probabilities;
  for (size_t i = 0; i < model.classes.size(); ++i) {
    probabilities[model.classes[i]] = scores[i] / total;
  }
  return probabilities;
}

PatternModel fit_pattern_model(const std::vector<PatternExample>& labeled,
                               const std::vector<PatternExample>& nil_examples,
                               const PerceptronConfig& config) {
  if (nil_examples.empty())
    throw ContractError("pattern model requires NIL examples for the NIL class");

  PatternModel model;
  std::set<std::string> relations;
  for (const PatternExample& ex : labeled) {
    PatternCounts& counts = model.stats.counts[ex.pattern.key()];
    ++counts.total;
    ++counts.by_relation[ex.label];
    ++counts.by_topic[ex.label];  // topic hard-assigned to the relation label
    relations.insert(ex.label);
  }
  for (const PatternExample& ex : nil_examples) {
    ++model.stats.counts[ex.pattern.key()].total;
  }

  PatternRelationModel& perceptron = model.perceptron;
  perceptron.config = config;
  perceptron.classes.assign(relations.begin(), relations.end());
  perceptron.classes.push_back(kNilLabel);

  struct Example {
    std::map<std::string, double> features;
    size_t gold;
  };
  std::vector<Example> data;
  data.reserve(labeled.size() + nil_examples.size());
  auto class_index = [&](const std::string& label) {
    for (size_t i = 0; i < perceptron.classes.size(); ++i) {
      if (perceptron.classes[i] == label) return i;
    }
    throw ContractError("unknown class '" + label + "'");
  };
  for (const PatternExample& ex : labeled)
    data.push_back(Example{pattern_features(ex.pattern), class_index(ex.label)});
  for (const PatternExample& ex : nil_examples)
    data.push_back(Example{pattern_features(ex.pattern), perceptron.classes.size() - 1});

  const size_t num_classes = perceptron.classes.size();
  std::vector<std::map<std::string, double>> w(num_classes), u(num_classes);
  std::mt19937 rng(config.seed);
  std::vector<size_t> order(data.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  double t = 1.0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle_indices(&order, &rng);
    for (size_t idx : order) {
      const Example& ex = data[idx];
      size_t best = 0;
      double best_score = 0.0;
      for (size_t c = 0; c < num_classes; ++c) {
        double score = 0.0;
        for (const auto& [feature, value] : ex.features) {
          auto it = w[c].find(feature);
          if (it != w[c].end()) score += it->second * value;
        }
        if (c == 0 || score > best_score) {
          best = c;
          best_score = score;
        }
      }
      if (best != ex.gold) {
        for (const auto& [feature, value] : ex.features) {
          w[ex.gold][feature] += value;
          u[ex.gold][feature] += t * value;
          w[best][feature] -= value;
          u[best][feature] -= t * value;
        }
      }
      t += 1.0;
    }
  }
  for (size_t c = 0; c < num_classes; ++c) {
    std::map<std::string, double> averaged;
    for (const auto& [feature, weight] : w[c]) {
      double avg = weight - u[c][feature] / t;
      if (avg != 0.0) averaged[feature] = avg;
    }
    perceptron.weights[perceptron.classes[c]] = std::move(averaged);
  }
  return model;
}

double score_pattern_value(long n_pat, long n_pat_r, long n_topic_r, double p_r,
                           double p_nil) {
  if (n_pat <= 0) throw ContractError("pattern score of an unseen pattern");
  const double total = static_cast<double>(n_pat);
  const double first = 0.5 * static_cast<double>(n_topic_r) / total;
  const double mass = p_r + p_nil;
  double second = 0.0;
  if (mass > 0.0) {
    second = 0.5 * static_cast<double>(n_pat_r) * p_r / (total * mass);
  }
  return first + second;
}

double score_pattern(const Pattern& pattern, const std::string& relation,
                     const PatternStats& stats, const PatternRelationModel& model) {
  const long n_pat = stats.total(pattern);
  if (n_pat <= 0)
    throw ContractError("pattern score requested for unseen pattern '" + pattern.key() + "'");
  std::map<std::string, double> probabilities = class_probabilities(model, pattern);
  auto prob = [&](const std::string& cls) {
    auto it = probabilities.find(cls);
    return it == probabilities.end() ? 0.0 : it->second;
  };
  return score_pattern_value(n_pat, stats.relation_count(pattern, relation),
                             stats.topic_count(pattern, relation), prob(relation),
                             prob(kNilLabel));
}

std::vector<PatternExample> collect_nil_examples(
    const Corpus& corpus, const std::vector<KbRecord>& kb, size_t cap, unsigned seed) {
  std::set<std::pair<std::string, std::string>> known;
  for (const KbRecord& rec : kb) {
    known.emplace(rec.subject, rec.object);
    known.emplace(rec.object, rec.subject);
  }
  std::vector<PatternExample> pool;
  for (const Document& doc : corpus.docs) {
    for (const Sentence& sentence : doc.sentences) {
      const auto& spans = sentence.entity_spans;
      for (size_t a = 0; a < spans.size(); ++a) {
        for (size_t b = 0; b < spans.size(); ++b) {
          if (a == b) continue;
          if (spans[a].span().overlaps(spans[b].span())) continue;
          if (spans[a].first > spans[b].first) continue;  // handle each pair once
          std::string text_a = span_text(sentence, spans[a].span());
          std::string text_b = span_text(sentence, spans[b].span());
          if (known.count({text_a, text_b})) continue;
          Pattern forward = extract_intertext_pattern(sentence, spans[a].span(), spans[b].span());
          Pattern backward = extract_intertext_pattern(sentence, spans[b].span(), spans[a].span());
          pool.push_back(PatternExample{std::move(forward), kNilLabel});
          pool.push_back(PatternExample{std::move(backward), kNilLabel});
        }
      }
    }
  }
  if (pool.size() > cap) {
    std::mt19937 rng(seed);
    std::vector<size_t> order(pool.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    shuffle_indices(&order, &rng);
    order.resize(cap);
    std::sort(order.begin(), order.end());  // keep corpus order after sampling
    std::vector<PatternExample> sampled;
    sampled.reserve(cap);
    for (size_t idx : order) sampled.push_back(std::move(pool[idx]));
    pool = std::move(sampled);
  }
  return pool;
}

double ScoredPatternTable::threshold_for(const std::string& relation) const {
  auto it = thresholds.find(relation);
  return it == thresholds.end() ? default_threshold : it->second;
}

ScoredPatternTable build_pattern_table(const PatternModel& model, double default_threshold) {
  ScoredPatternTable table;
  table.default_threshold = default_threshold;
  for (const auto& [key, counts] : model.stats.counts) {
    Pattern pattern = pattern_from_key(key);
    std::vector<std::pair<std::string, double>> row;
    for (const auto& [relation, count] : counts.by_relation) {
      if (count <= 0) continue;
      row.emplace_back(relation,
                       score_pattern(pattern, relation, model.stats, model.perceptron));
    }
    if (!row.empty()) table.rows[key] = std::move(row);
  }
  return table;
}

std::vector<std::pair<std::string, double>> apply_ds_patterns(
    const Candidate& candidate, const ScoredPatternTable& table) {
  Pattern pattern = extract_intertext_pattern(*candidate.sentence, candidate.query_span,
                                              candidate.filler_span);
  auto it = table.rows.find(pattern.key());
  if (it == table.rows.end()) return {};
  std::vector<std::pair<std::string, double>> out;
  for (const auto& [relation, score] : it->second) {
    if (score >= table.threshold_for(relation)) out.emplace_back(relation, score);
  }
  return out;
}

SurfacePattern parse_surface_pattern(const std::string& relation, const std::string& text) {
  SurfacePattern pattern;
  pattern.relation = relation;
  int arg1_count = 0, arg2_count = 0;
  bool prev_wildcard = false;
  for (const std::string& token : split_ws(text)) {
    PatternElement element;
    if (token == kArg1) {
      element.kind = PatternElement::Kind::kArg1;
      ++arg1_count;
      prev_wildcard = false;
    } else if (token == kArg2) {
      element.kind = PatternElement::Kind::kArg2;
      ++arg2_count;
      prev_wildcard = false;
    } else if (token == "*") {
      if (prev_wildcard)
        throw ParseError("adjacent wildcards in pattern '" + text + "'");
      element.kind = PatternElement::Kind::kWildcard;
      element.min_tokens = kWildcardMinTokens;
      element.max_tokens = kWildcardMaxTokens;
      prev_wildcard = true;
    } else {
      element.kind = PatternElement::Kind::kLiteral;
      element.text = token;
      prev_wildcard = false;
    }
    pattern.elements.push_back(std::move(element));
  }
  if (arg1_count != 1 || arg2_count != 1) {
    throw ParseError("pattern must contain ARG1 and ARG2 exactly once: '" + text + "'");
  }
  return pattern;
}

std::vector<SurfacePattern> load_surface_patterns(const std::string& path) {
  std::vector<SurfacePattern> patterns;
  std::string text = read_file(path);
  long line_no = 0;
  for (const std::string& line : split(text, '\n')) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields = split(line, '\t');
    if (fields.size() != 2)
      throw ParseError(path, line_no, "expected '<relation>\\t<pattern text>'");
    try {
      patterns.push_back(parse_surface_pattern(fields[0], fields[1]));
    } catch (const ParseError& e) {
      throw ParseError(path, line_no, e.what());
    }
  }
  return patterns;
}

void write_surface_patterns(const std::string& path,
                            const std::vector<std::pair<std::string, std::string>>& rows) {
  std::string out;
  for (const auto& [relation, text] : rows) out += relation + '\t' + text + '\n';
  write_file(path, out);
}

namespace {

struct ReducedToken {
  enum class Kind { kArg1, kArg2, kLiteral };
  Kind kind;
  const std::string* surface;  // only for literals
};

bool match_elements(const std::vector<PatternElement>& elements, size_t ei,
                    const std::vector<ReducedToken>& reduced, size_t pos, bool fold_case) {
  if (ei == elements.size()) return true;
  if (pos >= reduced.size()) return false;
  const PatternElement& element = elements[ei];
  switch (element.kind) {
    case PatternElement::Kind::kArg1:
      return reduced[pos].kind == ReducedToken::Kind::kArg1 &&
             match_elements(elements, ei + 1, reduced, pos + 1, fold_case);
    case PatternElement::Kind::kArg2:
      return reduced[pos].kind == ReducedToken::Kind::kArg2 &&
             match_elements(elements, ei + 1, reduced, pos + 1, fold_case);
    case PatternElement::Kind::kLiteral:
      return reduced[pos].kind == ReducedToken::Kind::kLiteral &&
             tokens_equal(*reduced[pos].surface, element.text, fold_case) &&
             match_elements(elements, ei + 1, reduced, pos + 1, fold_case);
    case PatternElement::Kind::kWildcard:
      for (int len = element.min_tokens; len <= element.max_tokens; ++len) {
        if (pos + static_cast<size_t>(len) > reduced.size()) break;
        if (match_elements(elements, ei + 1, reduced, pos + static_cast<size_t>(len),
                           fold_case)) {
          return true;
        }
      }
      return false;
  }
  return false;
}

}  // namespace

bool match_surface_pattern(const SurfacePattern& pattern, const Sentence& sentence,
                           Span query_span, Span filler_span, bool fold_case) {
  std::vector<ReducedToken> reduced;
  const int n = static_cast<int>(sentence.tokens.size());
  for (int i = 0; i < n; ++i) {
    if (i == query_span.first) {
      reduced.push_back(ReducedToken{ReducedToken::Kind::kArg1, nullptr});
      i = query_span.last;
    } else if (i == filler_span.first) {
      reduced.push_back(ReducedToken{ReducedToken::Kind::kArg2, nullptr});
      i = filler_span.last;
    } else {
      reduced.push_back(ReducedToken{ReducedToken::Kind::kLiteral,
                                     &sentence.tokens[static_cast<size_t>(i)].surface});
    }
  }
  for (size_t start = 0; start < reduced.size(); ++start) {
    if (match_elements(pattern.elements, 0, reduced, start, fold_case)) return true;
  }
  return false;
}

bool match_surface_pattern(const SurfacePattern& pattern, const Candidate& candidate,
                           bool fold_case) {
  return match_surface_pattern(pattern, *candidate.sentence, candidate.query_span,
                               candidate.filler_span, fold_case);
}

void save_pattern_stats(const std::string& path, const PatternStats& stats) {
  std::string out;
  for (const auto& [key, counts] : stats.counts) {
    out += "P\t" + key + '\t' + std::to_string(counts.total) + '\n';
    for (const auto& [relation, count] : counts.by_relation) {
      long topic = 0;
      auto tit = counts.by_topic.find(relation);
      if (tit != counts.by_topic.end()) topic = tit->second;
      out += "R\t" + key + '\t' + relation + '\t' + std::to_string(count) + '\t' +
             std::to_string(topic) + '\n';
    }
  }
  write_file(path, out);
}

PatternStats load_pattern_stats(const std::string& path) {
  PatternStats stats;
  std::string text = read_file(path);
  long line_no = 0;
  for (const std::string& line : split(text, '\n')) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields = split(line, '\t');
    // Pattern keys embed one tab (order, tokens), so rows carry an extra field.
    if (fields[0] == "P" && fields.size() == 4) {
      long total = 0;
      if (!parse_long(fields[3], &total))
        throw ParseError(path, line_no, "bad pattern total");
      stats.counts[fields[1] + '\t' + fields[2]].total = total;
    } else if (fields[0] == "R" && fields.size() == 6) {
      long count = 0, topic = 0;
      if (!parse_long(fields[4], &count) || !parse_long(fields[5], &topic))
        throw ParseError(path, line_no, "bad pattern relation counts");
      PatternCounts& counts = stats.counts[fields[1] + '\t' + fields[2]];
      counts.by_relation[fields[3]] = count;
      counts.by_topic[fields[3]] = topic;
    } else {
      throw ParseError(path, line_no, "bad pattern stats row");
    }
  }
  return stats;
}

void save_perceptron(const std::string& path, const PatternRelationModel& model) {
  std::string out = join(model.classes, ",") + '\t' + std::to_string(model.config.epochs) +
                    '\t' + std::to_string(model.config.seed) + '\t' +
                    fmt_double(model.config.temperature) + '\n';
  for (const auto& [cls, weights] : model.weights) {
    for (const auto& [feature, weight] : weights) {
      out += cls + '\t' + feature + '\t' + fmt_double(weight) + '\n';
    }
  }
  write_file(path, out);
}

PatternRelationModel load_perceptron(const std::string& path) {
  PatternRelationModel model;
  std::string text = read_file(path);
  std::vector<std::string> lines = split(text, '\n');
  if (lines.empty() || lines[0].empty()) throw ParseError(path + ": empty perceptron file");
  std::vector<std::string> header = split(lines[0], '\t');
  if (header.size() != 4) throw ParseError(path, 1, "bad perceptron header");
  model.classes = split(header[0], ',');
  long epochs = 0, seed = 0;
  if (!parse_long(header[1], &epochs) || !parse_long(header[2], &seed) ||
      !parse_double(header[3], &model.config.temperature)) {
    throw ParseError(path, 1, "bad perceptron header field");
  }
  model.config.epochs = static_cast<int>(epochs);
  model.config.seed = static_cast<unsigned>(seed);
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::vector<std::string> fields = split(lines[i], '\t');
    if (fields.size() != 3)
      throw ParseError(path, static_cast<long>(i + 1), "bad perceptron weight row");
    double weight = 0.0;
    if (!parse_double(fields[2], &weight))
      throw ParseError(path, static_cast<long>(i + 1), "bad perceptron weight value");
    model.weights[fields[0]][fields[1]] = weight;
  }
  return model;
}

void save_pattern_table(const std::string& path, const ScoredPatternTable& table) {
  // Rows sorted by (relation, arg_order, pattern tokens).
  std::vector<std::string> lines;
  for (const auto& [key, row] : table.rows) {
    size_t tab = key.find('\t');
    const std::string order = key.substr(0, tab);
    const std::string tokens = key.substr(tab + 1);
    for (const auto& [relation, score] : row) {
      lines.push_back(relation + '\t' + order + '\t' + tokens + '\t' + fmt_double(score));
    }
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const std::string& line : lines) out += line + '\n';
  write_file(path, out);
}

ScoredPatternTable load_pattern_table(const std::string& path, double default_threshold) {
  ScoredPatternTable table;
  table.default_threshold = default_threshold;
  std::string text = read_file(path);
  long line_no = 0;
  for (const std::string& line : split(text, '\n')) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields = split(line, '\t');
    if (fields.size() != 4) throw ParseError(path, line_no, "bad pattern table row");
    double score = 0.0;
    if (!parse_double(fields[3], &score))
      throw ParseError(path, line_no, "bad pattern score");
    parse_arg_order(fields[1]);  // validates
    table.rows[fields[1] + '\t' + fields[2]].emplace_back(fields[0], score);
  }
  for (auto& [key, row] : table.rows) std::sort(row.begin(), row.end());
  return table;
}

}  // namespace slotfill
