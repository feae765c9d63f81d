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

#include "slotfill/features.hpp"

#include "slotfill/errors.hpp"
#include "slotfill/strings.hpp"

namespace slotfill {

namespace {

constexpr const char* kBetweenGroup = "BETWEEN_NGRAM";
constexpr const char* kSkipGroup = "SKIP_NGRAM";
constexpr const char* kOutsideGroup = "OUTSIDE_NGRAM";
constexpr int kMaxNgram = 3;
constexpr int kOutsideWindow = 3;

void emit(FeatureVector* features, const char* group,
          const std::vector<std::string>& marked, size_t first, size_t count) {
  std::string key = group;
  for (size_t i = first; i < first + count; ++i) {
    key += '#';
    key += marked[i];
  }
  (*features)[key] += 1.0;
}

void emit_skip(FeatureVector* features, const std::vector<std::string>& marked,
               size_t first, size_t window) {
  std::string key = kSkipGroup;
  key += '#';
  key += marked[first];
  for (size_t i = 1; i + 1 < window; ++i) key += '#';  // wildcarded interior
  key += '#';
  key += marked[first + window - 1];
  (*features)[key] += 1.0;
}

}  // namespace

FeatureVector extract_features(const Sentence& sentence, Span query_span, Span filler_span) {
  FeatureVector features;
  const bool query_first = query_span.first < filler_span.first;
  const char mark = query_first ? '>' : '<';
  const Span& left_span = query_first ? query_span : filler_span;
  const Span& right_span = query_first ? filler_span : query_span;
  const std::string left_arg = std::string(query_first ? "ARG1" : "ARG2") + mark;
  const std::string right_arg = std::string(query_first ? "ARG2" : "ARG1") + mark;

  auto marked_token = [&](int i) {
    return sentence.tokens[static_cast<size_t>(i)].surface + mark;
  };

  // Placeholder-bounded between sequence.
  std::vector<std::string> between;
  between.push_back(left_arg);
  for (int i = left_span.last + 1; i < right_span.first; ++i) {
    between.push_back(marked_token(i));
  }
  between.push_back(right_arg);

  for (size_t start = 0; start < between.size(); ++start) {
    for (size_t len = 1; len <= kMaxNgram && start + len <= between.size(); ++len) {
      emit(&features, kBetweenGroup, between, start, len);
    }
  }
  for (size_t window = 3; window <= 4; ++window) {
    for (size_t start = 0; start + window <= between.size(); ++start) {
      emit_skip(&features, between, start, window);
    }
  }

  // Left context ending at the left placeholder.
  std::vector<std::string> left_context;
  for (int i = std::max(0, left_span.first - kOutsideWindow); i < left_span.first; ++i) {
    left_context.push_back(marked_token(i));
  }
  left_context.push_back(left_arg);
  for (size_t len = 1; len <= kMaxNgram && len <= left_context.size(); ++len) {
    emit(&features, kOutsideGroup, left_context, left_context.size() - len, len);
  }

  // Right context starting at the right placeholder.
  std::vector<std::string> right_context;
  right_context.push_back(right_arg);
  const int sentence_len = static_cast<int>(sentence.tokens.size());
  for (int i = right_span.last + 1;
       i < std::min(sentence_len, right_span.last + 1 + kOutsideWindow); ++i) {
    right_context.push_back(marked_token(i));
  }
  for (size_t len = 1; len <= kMaxNgram && len <= right_context.size(); ++len) {
    emit(&features, kOutsideGroup, right_context, 0, len);
  }
  return features;
}

FeatureVector extract_features(const Candidate& candidate) {
  return extract_features(*candidate.sentence, candidate.query_span, candidate.filler_span);
}

ParsedFeature parse_feature(const std::string& feature) {
  std::vector<std::string> parts = split(feature, '#');
  if (parts.size() < 2) throw ParseError("feature has no tokens: '" + feature + "'");
  ParsedFeature parsed;
  parsed.group = parts[0];
  if (parsed.group != kBetweenGroup && parsed.group != kSkipGroup &&
      parsed.group != kOutsideGroup) {
    throw ParseError("unknown feature group in '" + feature + "'");
  }
  parsed.marked_tokens.assign(parts.begin() + 1, parts.end());
  for (const std::string& tok : parsed.marked_tokens) {
    if (!tok.empty() && tok.back() != '>' && tok.back() != '<')
      throw ParseError("token missing direction mark in '" + feature + "'");
  }
  return parsed;
}

std::string print_feature(const ParsedFeature& feature) {
  std::string out = feature.group;
  for (const std::string& tok : feature.marked_tokens) {
    out += '#';
    out += tok;
  }
  return out;
}

}  // namespace slotfill
