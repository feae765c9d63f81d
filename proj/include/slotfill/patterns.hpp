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
// Two pattern validators:
//
//  (a) intertext patterns (the token sequence between the arguments)
//      harvested from distant-supervision matches, scored by combining a
//      per-relation relative frequency with the probabilities of an
//      averaged multiclass perceptron that includes a NIL class:
//
//        0.5 * n(pat,topic(r)) / n(pat)
//          + 0.5 * n(pat,r) * P(r|s) / ( n(pat) * (P(r|s) + P(NIL|s)) )
//
//  (b) hand-written token-sequence patterns with ARG1/ARG2 slots and
//      * wildcards standing for 1 to 4 tokens.

#ifndef SLOTFILL_PATTERNS_HPP_
#define SLOTFILL_PATTERNS_HPP_

#include <map>
#include <string>
#include <vector>

#include "slotfill/types.hpp"

namespace slotfill {

enum class ArgOrder { kQueryFirst, kFillerFirst };

const char* to_string(ArgOrder order);
ArgOrder parse_arg_order(std::string_view text);

// Pattern identity includes the argument order; "X's wife Y" read in the
// two directions expresses different relations.
struct Pattern {
  std::vector<std::string> tokens;  // may be empty (adjacent arguments)
  ArgOrder arg_order = ArgOrder::kQueryFirst;

  std::string key() const;
  friend auto operator<=>(const Pattern&, const Pattern&) = default;
};

Pattern extract_intertext_pattern(const Sentence& sentence, Span query_span,
                                  Span filler_span);

inline constexpr const char* kNilLabel = "NIL";

// One training occurrence of a pattern; label is a relation name or NIL.
struct PatternExample {
  Pattern pattern;
  std::string label;
};

struct PatternCounts {
  long total = 0;
  std::map<std::string, long> by_relation;
  // Topic counts are kept as a separate field so a richer topic model can
  // replace the current hard assignment (topic of an occurrence = its
  // relation label).
  std::map<std::string, long> by_topic;
};

struct PatternStats {
  std::map<std::string, PatternCounts> counts;  // key = Pattern::key()

  long total(const Pattern& pattern) const;
  long relation_count(const Pattern& pattern, const std::string& relation) const;
  long topic_count(const Pattern& pattern, const std::string& relation) const;
};

struct PerceptronConfig {
  int epochs = 10;
  unsigned seed = 43;
  double temperature = 1.0;
  friend bool operator==(const PerceptronConfig&, const PerceptronConfig&) = default;
};

// Averaged multiclass perceptron over bag-of-token pattern features;
// probabilities are the softmax of the averaged class scores.
struct PatternRelationModel {
  std::vector<std::string> classes;  // sorted relations, then NIL
  std::map<std::string, std::map<std::string, double>> weights;  // class -> feature -> weight
  PerceptronConfig config;
};

std::map<std::string, double> class_probabilities(const PatternRelationModel& model,
                                                  const Pattern& pattern);

struct PatternModel {
  PatternStats stats;
  PatternRelationModel perceptron;
};

// Counts every occurrence (NIL ones add to totals only) and trains the
// perceptron on all of them. Throws ContractError when nil_examples is
// empty: the scoring formula needs the NIL class.
PatternModel fit_pattern_model(const std::vector<PatternExample>& labeled,
                               const std::vector<PatternExample>& nil_examples,
                               const PerceptronConfig& config);

// The scoring formula on raw ingredients. n_pat must be positive; a zero
// probability mass P(r)+P(NIL) makes the second term 0.
double score_pattern_value(long n_pat, long n_pat_r, long n_topic_r, double p_r,
                           double p_nil);

double score_pattern(const Pattern& pattern, const std::string& relation,
                     const PatternStats& stats, const PatternRelationModel& model);

// NIL occurrences for perceptron training: intertext patterns between
// same-sentence entity pairs whose surface pair (in either order) is not
// in the KB. Both argument orders are emitted. Seeded sampling down to cap.
std::vector<PatternExample> collect_nil_examples(
    const Corpus& corpus, const std::vector<KbRecord>& kb, size_t cap, unsigned seed);

struct ScoredPatternTable {
  // pattern key -> (relation, score), relations sorted
  std::map<std::string, std::vector<std::pair<std::string, double>>> rows;
  std::map<std::string, double> thresholds;  // per relation
  double default_threshold = 0.5;

  double threshold_for(const std::string& relation) const;
};

// Scores every (pattern, relation) pair with a positive relation count.
ScoredPatternTable build_pattern_table(const PatternModel& model, double default_threshold);

// Relations whose tuned threshold the candidate's intertext pattern score
// meets, argument order respected. Unknown patterns yield nothing.
std::vector<std::pair<std::string, double>> apply_ds_patterns(
    const Candidate& candidate, const ScoredPatternTable& table);

// ---- hand-written surface patterns ----

struct PatternElement {
  enum class Kind { kLiteral, kArg1, kArg2, kWildcard };
  Kind kind = Kind::kLiteral;
  std::string text;    // literal surface
  int min_tokens = 0;  // wildcard bounds
  int max_tokens = 0;
};

inline constexpr int kWildcardMinTokens = 1;
inline constexpr int kWildcardMaxTokens = 4;

struct SurfacePattern {
  std::string relation;
  std::vector<PatternElement> elements;
};

// Whitespace-separated tokens; "*" is a wildcard for 1 to 4 tokens. ARG1
// and ARG2 must appear exactly once; adjacent wildcards are rejected.
SurfacePattern parse_surface_pattern(const std::string& relation, const std::string& text);

// File rows: "<relation>\t<pattern text>".
std::vector<SurfacePattern> load_surface_patterns(const std::string& path);
void write_surface_patterns(const std::string& path,
                            const std::vector<std::pair<std::string, std::string>>& rows);

// True iff the sentence, with the query span read as ARG1 and the filler
// span as ARG2, contains the element sequence contiguously.
bool match_surface_pattern(const SurfacePattern& pattern, const Sentence& sentence,
                           Span query_span, Span filler_span, bool fold_case);
bool match_surface_pattern(const SurfacePattern& pattern, const Candidate& candidate,
                           bool fold_case);

// ---- serialization ----

void save_pattern_stats(const std::string& path, const PatternStats& stats);
PatternStats load_pattern_stats(const std::string& path);

void save_perceptron(const std::string& path, const PatternRelationModel& model);
PatternRelationModel load_perceptron(const std::string& path);

// Table rows: "<relation>\t<arg_order>\t<pattern tokens>\t<score>";
// thresholds live in a "<relation>\t<threshold>" sidecar (core param format).
void save_pattern_table(const std::string& path, const ScoredPatternTable& table);
ScoredPatternTable load_pattern_table(const std::string& path, double default_threshold);

}  // namespace slotfill

#endif  // SLOTFILL_PATTERNS_HPP_
