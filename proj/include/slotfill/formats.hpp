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
// Parsers and serializers for every on-disk format. All formats are
// tab-separated UTF-8 text:
//
//   corpus:   "#doc <doc_id>" header, then one token per line as
//             "<surface>\t<begin>\t<end>\t<BIO tag>"; a blank line ends
//             each sentence (including the last one of a document).
//   queries:  "<id>\t<name>\t<PER|ORG>"
//   schemas:  "<relation>\t<PER|ORG>\t<comma-separated filler types>\t<single|list>"
//   kb:       "<relation>\t<subject>\t<object>"
//   lexicon:  "<anchor text>\t<page title>\t<count>"
//   response: "<query_id>\t<relation>\t<run_id>\t<doc_id|NIL>\t<filler>
//              \t<f_begin>\t<f_end>\t<j_begin>\t<j_end>\t<confidence>",
//             NIL rows truncated after the NIL column
//   gold:     "<query_id>\t<relation>\t<class_id>\t<normalized filler>\t<doc_id|*>"
//   types:    "<type name>\t<surface form>"
//   mapping:  "<kb relation>\t<schema relation>"
//   params:   "<relation>\t<value>"

#ifndef SLOTFILL_FORMATS_HPP_
#define SLOTFILL_FORMATS_HPP_

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "slotfill/alias.hpp"
#include "slotfill/candidates.hpp"
#include "slotfill/types.hpp"

namespace slotfill {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Rejects duplicate relation names and names whose "per:"/"org:" prefix
// does not match the declared query type.
std::vector<RelationSchema> load_schemas(const std::string& path);
std::vector<RelationSchema> parse_schemas_text(std::string_view text,
                                               const std::string& origin);

Corpus parse_corpus(const std::string& path);
Corpus parse_corpus_text(std::string_view text, const std::string& origin);

// Inverse of parse_corpus; on parser-accepted input, parse then serialize
// reproduces the bytes.
std::string serialize_corpus(const Corpus& corpus);
void write_corpus(const std::string& path, const Corpus& corpus);

std::vector<Query> parse_queries(const std::string& path);
std::vector<Query> parse_queries_text(std::string_view text, const std::string& origin);

std::vector<GoldEntry> parse_gold(const std::string& path);
void write_gold(const std::string& path, const std::vector<GoldEntry>& entries);

std::vector<ResponseRecord> parse_responses(const std::string& path);
std::vector<ResponseRecord> parse_responses_text(std::string_view text,
                                                 const std::string& origin);
std::string serialize_responses(const std::vector<ResponseRecord>& records);
void write_responses(const std::string& path, const std::vector<ResponseRecord>& records);

std::vector<KbRecord> parse_kb(const std::string& path);
void write_kb(const std::string& path, const std::vector<KbRecord>& records);

std::unordered_map<std::string, std::string> parse_relation_mapping(const std::string& path);

AnchorLexicon load_anchor_lexicon(const std::string& path);
void write_anchor_lexicon(const std::string& path, const AnchorLexicon& lexicon);

TypeLists load_type_lists(const std::string& path);
void write_type_lists(const std::string& path, const TypeLists& lists);

// One entry per line; blank lines skipped.
std::vector<std::string> load_line_list(const std::string& path);
void write_line_list(const std::string& path, const std::vector<std::string>& lines);

std::map<std::string, double> parse_param_file(const std::string& path);
void write_param_file(const std::string& path, const std::map<std::string, double>& params);

}  // namespace slotfill

#endif  // SLOTFILL_FORMATS_HPP_
