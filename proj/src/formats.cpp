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

#include "slotfill/formats.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "slotfill/errors.hpp"
#include "slotfill/strings.hpp"

namespace slotfill {

namespace {

constexpr std::string_view kDocHeader = "#doc ";
constexpr std::string_view kNilMarker = "NIL";

// Iterates lines without their trailing '\n'. Reports whether the final
// line was newline-terminated so corpus parsing can be strict about it.
struct LineReader {
  std::string_view text;
  size_t pos = 0;
  long line_no = 0;

  bool next(std::string_view* line) {
    if (pos >= text.size()) return false;
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      *line = text.substr(pos);
      pos = text.size();
    } else {
      *line = text.substr(pos, nl - pos);
      pos = nl + 1;
    }
    ++line_no;
    return true;
  }
};

std::vector<std::string> require_fields(std::string_view line, size_t count,
                                        const std::string& origin, long line_no) {
  std::vector<std::string> fields = split(line, '\t');
  if (fields.size() != count) {
    throw ParseError(origin, line_no,
                     "expected " + std::to_string(count) + " tab-separated fields, got " +
                         std::to_string(fields.size()));
  }
  return fields;
}

int parse_offset(const std::string& field, const std::string& origin, long line_no) {
  long value = 0;
  if (!parse_long(field, &value) || value < 0) {
    throw ParseError(origin, line_no, "bad character offset '" + field + "'");
  }
  return static_cast<int>(value);
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << content;
  if (!out) throw ParseError(path + ": write failed");
}

std::vector<RelationSchema> parse_schemas_text(std::string_view text,
                                               const std::string& origin) {
  std::vector<RelationSchema> schemas;
  std::set<std::string> names;
  LineReader reader{text};
  std::string_view line;
  while (reader.next(&line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields = require_fields(line, 4, origin, reader.line_no);
    RelationSchema schema;
    schema.name = fields[0];
    try {
      schema.query_type = parse_entity_type(fields[1]);
    } catch (const ParseError& e) {
      throw ParseError(origin, reader.line_no, e.what());
    }
    for (const std::string& type : split(fields[2], ',')) {
      if (type.empty())
        throw ParseError(origin, reader.line_no, "empty filler type");
      schema.filler_types.push_back(type);
    }
    if (schema.filler_types.empty())
      throw ParseError(origin, reader.line_no, "no filler types");
    if (fields[3] == "single") {
      schema.arity = Arity::kSingle;
    } else if (fields[3] == "list") {
      schema.arity = Arity::kList;
    } else {
      throw ParseError(origin, reader.line_no, "bad arity '" + fields[3] + "'");
    }
    if (!names.insert(schema.name).second)
      throw SchemaError("duplicate relation name '" + schema.name + "'");
    const char* prefix = schema.query_type == EntityType::kPer ? "per:" : "org:";
    if (!schema.name.starts_with(prefix)) {
      throw SchemaError("relation '" + schema.name + "' does not match query type " +
                        to_string(schema.query_type));
    }
    schemas.push_back(std::move(schema));
  }
  return schemas;
}

std::vector<RelationSchema> load_schemas(const std::string& path) {
  return parse_schemas_text(read_file(path), path);
}

Corpus parse_corpus_text(std::string_view text, const std::string& origin) {
  Corpus corpus;
  Document* doc = nullptr;
  Sentence sentence;
  long sentence_start_line = 0;
  // Open BIO span while scanning token lines of one sentence.
  bool span_open = false;
  EntitySpan open_span;
  int prev_end = -1;

  auto finish_span = [&]() {
    if (span_open) {
      sentence.entity_spans.push_back(open_span);
      span_open = false;
    }
  };

  LineReader reader{text};
  std::string_view line;
  bool newline_terminated = text.empty() || text.back() == '\n';
  while (reader.next(&line)) {
    if (line.starts_with(kDocHeader)) {
      if (!sentence.tokens.empty())
        throw ParseError(origin, reader.line_no, "document header inside a sentence");
      corpus.docs.emplace_back();
      doc = &corpus.docs.back();
      doc->doc_id = std::string(line.substr(kDocHeader.size()));
      if (doc->doc_id.empty())
        throw ParseError(origin, reader.line_no, "empty document id");
      prev_end = -1;
      continue;
    }
    if (line.empty()) {
      if (sentence.tokens.empty())
        throw ParseError(origin, reader.line_no, "blank line without a sentence");
      finish_span();
      sentence.doc_id = doc->doc_id;
      validate_sentence(sentence, origin, sentence_start_line);
      doc->sentences.push_back(std::move(sentence));
      sentence = Sentence{};
      continue;
    }
    if (doc == nullptr)
      throw ParseError(origin, reader.line_no, "token line before any document header");
    std::vector<std::string> fields = require_fields(line, 4, origin, reader.line_no);
    if (fields[0].empty())
      throw ParseError(origin, reader.line_no, "empty token surface");
    Token token;
    token.surface = fields[0];
    token.begin = parse_offset(fields[1], origin, reader.line_no);
    token.end = parse_offset(fields[2], origin, reader.line_no);
    if (token.end <= token.begin || token.begin < prev_end)
      throw ParseError(origin, reader.line_no, "decreasing token offsets");
    prev_end = token.end;

    const std::string& tag = fields[3];
    int token_index = static_cast<int>(sentence.tokens.size());
    if (sentence.tokens.empty()) sentence_start_line = reader.line_no;
    if (tag == "O") {
      finish_span();
    } else if (tag.starts_with("B-") && tag.size() > 2) {
      finish_span();
      span_open = true;
      open_span = EntitySpan{tag.substr(2), token_index, token_index};
    } else if (tag.starts_with("I-") && tag.size() > 2) {
      if (!span_open || open_span.type != tag.substr(2)) {
        throw ParseError(origin, reader.line_no,
                         "I- tag without preceding B- of type " + tag.substr(2));
      }
      open_span.last = token_index;
    } else {
      throw ParseError(origin, reader.line_no, "bad BIO tag '" + tag + "'");
    }
    sentence.tokens.push_back(std::move(token));
  }
  if (!sentence.tokens.empty())
    throw ParseError(origin, reader.line_no, "unterminated sentence at end of file");
  if (!newline_terminated)
    throw ParseError(origin, reader.line_no, "missing final newline");
  return corpus;
}

Corpus parse_corpus(const std::string& path) {
  return parse_corpus_text(read_file(path), path);
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out;
  for (const Document& doc : corpus.docs) {
    out.append(kDocHeader);
    out.append(doc.doc_id);
    out.push_back('\n');
    for (const Sentence& sentence : doc.sentences) {
      // Rebuild BIO tags; requires spans to be disjoint.
      std::vector<std::string> tags(sentence.tokens.size(), "O");
      for (const EntitySpan& es : sentence.entity_spans) {
        for (int i = es.first; i <= es.last; ++i) {
          if (tags[static_cast<size_t>(i)] != "O")
            throw ParseError("cannot serialize overlapping entity spans in doc " + doc.doc_id);
          tags[static_cast<size_t>(i)] = (i == es.first ? "B-" : "I-") + es.type;
        }
      }
      for (size_t i = 0; i < sentence.tokens.size(); ++i) {
        const Token& tok = sentence.tokens[i];
        out.append(tok.surface);
        out.push_back('\t');
        out.append(std::to_string(tok.begin));
        out.push_back('\t');
        out.append(std::to_string(tok.end));
        out.push_back('\t');
        out.append(tags[i]);
        out.push_back('\n');
      }
      out.push_back('\n');
    }
  }
  return out;
}

void write_corpus(const std::string& path, const Corpus& corpus) {
  write_file(path, serialize_corpus(corpus));
}

std::vector<Query> parse_queries_text(std::string_view text, const std::string& origin) {
  std::vector<Query> queries;
  LineReader reader{text};
  std::string_view line;
  while (reader.next(&line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields = require_fields(line, 3, origin, reader.line_no);
    if (fields[1].empty()) throw ParseError(origin, reader.line_no, "empty query name");
    Query query;
    query.id = fields[0];
    query.name = fields[1];
    try {
      query.entity_type = parse_entity_type(fields[2]);
    } catch (const ParseError& e) {
      throw ParseError(origin, reader.line_no, e.what());
    }
    queries.push_back(std::move(query));
  }
  return queries;
}

std::vector<Query> parse_queries(const std::string& path) {
  return parse_queries_text(read_file(path), path);
}

std::vector<GoldEntry> parse_gold(const std::string& path) {
  std::string text = read_file(path);
  std::vector<GoldEntry> entries;
  LineReader reader{text};
  std::string_view line;
  while (reader.next(&line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields = require_fields(line, 5, path, reader.line_no);
    entries.push_back(GoldEntry{fields[0], fields[1], fields[2], fields[3], fields[4]});
  }
  return entries;
}

void write_gold(const std::string& path, const std::vector<GoldEntry>& entries) {
  std::string out;
  for (const GoldEntry& e : entries) {
    out += e.query_id + '\t' + e.relation + '\t' + e.class_id + '\t' + e.filler + '\t' +
           e.doc_id + '\n';
  }
  write_file(path, out);
}

std::vector<ResponseRecord> parse_responses_text(std::string_view text,
                                                 const std::string& origin) {
  std::vector<ResponseRecord> records;
  LineReader reader{text};
  std::string_view line;
  while (reader.next(&line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields = split(line, '\t');
    if (fields.size() != 4 && fields.size() != 10) {
      throw ParseError(origin, reader.line_no,
                       "expected 4 (NIL) or 10 fields, got " + std::to_string(fields.size()));
    }
    ResponseRecord rec;
    rec.query_id = fields[0];
    rec.relation = fields[1];
    rec.run_id = fields[2];
    if (fields.size() == 4) {
      if (fields[3] != kNilMarker)
        throw ParseError(origin, reader.line_no, "4-field row must end with NIL");
      rec.nil = true;
    } else {
      if (fields[3] == kNilMarker)
        throw ParseError(origin, reader.line_no, "NIL row carries filler fields");
      rec.doc_id = fields[3];
      rec.filler = fields[4];
      rec.filler_begin = parse_offset(fields[5], origin, reader.line_no);
      rec.filler_end = parse_offset(fields[6], origin, reader.line_no);
      rec.just_begin = parse_offset(fields[7], origin, reader.line_no);
      rec.just_end = parse_offset(fields[8], origin, reader.line_no);
      if (!parse_double(fields[9], &rec.confidence) || rec.confidence < 0.0 ||
          rec.confidence > 1.0) {
        throw ParseError(origin, reader.line_no, "bad confidence '" + fields[9] + "'");
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<ResponseRecord> parse_responses(const std::string& path) {
  return parse_responses_text(read_file(path), path);
}

std::string serialize_responses(const std::vector<ResponseRecord>& records) {
  std::string out;
  for (const ResponseRecord& rec : records) {
    out += rec.query_id + '\t' + rec.relation + '\t' + rec.run_id + '\t';
    if (rec.nil) {
      out += kNilMarker;
    } else {
      out += rec.doc_id + '\t' + rec.filler + '\t' + std::to_string(rec.filler_begin) +
             '\t' + std::to_string(rec.filler_end) + '\t' + std::to_string(rec.just_begin) +
             '\t' + std::to_string(rec.just_end) + '\t' + fmt_fixed(rec.confidence, 4);
    }
    out.push_back('\n');
  }
  return out;
}

void write_responses(const std::string& path, const std::vector<ResponseRecord>& records) {
  write_file(path, serialize_responses(records));
}

std::vector<KbRecord> parse_kb(const std::string& path) {
  std::string text = read_file(path);
  std::vector<KbRecord> records;
  LineReader reader{text};
  std::string_view line;
  while (reader.next(&line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields = require_fields(line, 3, path, reader.line_no);
    records.push_back(KbRecord{fields[0], fields[1], fields[2]});
  }
  return records;
}

void write_kb(const std::string& path, const std::vector<KbRecord>& records) {
  std::string out;
  for (const KbRecord& r : records) {
    out += r.relation + '\t' + r.subject + '\t' + r.object + '\n';
  }
  write_file(path, out);
}

std::unordered_map<std::string, std::string> parse_relation_mapping(const std::string& path) {
  std::string text = read_file(path);
  std::unordered_map<std::string, std::string> mapping;
  LineReader reader{text};
  std::string_view line;
  while (reader.next(&line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields = require_fields(line, 2, path, reader.line_no);
    mapping[fields[0]] = fields[1];
  }
  return mapping;
}

AnchorLexicon load_anchor_lexicon(const std::string& path) {
  std::string text = read_file(path);
  AnchorLexicon lexicon;
  LineReader reader{text};
  std::string_view line;
  while (reader.next(&line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields = require_fields(line, 3, path, reader.line_no);
    long count = 0;
    if (!parse_long(fields[2], &count) || count <= 0)
      throw ParseError(path, reader.line_no, "anchor count must be positive");
    lexicon.add(fields[0], fields[1], count);
  }
  return lexicon;
}

void write_anchor_lexicon(const std::string& path, const AnchorLexicon& lexicon) {
  std::map<std::string, std::vector<std::pair<std::string, long>>> sorted(
      lexicon.entries.begin(), lexicon.entries.end());
  std::string out;
  for (auto& [anchor, pages] : sorted) {
    std::vector<std::pair<std::string, long>> rows = pages;
    std::sort(rows.begin(), rows.end());
    for (const auto& [page, count] : rows) {
      out += anchor + '\t' + page + '\t' + std::to_string(count) + '\n';
    }
  }
  write_file(path, out);
}

TypeLists load_type_lists(const std::string& path) {
  std::string text = read_file(path);
  TypeLists lists;
  LineReader reader{text};
  std::string_view line;
  while (reader.next(&line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields = require_fields(line, 2, path, reader.line_no);
    if (fields[0].empty() || fields[1].empty())
      throw ParseError(path, reader.line_no, "empty type name or surface form");
    lists.add(fields[0], fields[1]);
  }
  return lists;
}

void write_type_lists(const std::string& path, const TypeLists& lists) {
  std::string out;
  for (const auto& [type, surfaces] : lists.forms) {
    for (const std::string& surface : surfaces) {
      out += type + '\t' + surface + '\n';
    }
  }
  write_file(path, out);
}

std::vector<std::string> load_line_list(const std::string& path) {
  std::string text = read_file(path);
  std::vector<std::string> out;
  LineReader reader{text};
  std::string_view line;
  while (reader.next(&line)) {
    if (!line.empty()) out.emplace_back(line);
  }
  return out;
}

void write_line_list(const std::string& path, const std::vector<std::string>& lines) {
  std::string out;
  for (const std::string& line : lines) {
    out += line + '\n';
  }
  write_file(path, out);
}

std::map<std::string, double> parse_param_file(const std::string& path) {
  std::string text = read_file(path);
  std::map<std::string, double> params;
  LineReader reader{text};
  std::string_view line;
  while (reader.next(&line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields = require_fields(line, 2, path, reader.line_no);
    double value = 0.0;
    if (!parse_double(fields[1], &value))
      throw ParseError(path, reader.line_no, "bad parameter value '" + fields[1] + "'");
    params[fields[0]] = value;
  }
  return params;
}

void write_param_file(const std::string& path, const std::map<std::string, double>& params) {
  std::string out;
  for (const auto& [relation, value] : params) {
    out += relation + '\t' + fmt_double(value) + '\n';
  }
  write_file(path, out);
}

}  // namespace slotfill
