// Copyright 2026 The revmine authors
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

// Review and generic-corpus ingestion: JSONL loading, language-agnostic
// tokenization, and document-frequency tables.

#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "json.hpp"

#include "revmine/errors.hpp"
#include "revmine/unicode.hpp"

namespace revmine {

enum class segment_kind { whole, positive, negative };

inline const char* to_string(segment_kind s) {
  switch (s) {
    case segment_kind::whole:
      return "whole";
    case segment_kind::positive:
      return "positive";
    case segment_kind::negative:
      return "negative";
  }
  return "whole";
}

inline std::optional<segment_kind> segment_from_string(std::string_view s) {
  if (s == "whole") return segment_kind::whole;
  if (s == "positive") return segment_kind::positive;
  if (s == "negative") return segment_kind::negative;
  return std::nullopt;
}

inline bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos;
}

/// One review record. `whole` is always present for loaded reviews: when the
/// input carries only positive/negative texts it is their concatenation,
/// positive first, joined by a single space.
struct review {
  std::string id;
  std::string item_id;
  std::string category_id;
  std::optional<double> score;
  std::optional<std::string> whole;
  std::optional<std::string> positive;
  std::optional<std::string> negative;
  std::optional<std::string> language;  // metadata only, never used by algorithms

  const std::optional<std::string>& segment_text(segment_kind s) const {
    switch (s) {
      case segment_kind::positive:
        return positive;
      case segment_kind::negative:
        return negative;
      default:
        return whole;
    }
  }
};

/// A tokenized document: normalized tokens in input order plus the set of
/// distinct terms.
struct tokenized_doc {
  std::string doc_id;
  std::vector<std::string> tokens;
  std::unordered_set<std::string> term_set;
};

namespace detail {

inline bool is_apostrophe(uint32_t cp) {
  return cp == 0x27 || cp == 0x2019;  // ' and the typographic variant
}

}  // namespace detail

/// Splits text into maximal runs of Unicode letters/digits, case-folded.
/// An apostrophe between two alphanumeric characters stays inside its token
/// (normalized to U+0027). Digit-only tokens are kept. No stemming, no
/// stopword list.
inline std::vector<std::string> tokenize_text(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  size_t pos = 0;
  uint32_t cp = 0;
  bool have_cp = false;
  if (pos < text.size()) {
    cp = unicode::decode_utf8(text, pos);
    have_cp = true;
  }
  while (have_cp) {
    uint32_t next = 0;
    bool have_next = false;
    if (pos < text.size()) {
      next = unicode::decode_utf8(text, pos);
      have_next = true;
    }
    if (unicode::is_alnum(cp)) {
      unicode::append_utf8(current, unicode::fold(cp));
    } else if (detail::is_apostrophe(cp) && !current.empty() && have_next &&
               unicode::is_alnum(next)) {
      current.push_back('\'');
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
    cp = next;
    have_cp = have_next;
  }
  if (!current.empty()) {
    tokens.push_back(std::move(current));
  }
  return tokens;
}

inline tokenized_doc tokenize(std::string_view text, std::string doc_id = "") {
  tokenized_doc doc;
  doc.doc_id = std::move(doc_id);
  doc.tokens = tokenize_text(text);
  doc.term_set.reserve(doc.tokens.size());
  for (const auto& t : doc.tokens) {
    doc.term_set.insert(t);
  }
  return doc;
}

namespace detail {

struct string_hash {
  using is_transparent = void;
  size_t operator()(std::string_view sv) const {
    return std::hash<std::string_view>{}(sv);
  }
};

}  // namespace detail

using term_count_map =
    std::unordered_map<std::string, uint64_t, detail::string_hash, std::equal_to<>>;

/// Document-frequency table: for each term, the number of documents that
/// contain it at least once. Tables built from disjoint document sets merge
/// into the table of the union.
class frequency_table {
 public:
  frequency_table() = default;

  void add_document(const tokenized_doc& doc) {
    ++doc_count_;
    for (const auto& term : doc.term_set) {
      ++df_[term];
    }
  }

  void merge(const frequency_table& other) {
    doc_count_ += other.doc_count_;
    for (const auto& [term, count] : other.df_) {
      df_[term] += count;
    }
  }

  static frequency_table build(const std::vector<tokenized_doc>& docs) {
    frequency_table table;
    for (const auto& doc : docs) {
      table.add_document(doc);
    }
    return table;
  }

  size_t doc_count() const { return doc_count_; }

  uint64_t df(std::string_view term) const {
    auto it = df_.find(term);
    return it == df_.end() ? 0 : it->second;
  }

  const term_count_map& counts() const { return df_; }

 private:
  size_t doc_count_ = 0;
  term_count_map df_;
};

inline frequency_table build_frequency_table(const std::vector<tokenized_doc>& docs) {
  return frequency_table::build(docs);
}

/// A skipped input line, with its 1-based line number.
struct load_issue {
  size_t line_no = 0;
  std::string message;
};

struct review_load_result {
  std::vector<review> reviews;
  std::vector<load_issue> issues;  // malformed lines
  size_t dropped_empty = 0;        // records whose segments were all blank
  size_t total_lines = 0;          // non-blank input lines seen
};

enum class review_format { jsonl };

namespace detail {

inline std::optional<std::string> json_string_field(const nlohmann::json& obj,
                                                    const char* key,
                                                    std::string* err) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    *err = std::string("field \"") + key + "\" is not a string";
    return std::nullopt;
  }
  return it->get<std::string>();
}

}  // namespace detail

/// Reads one review per JSON line. Malformed lines are collected as issues and
/// skipped; records whose text is blank in every segment are dropped and
/// tallied. Missing ids are synthesized as "<source_name>:<line>".
inline review_load_result load_reviews(std::istream& in,
                                       std::string_view source_name,
                                       review_format = review_format::jsonl) {
  if (!in.good() && !in.eof()) {
    throw io_error("unreadable review stream: " + std::string(source_name));
  }
  review_load_result result;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    ++result.total_lines;
    auto record = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (record.is_discarded() || !record.is_object()) {
      result.issues.push_back({line_no, "not a JSON object"});
      continue;
    }
    std::string err;
    review r;
    auto item = detail::json_string_field(record, "item", &err);
    auto category = err.empty() ? detail::json_string_field(record, "category", &err)
                                : std::nullopt;
    auto id = err.empty() ? detail::json_string_field(record, "id", &err) : std::nullopt;
    auto text = err.empty() ? detail::json_string_field(record, "text", &err) : std::nullopt;
    auto pos_text =
        err.empty() ? detail::json_string_field(record, "pos_text", &err) : std::nullopt;
    auto neg_text =
        err.empty() ? detail::json_string_field(record, "neg_text", &err) : std::nullopt;
    auto language =
        err.empty() ? detail::json_string_field(record, "language", &err) : std::nullopt;
    if (!err.empty()) {
      result.issues.push_back({line_no, err});
      continue;
    }
    if (!item || !category) {
      result.issues.push_back({line_no, "missing \"item\" or \"category\""});
      continue;
    }
    if (auto it = record.find("score"); it != record.end() && !it->is_null()) {
      if (!it->is_number()) {
        result.issues.push_back({line_no, "field \"score\" is not a number"});
        continue;
      }
      r.score = it->get<double>();
    }
    r.item_id = std::move(*item);
    r.category_id = std::move(*category);
    r.language = std::move(language);
    if (text && !is_blank(*text)) r.whole = std::move(*text);
    if (pos_text && !is_blank(*pos_text)) r.positive = std::move(*pos_text);
    if (neg_text && !is_blank(*neg_text)) r.negative = std::move(*neg_text);
    if (!r.whole) {
      if (r.positive && r.negative) {
        r.whole = *r.positive + " " + *r.negative;
      } else if (r.positive) {
        r.whole = *r.positive;
      } else if (r.negative) {
        r.whole = *r.negative;
      }
    }
    if (!r.whole) {
      ++result.dropped_empty;
      continue;
    }
    r.id = id ? std::move(*id)
              : std::string(source_name) + ":" + std::to_string(line_no);
    if (!seen_ids.insert(r.id).second) {
      result.issues.push_back({line_no, "duplicate review id \"" + r.id + "\""});
      continue;
    }
    result.reviews.push_back(std::move(r));
  }
  if (in.bad()) {
    throw io_error("read failure on review stream: " + std::string(source_name));
  }
  return result;
}

enum class generic_format { plain_lines, jsonl_text_field };

struct generic_load_result {
  std::vector<tokenized_doc> docs;
  std::vector<load_issue> issues;
  size_t total_lines = 0;
};

/// Reads a generic (contrastive) corpus: one document per non-blank line, or
/// one JSON object per line with a "text" field. Document ids are
/// "<source_name>:<line>".
inline generic_load_result load_generic_corpus(std::istream& in,
                                               std::string_view source_name,
                                               generic_format format) {
  if (!in.good() && !in.eof()) {
    throw io_error("unreadable corpus stream: " + std::string(source_name));
  }
  generic_load_result result;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    ++result.total_lines;
    std::string doc_id = std::string(source_name) + ":" + std::to_string(line_no);
    if (format == generic_format::plain_lines) {
      result.docs.push_back(tokenize(line, std::move(doc_id)));
      continue;
    }
    auto record = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (record.is_discarded() || !record.is_object()) {
      result.issues.push_back({line_no, "not a JSON object"});
      continue;
    }
    auto it = record.find("text");
    if (it == record.end() || !it->is_string()) {
      result.issues.push_back({line_no, "missing string field \"text\""});
      continue;
    }
    result.docs.push_back(tokenize(it->get<std::string>(), std::move(doc_id)));
  }
  if (in.bad()) {
    throw io_error("read failure on corpus stream: " + std::string(source_name));
  }
  return result;
}

}  // namespace revmine
