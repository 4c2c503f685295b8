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

// Adherence of a document to a terminology: the fraction of its distinct
// terms that belong to the terminology.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "revmine/corpus.hpp"
#include "revmine/errors.hpp"
#include "revmine/terminology.hpp"

namespace revmine {

struct adherence_record {
  std::string review_id;
  std::string item_id;
  std::string category_id;
  double adherence = 0.0;  // matched distinct terms / distinct terms, in [0,1]
  std::optional<double> score;
  segment_kind segment = segment_kind::whole;
  size_t distinct_term_count = 0;
};

/// |term_set ∩ terminology| / |term_set|, over distinct terms.
inline double compute_adherence(const tokenized_doc& doc,
                                const terminology_model& model) {
  if (doc.term_set.empty()) {
    throw empty_document_error("document \"" + doc.doc_id + "\" has no terms");
  }
  size_t matched = 0;
  for (const auto& term : doc.term_set) {
    if (model.contains(term)) ++matched;
  }
  return static_cast<double>(matched) / static_cast<double>(doc.term_set.size());
}

struct score_corpus_result {
  std::vector<adherence_record> records;  // input order preserved
  size_t skipped = 0;  // reviews lacking the segment or tokenizing to empty
};

/// Scores every review's selected segment against the model. Reviews without
/// that segment, or whose text tokenizes to nothing, are skipped and tallied.
inline score_corpus_result score_corpus(std::span<const review> reviews,
                                        const terminology_model& model,
                                        segment_kind segment) {
  score_corpus_result result;
  result.records.reserve(reviews.size());
  for (const auto& r : reviews) {
    const auto& text = r.segment_text(segment);
    if (!text || is_blank(*text)) {
      ++result.skipped;
      continue;
    }
    tokenized_doc doc = tokenize(*text, r.id);
    if (doc.term_set.empty()) {
      ++result.skipped;
      continue;
    }
    adherence_record record;
    record.review_id = r.id;
    record.item_id = r.item_id;
    record.category_id = r.category_id;
    record.adherence = compute_adherence(doc, model);
    record.score = r.score;
    record.segment = segment;
    record.distinct_term_count = doc.term_set.size();
    result.records.push_back(std::move(record));
  }
  return result;
}

}  // namespace revmine
