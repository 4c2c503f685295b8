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

// Orchestration helpers composing the corpus, terminology, adherence, and
// aggregation modules into per-category runs.

#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revmine/adherence.hpp"
#include "revmine/aggregation.hpp"
#include "revmine/corpus.hpp"
#include "revmine/terminology.hpp"
#include "revmine/termreport.hpp"

namespace revmine {

inline std::map<std::string, std::vector<const review*>> group_by_category(
    std::span<const review> reviews) {
  std::map<std::string, std::vector<const review*>> groups;
  for (const auto& r : reviews) {
    groups[r.category_id].push_back(&r);
  }
  return groups;
}

/// Tokenizes the chosen segment of every review, one document per review.
/// Reviews lacking the segment are skipped; reviews whose text tokenizes to
/// nothing still count as (empty) documents.
inline std::vector<tokenized_doc> tokenize_segment(
    std::span<const review* const> reviews, segment_kind segment) {
  std::vector<tokenized_doc> docs;
  docs.reserve(reviews.size());
  for (const review* r : reviews) {
    const auto& text = r->segment_text(segment);
    if (!text) continue;
    docs.push_back(tokenize(*text, r->id));
  }
  return docs;
}

/// Document-frequency table over the reviews' whole texts — the domain corpus
/// for terminology extraction.
inline frequency_table domain_table(std::span<const review* const> reviews) {
  frequency_table table;
  for (const review* r : reviews) {
    table.add_document(tokenize(*r->whole, r->id));
  }
  return table;
}

inline score_corpus_result score_corpus(std::span<const review* const> reviews,
                                        const terminology_model& model,
                                        segment_kind segment) {
  score_corpus_result result;
  result.records.reserve(reviews.size());
  for (const review* r : reviews) {
    const auto& text = r->segment_text(segment);
    if (!text || is_blank(*text)) {
      ++result.skipped;
      continue;
    }
    tokenized_doc doc = tokenize(*text, r->id);
    if (doc.term_set.empty()) {
      ++result.skipped;
      continue;
    }
    adherence_record record;
    record.review_id = r->id;
    record.item_id = r->item_id;
    record.category_id = r->category_id;
    record.adherence = compute_adherence(doc, model);
    record.score = r->score;
    record.segment = segment;
    record.distinct_term_count = doc.term_set.size();
    result.records.push_back(std::move(record));
  }
  return result;
}

struct scored_docs_result {
  std::vector<review_doc> docs;
  size_t skipped = 0;
};

/// score_corpus, keeping each record's tokenized text for term reporting.
inline scored_docs_result score_corpus_with_docs(
    std::span<const review* const> reviews, const terminology_model& model,
    segment_kind segment) {
  scored_docs_result result;
  result.docs.reserve(reviews.size());
  for (const review* r : reviews) {
    const auto& text = r->segment_text(segment);
    if (!text || is_blank(*text)) {
      ++result.skipped;
      continue;
    }
    tokenized_doc doc = tokenize(*text, r->id);
    if (doc.term_set.empty()) {
      ++result.skipped;
      continue;
    }
    adherence_record record;
    record.review_id = r->id;
    record.item_id = r->item_id;
    record.category_id = r->category_id;
    record.adherence = compute_adherence(doc, model);
    record.score = r->score;
    record.segment = segment;
    record.distinct_term_count = doc.term_set.size();
    result.docs.push_back({std::move(record), std::move(doc)});
  }
  return result;
}

struct balance_reviews_result {
  std::vector<const review*> reviews;  // bins in ascending order, original order inside
  size_t rejected = 0;                 // unscored or out-of-range reviews
};

/// Groups reviews by score bin and downsamples every bin to the smallest
/// bin's size. The terminology must be rebuilt from the returned subset.
inline balance_reviews_result balance_by_score(
    std::span<const review* const> reviews, score_scheme scheme, uint64_t seed) {
  std::map<int, std::vector<const review*>> bins;
  balance_reviews_result result;
  for (const review* r : reviews) {
    if (!r->score) {
      ++result.rejected;
      continue;
    }
    auto bin = assign_score_bin(*r->score, scheme);
    if (!bin) {
      ++result.rejected;
      continue;
    }
    bins[*bin].push_back(r);
  }
  if (bins.empty()) {
    throw balancing_error("no scored reviews to balance");
  }
  auto balanced = balance_bins(bins, seed);
  for (const auto& [index, bin_reviews] : balanced) {
    result.reviews.insert(result.reviews.end(), bin_reviews.begin(), bin_reviews.end());
  }
  return result;
}

template <typename RecordLike>
std::map<std::string, std::vector<RecordLike>> group_records_by_item(
    std::span<const RecordLike> records) {
  std::map<std::string, std::vector<RecordLike>> groups;
  for (const auto& r : records) {
    if constexpr (requires { r.record.item_id; }) {
      groups[r.record.item_id].push_back(r);
    } else {
      groups[r.item_id].push_back(r);
    }
  }
  return groups;
}

/// Filesystem-safe name for a category or item id. When characters had to be
/// replaced, a short hash of the original id keeps distinct ids distinct.
inline std::string slugify(std::string_view id) {
  std::string slug;
  slug.reserve(id.size());
  bool replaced = false;
  for (char c : id) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_';
    if (keep) {
      slug.push_back(c);
    } else {
      slug.push_back('_');
      replaced = true;
    }
  }
  if (slug.empty() || replaced) {
    uint64_t hash = 1469598103934665603ull;  // FNV-1a
    for (unsigned char c : id) {
      hash ^= c;
      hash *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%08x", static_cast<uint32_t>(hash ^ (hash >> 32)));
    slug += std::string("-") + buf;
  }
  return slug;
}

}  // namespace revmine
