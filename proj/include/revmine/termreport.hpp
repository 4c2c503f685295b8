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

// Discriminating-term reports: the terminology terms most characteristic of
// an item's worst (first) and best (last) adherence bins, ranked by
// within-bin tf-idf, with terms common to both sides removed.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "revmine/adherence.hpp"
#include "revmine/aggregation.hpp"
#include "revmine/corpus.hpp"
#include "revmine/errors.hpp"
#include "revmine/terminology.hpp"

namespace revmine {

struct term_score {
  std::string term;
  double weight = 0.0;
};

struct discriminating_terms {
  std::string subject_id;  // item or category
  std::vector<term_score> positive;  // descending weight, ties lexicographic
  std::vector<term_score> negative;
  int k_bins = 10;
  int top_k = 20;
};

/// tf-idf weight per terminology term occurring in the bin: the number of bin
/// reviews containing the term times ln(N / df) over the idf corpus. The idf
/// corpus must contain every bin document.
inline std::map<std::string, double> bin_term_weights(
    std::span<const tokenized_doc> bin_docs, const frequency_table& idf_corpus,
    const terminology_model& model) {
  if (bin_docs.empty()) {
    throw insufficient_data_error("term weights over an empty bin");
  }
  if (idf_corpus.doc_count() == 0) {
    throw empty_corpus_error("idf corpus has no documents");
  }
  std::map<std::string, uint64_t> bin_df;
  for (const auto& doc : bin_docs) {
    for (const auto& term : doc.term_set) {
      if (model.contains(term)) {
        ++bin_df[term];
      }
    }
  }
  const double total = static_cast<double>(idf_corpus.doc_count());
  std::map<std::string, double> weights;
  for (const auto& [term, df] : bin_df) {
    const uint64_t idf_df = idf_corpus.df(term);
    if (idf_df == 0) {
      throw config_error("term \"" + term + "\" missing from the idf corpus");
    }
    weights.emplace(term, static_cast<double>(df) *
                              std::log(total / static_cast<double>(idf_df)));
  }
  return weights;
}

/// One adherence record together with the tokenized text it was scored on.
struct review_doc {
  adherence_record record;
  tokenized_doc doc;
};

namespace detail {

inline std::vector<term_score> rank_terms(const std::map<std::string, double>& weights,
                                          int top_k) {
  std::vector<term_score> ranked;
  ranked.reserve(weights.size());
  for (const auto& [term, weight] : weights) {
    ranked.push_back({term, weight});
  }
  std::sort(ranked.begin(), ranked.end(), [](const term_score& a, const term_score& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.term < b.term;
  });
  if (ranked.size() > static_cast<size_t>(top_k)) {
    ranked.resize(static_cast<size_t>(top_k));
  }
  return ranked;
}

inline void remove_common_terms(std::vector<term_score>& positive,
                                std::vector<term_score>& negative) {
  std::set<std::string> pos_terms;
  for (const auto& t : positive) pos_terms.insert(t.term);
  std::set<std::string> common;
  for (const auto& t : negative) {
    if (pos_terms.count(t.term)) common.insert(t.term);
  }
  auto drop = [&common](std::vector<term_score>& list) {
    std::erase_if(list, [&](const term_score& t) { return common.count(t.term) > 0; });
  };
  drop(positive);
  drop(negative);
}

}  // namespace detail

/// Extracts an item's discriminating terms: split its reviews into k_bins by
/// adherence, weight the terminology terms of the first (negative) and last
/// (positive) bins by tf-idf, keep the top_k of each, and drop the terms
/// appearing on both sides. The idf corpus defaults to all reviews of the
/// item; pass category_idf to weight against the whole category instead.
inline discriminating_terms item_discriminating_terms(
    std::span<const review_doc> item_docs, const terminology_model& model,
    int k_bins = 10, int top_k = 20, const frequency_table* category_idf = nullptr) {
  if (item_docs.empty() || item_docs.size() < static_cast<size_t>(k_bins)) {
    const std::string item =
        item_docs.empty() ? "<unknown>" : item_docs.front().record.item_id;
    throw insufficient_data_error("item \"" + item + "\" has " +
                                  std::to_string(item_docs.size()) +
                                  " reviews, needs " + std::to_string(k_bins));
  }
  std::vector<adherence_record> records;
  records.reserve(item_docs.size());
  for (const auto& rd : item_docs) {
    records.push_back(rd.record);
  }
  const auto partition = partition_by_adherence(records, k_bins);

  frequency_table item_table;
  if (category_idf == nullptr) {
    for (const auto& rd : item_docs) {
      item_table.add_document(rd.doc);
    }
  }
  const frequency_table& idf_corpus = category_idf ? *category_idf : item_table;

  auto collect = [&](const std::vector<size_t>& indices) {
    std::vector<tokenized_doc> docs;
    docs.reserve(indices.size());
    for (size_t i : indices) {
      docs.push_back(item_docs[i].doc);
    }
    return docs;
  };
  const auto negative_docs = collect(partition.front());
  const auto positive_docs = collect(partition.back());

  discriminating_terms result;
  result.subject_id = item_docs.front().record.item_id;
  result.k_bins = k_bins;
  result.top_k = top_k;
  result.negative =
      detail::rank_terms(bin_term_weights(negative_docs, idf_corpus, model), top_k);
  result.positive =
      detail::rank_terms(bin_term_weights(positive_docs, idf_corpus, model), top_k);
  detail::remove_common_terms(result.positive, result.negative);
  return result;
}

/// Rolls per-item reports up to the category: each side ranks terms by the
/// number of items listing them, terms on both sides are removed, and the
/// lists are truncated to top_k.
inline discriminating_terms category_discriminating_terms(
    std::span<const discriminating_terms> items, std::string subject_id) {
  if (items.empty()) {
    throw parameter_error("no item reports to aggregate");
  }
  const int k_bins = items.front().k_bins;
  const int top_k = items.front().top_k;
  std::map<std::string, uint64_t> positive_counts;
  std::map<std::string, uint64_t> negative_counts;
  for (const auto& item : items) {
    for (const auto& t : item.positive) ++positive_counts[t.term];
    for (const auto& t : item.negative) ++negative_counts[t.term];
  }
  auto rank = [](const std::map<std::string, uint64_t>& counts) {
    std::vector<term_score> ranked;
    ranked.reserve(counts.size());
    for (const auto& [term, count] : counts) {
      ranked.push_back({term, static_cast<double>(count)});
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const term_score& a, const term_score& b) {
                if (a.weight != b.weight) return a.weight > b.weight;
                return a.term < b.term;
              });
    return ranked;
  };
  discriminating_terms result;
  result.subject_id = std::move(subject_id);
  result.k_bins = k_bins;
  result.top_k = top_k;
  result.positive = rank(positive_counts);
  result.negative = rank(negative_counts);
  detail::remove_common_terms(result.positive, result.negative);
  auto truncate = [top_k](std::vector<term_score>& list) {
    if (list.size() > static_cast<size_t>(top_k)) {
      list.resize(static_cast<size_t>(top_k));
    }
  };
  truncate(result.positive);
  truncate(result.negative);
  return result;
}

}  // namespace revmine
