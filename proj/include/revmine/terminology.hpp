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

// Contrastive single-term terminology extraction: a term belongs to the
// domain terminology when it is frequent enough in the domain corpus and
// its domain frequency dominates its frequency in every generic corpus.

#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>

#include "revmine/corpus.hpp"
#include "revmine/errors.hpp"

namespace revmine {

struct terminology_params {
  /// Minimum fraction of domain documents a candidate term must appear in.
  double theta_freq = 0.005;
  /// Minimum term strength for a candidate to enter the terminology
  /// (inclusive). Higher values keep fewer terms.
  double theta_cutoff = 16.0;
};

inline void validate(const terminology_params& params) {
  if (!(params.theta_freq > 0.0 && params.theta_freq < 1.0)) {
    throw parameter_error("theta_freq must lie in (0,1)");
  }
  if (!(params.theta_cutoff > 1.0)) {
    throw parameter_error("theta_cutoff must be greater than 1");
  }
}

/// The extracted term set for one category, with per-term strength and the
/// parameters that produced it.
struct terminology_model {
  std::string category_id;
  std::map<std::string, double> terms;  // term -> strength, all >= theta_cutoff
  terminology_params params;
  size_t domain_doc_count = 0;
  size_t contrastive_set_count = 0;

  bool contains(const std::string& term) const {
    return terms.find(term) != terms.end();
  }
};

/// Fraction of documents in the table that contain the term.
inline double term_frequency(const frequency_table& table, std::string_view term) {
  if (table.doc_count() == 0) {
    throw empty_corpus_error("term frequency over an empty corpus is undefined");
  }
  return static_cast<double>(table.df(term)) /
         static_cast<double>(table.doc_count());
}

namespace detail {

/// Contrastive frequency with the zero-df policy applied: a term absent from
/// a generic corpus counts as appearing in half a document.
inline double smoothed_tf(const frequency_table& table, std::string_view term) {
  const uint64_t df = table.df(term);
  if (df == 0) {
    return 1.0 / (2.0 * static_cast<double>(table.doc_count()));
  }
  return static_cast<double>(df) / static_cast<double>(table.doc_count());
}

inline void validate_contrastive(std::span<const frequency_table> contrastive) {
  if (contrastive.empty()) {
    throw config_error("at least one contrastive corpus is required");
  }
  for (const auto& table : contrastive) {
    if (table.doc_count() == 0) {
      throw empty_corpus_error("contrastive corpus has no documents");
    }
  }
}

}  // namespace detail

/// Ratio of the term's domain frequency to its minimum frequency across the
/// contrastive corpora. Close to 1 for non-specific words, well above 1 for
/// domain words.
inline double term_strength(const frequency_table& domain,
                            std::span<const frequency_table> contrastive,
                            std::string_view term,
                            const terminology_params& = {}) {
  detail::validate_contrastive(contrastive);
  const double tf_domain = term_frequency(domain, term);
  double min_generic = detail::smoothed_tf(contrastive.front(), term);
  for (size_t i = 1; i < contrastive.size(); ++i) {
    min_generic = std::min(min_generic, detail::smoothed_tf(contrastive[i], term));
  }
  return tf_domain / min_generic;
}

/// Extracts the terminology for one category. Candidates are the terms of the
/// domain table; those below theta_freq are skipped, the rest are kept iff
/// their strength reaches theta_cutoff.
inline terminology_model extract_terminology(
    const frequency_table& domain, std::span<const frequency_table> contrastive,
    const terminology_params& params, std::string category_id) {
  validate(params);
  detail::validate_contrastive(contrastive);
  terminology_model model;
  model.category_id = std::move(category_id);
  model.params = params;
  model.domain_doc_count = domain.doc_count();
  model.contrastive_set_count = contrastive.size();
  if (domain.doc_count() == 0) {
    return model;  // no candidates
  }
  const double doc_count = static_cast<double>(domain.doc_count());
  for (const auto& [term, df] : domain.counts()) {
    const double tf_domain = static_cast<double>(df) / doc_count;
    if (tf_domain < params.theta_freq) continue;
    double min_generic = detail::smoothed_tf(contrastive.front(), term);
    for (size_t i = 1; i < contrastive.size(); ++i) {
      min_generic = std::min(min_generic, detail::smoothed_tf(contrastive[i], term));
    }
    const double strength = tf_domain / min_generic;
    if (strength >= params.theta_cutoff) {
      model.terms.emplace(term, strength);
    }
  }
  return model;
}

}  // namespace revmine
