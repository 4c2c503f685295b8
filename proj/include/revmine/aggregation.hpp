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

// Grouping and validation analytics: score bins, balanced undersampling,
// adherence-ordered binning, first-last / monotonicity checks, and
// category-level difference averages.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "revmine/adherence.hpp"
#include "revmine/errors.hpp"

namespace revmine {

enum class score_scheme { booking5, amazon5 };

inline const char* to_string(score_scheme s) {
  return s == score_scheme::booking5 ? "booking5" : "amazon5";
}

/// Maps a score to its 1-based bin, or nullopt for out-of-range scores
/// (rejected and tallied by callers). booking5 uses the inflated-scale edges
/// very poor <= 3 < poor <= 5 < okay <= 7 < good <= 9 < excellent over
/// [2.5, 10]; amazon5 accepts the integers 1..5.
inline std::optional<int> assign_score_bin(double score, score_scheme scheme) {
  if (scheme == score_scheme::booking5) {
    if (score < 2.5 || score > 10.0) return std::nullopt;
    if (score <= 3.0) return 1;
    if (score <= 5.0) return 2;
    if (score <= 7.0) return 3;
    if (score <= 9.0) return 4;
    return 5;
  }
  if (score < 1.0 || score > 5.0 || score != std::floor(score)) return std::nullopt;
  return static_cast<int>(score);
}

struct bin_summary {
  int bin_index = 0;  // 1-based
  size_t review_count = 0;
  double avg_adherence = 0.0;
  double std_adherence = 0.0;  // population standard deviation
  std::optional<double> avg_score;  // over the scored records of the bin
  std::optional<double> std_score;
};

namespace detail {

inline std::pair<double, double> mean_and_population_std(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double sq = 0.0;
  for (double v : values) {
    sq += (v - mean) * (v - mean);
  }
  return {mean, std::sqrt(sq / n)};
}

}  // namespace detail

/// Mean and population standard deviation of adherence (and of score, over
/// the records that carry one) for a single bin.
inline bin_summary summarize_bin(std::span<const adherence_record> records,
                                 int bin_index) {
  bin_summary summary;
  summary.bin_index = bin_index;
  summary.review_count = records.size();
  std::vector<double> adh;
  std::vector<double> scores;
  adh.reserve(records.size());
  for (const auto& r : records) {
    adh.push_back(r.adherence);
    if (r.score) scores.push_back(*r.score);
  }
  auto [mean, stddev] = detail::mean_and_population_std(adh);
  summary.avg_adherence = mean;
  summary.std_adherence = stddev;
  if (!scores.empty()) {
    auto [smean, sstd] = detail::mean_and_population_std(scores);
    summary.avg_score = smean;
    summary.std_score = sstd;
  }
  return summary;
}

/// Groups records into 1..5 by score bin. Unscored and out-of-range records
/// are rejected and tallied, not thrown.
struct score_grouping {
  std::map<int, std::vector<adherence_record>> bins;
  size_t rejected = 0;
};

inline score_grouping group_by_score_bin(std::span<const adherence_record> records,
                                         score_scheme scheme) {
  score_grouping grouping;
  for (const auto& r : records) {
    if (!r.score) {
      ++grouping.rejected;
      continue;
    }
    auto bin = assign_score_bin(*r.score, scheme);
    if (!bin) {
      ++grouping.rejected;
      continue;
    }
    grouping.bins[*bin].push_back(r);
  }
  return grouping;
}

struct score_bin_stats {
  std::vector<bin_summary> bins;  // ascending bin index, populated bins only
  size_t rejected = 0;
};

inline score_bin_stats bin_stats_by_score(std::span<const adherence_record> records,
                                          score_scheme scheme) {
  auto grouping = group_by_score_bin(records, scheme);
  score_bin_stats stats;
  stats.rejected = grouping.rejected;
  for (const auto& [index, bin_records] : grouping.bins) {
    stats.bins.push_back(summarize_bin(bin_records, index));
  }
  return stats;
}

/// Per-score-bin adherence averages for positive and negative review
/// segments, side by side.
struct segment_bin_comparison {
  std::vector<bin_summary> positive;
  std::vector<bin_summary> negative;
  size_t rejected_positive = 0;
  size_t rejected_negative = 0;
};

inline segment_bin_comparison segment_comparison(
    std::span<const adherence_record> positive_records,
    std::span<const adherence_record> negative_records, score_scheme scheme) {
  segment_bin_comparison comparison;
  auto pos = bin_stats_by_score(positive_records, scheme);
  auto neg = bin_stats_by_score(negative_records, scheme);
  comparison.positive = std::move(pos.bins);
  comparison.negative = std::move(neg.bins);
  comparison.rejected_positive = pos.rejected;
  comparison.rejected_negative = neg.rejected;
  return comparison;
}

namespace detail {

inline uint64_t bounded_rand(std::mt19937_64& rng, uint64_t bound) {
  // Lemire's multiply-shift; unbiased enough for undersampling and fully
  // reproducible across platforms.
  const unsigned __int128 product =
      static_cast<unsigned __int128>(rng()) * static_cast<unsigned __int128>(bound);
  return static_cast<uint64_t>(product >> 64);
}

}  // namespace detail

/// Downsamples every bin, uniformly at random without replacement, to the
/// size of the smallest bin. Deterministic for a fixed seed; relative record
/// order inside each bin is preserved.
template <typename Record>
std::map<int, std::vector<Record>> balance_bins(
    const std::map<int, std::vector<Record>>& bins, uint64_t seed) {
  if (bins.empty()) {
    throw balancing_error("no bins to balance");
  }
  size_t min_size = SIZE_MAX;
  for (const auto& [index, records] : bins) {
    if (records.empty()) {
      throw balancing_error("bin " + std::to_string(index) + " is empty");
    }
    min_size = std::min(min_size, records.size());
  }
  std::mt19937_64 rng(seed);
  std::map<int, std::vector<Record>> balanced;
  for (const auto& [index, records] : bins) {
    std::vector<size_t> idx(records.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    for (size_t i = 0; i < min_size; ++i) {
      const size_t j = i + detail::bounded_rand(rng, idx.size() - i);
      std::swap(idx[i], idx[j]);
    }
    idx.resize(min_size);
    std::sort(idx.begin(), idx.end());
    auto& out = balanced[index];
    out.reserve(min_size);
    for (size_t i : idx) {
      out.push_back(records[i]);
    }
  }
  return balanced;
}

/// One item's reviews split into adherence-ordered equal bins, with the
/// first-to-last differences and validation verdicts.
struct item_bin_analysis {
  std::string item_id;
  int k_bins = 0;
  std::vector<bin_summary> bins;  // ascending adherence
  double delta_adh = 0.0;         // last avg adherence - first
  std::optional<double> delta_score;
  std::optional<bool> first_last_ok;
  std::optional<bool> monotonic_ok;
  int window = 2;
  size_t review_count = 0;
};

/// Sorts record indices by ascending adherence (ties by review id) and cuts
/// them into k bins as equal as possible: with n = q*k + r, the first r bins
/// take q+1 records.
inline std::vector<std::vector<size_t>> partition_by_adherence(
    std::span<const adherence_record> records, int k_bins) {
  if (k_bins < 2) {
    throw parameter_error("k_bins must be at least 2");
  }
  if (records.size() < static_cast<size_t>(k_bins)) {
    throw insufficient_data_error(
        "need at least " + std::to_string(k_bins) + " records, got " +
        std::to_string(records.size()));
  }
  std::vector<size_t> order(records.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (records[a].adherence != records[b].adherence) {
      return records[a].adherence < records[b].adherence;
    }
    return records[a].review_id < records[b].review_id;
  });
  const size_t n = records.size();
  const size_t k = static_cast<size_t>(k_bins);
  const size_t quotient = n / k;
  const size_t remainder = n % k;
  std::vector<std::vector<size_t>> partition(k);
  size_t next = 0;
  for (size_t b = 0; b < k; ++b) {
    const size_t size = quotient + (b < remainder ? 1 : 0);
    partition[b].assign(order.begin() + static_cast<ptrdiff_t>(next),
                        order.begin() + static_cast<ptrdiff_t>(next + size));
    next += size;
  }
  return partition;
}

inline std::vector<bin_summary> bin_stats_by_adherence(
    std::span<const adherence_record> records, int k_bins);

inline item_bin_analysis split_by_adherence(std::span<const adherence_record> records,
                                            int k_bins) {
  auto partition = partition_by_adherence(records, k_bins);
  item_bin_analysis analysis;
  analysis.item_id = records.empty() ? "" : records.front().item_id;
  analysis.k_bins = k_bins;
  analysis.review_count = records.size();
  analysis.bins.reserve(partition.size());
  for (size_t b = 0; b < partition.size(); ++b) {
    std::vector<adherence_record> bin_records;
    bin_records.reserve(partition[b].size());
    for (size_t i : partition[b]) {
      bin_records.push_back(records[i]);
    }
    analysis.bins.push_back(summarize_bin(bin_records, static_cast<int>(b + 1)));
  }
  analysis.delta_adh =
      analysis.bins.back().avg_adherence - analysis.bins.front().avg_adherence;
  if (analysis.bins.front().avg_score && analysis.bins.back().avg_score) {
    analysis.delta_score =
        *analysis.bins.back().avg_score - *analysis.bins.front().avg_score;
  }
  return analysis;
}

inline std::vector<bin_summary> bin_stats_by_adherence(
    std::span<const adherence_record> records, int k_bins) {
  return split_by_adherence(records, k_bins).bins;
}

namespace detail {

inline bool scores_present(const item_bin_analysis& analysis) {
  return std::all_of(analysis.bins.begin(), analysis.bins.end(),
                     [](const bin_summary& b) { return b.avg_score.has_value(); });
}

}  // namespace detail

/// True iff the last bin's average score is at least the first bin's.
/// Not applicable (nullopt) when any bin lacks scores.
inline std::optional<bool> first_last_check(const item_bin_analysis& analysis) {
  if (!detail::scores_present(analysis)) return std::nullopt;
  return *analysis.bins.back().avg_score >= *analysis.bins.front().avg_score;
}

/// Trailing moving average: element i is the mean of the last min(i+1, window)
/// values, so the sequence keeps its length and its first element.
inline std::vector<double> moving_average(std::span<const double> values, int window) {
  if (window < 1) {
    throw parameter_error("moving average window must be at least 1");
  }
  std::vector<double> smoothed;
  smoothed.reserve(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    const size_t span = std::min(static_cast<size_t>(window), i + 1);
    double sum = 0.0;
    for (size_t j = i + 1 - span; j <= i; ++j) {
      sum += values[j];
    }
    smoothed.push_back(sum / static_cast<double>(span));
  }
  return smoothed;
}

/// True iff the smoothed per-bin average scores never decrease. Ties pass.
inline std::optional<bool> monotonic_check(const item_bin_analysis& analysis,
                                           int window) {
  if (!detail::scores_present(analysis)) return std::nullopt;
  std::vector<double> scores;
  scores.reserve(analysis.bins.size());
  for (const auto& bin : analysis.bins) {
    scores.push_back(*bin.avg_score);
  }
  const auto smoothed = moving_average(scores, window);
  for (size_t i = 1; i < smoothed.size(); ++i) {
    if (smoothed[i] < smoothed[i - 1]) return false;
  }
  return true;
}

/// split_by_adherence with both validation checks filled in.
inline item_bin_analysis analyze_item(std::span<const adherence_record> records,
                                      int k_bins, int window = 2) {
  item_bin_analysis analysis = split_by_adherence(records, k_bins);
  analysis.window = window;
  analysis.first_last_ok = first_last_check(analysis);
  analysis.monotonic_ok = monotonic_check(analysis, window);
  return analysis;
}

/// Category-level rollup: share of items passing each check and the average
/// first-to-last differences.
struct category_report {
  std::string category_id;
  int min_rev = 0;
  size_t item_count = 0;    // items that passed the min_rev filter
  size_t review_count = 0;  // reviews inside those items
  std::optional<double> pct_first_last;  // 0..100, over items with scores
  std::optional<double> pct_monotonic;
  double avgd_adh = 0.0;
  std::optional<double> avgd_score;
  bool balanced = false;
  uint64_t seed = 0;
};

inline category_report build_category_report(std::span<const item_bin_analysis> items,
                                             int min_rev, std::string category_id,
                                             bool balanced = false, uint64_t seed = 0) {
  category_report report;
  report.category_id = std::move(category_id);
  report.min_rev = min_rev;
  report.balanced = balanced;
  report.seed = seed;
  size_t first_last_applicable = 0;
  size_t first_last_true = 0;
  size_t monotonic_applicable = 0;
  size_t monotonic_true = 0;
  double delta_adh_sum = 0.0;
  double delta_score_sum = 0.0;
  size_t delta_score_count = 0;
  for (const auto& item : items) {
    if (item.review_count < static_cast<size_t>(min_rev)) continue;
    ++report.item_count;
    report.review_count += item.review_count;
    delta_adh_sum += item.delta_adh;
    if (item.delta_score) {
      delta_score_sum += *item.delta_score;
      ++delta_score_count;
    }
    if (item.first_last_ok) {
      ++first_last_applicable;
      if (*item.first_last_ok) ++first_last_true;
    }
    if (item.monotonic_ok) {
      ++monotonic_applicable;
      if (*item.monotonic_ok) ++monotonic_true;
    }
  }
  if (report.item_count == 0) {
    throw empty_category_error("no item has at least " + std::to_string(min_rev) +
                               " reviews");
  }
  report.avgd_adh = delta_adh_sum / static_cast<double>(report.item_count);
  if (delta_score_count > 0) {
    report.avgd_score = delta_score_sum / static_cast<double>(delta_score_count);
  }
  if (first_last_applicable > 0) {
    report.pct_first_last =
        100.0 * static_cast<double>(first_last_true) /
        static_cast<double>(first_last_applicable);
  }
  if (monotonic_applicable > 0) {
    report.pct_monotonic =
        100.0 * static_cast<double>(monotonic_true) /
        static_cast<double>(monotonic_applicable);
  }
  return report;
}

}  // namespace revmine
