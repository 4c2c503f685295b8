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

// File formats: adherence CSV, bin-stats CSV, AvgD curve CSV, and the JSON
// forms of terminology models, category reports, item analyses, and term
// reports. JSON objects keep their keys sorted so outputs are byte-stable.

#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "revmine/adherence.hpp"
#include "revmine/aggregation.hpp"
#include "revmine/csv.hpp"
#include "revmine/errors.hpp"
#include "revmine/terminology.hpp"
#include "revmine/termreport.hpp"

namespace revmine {

// --- CSV ---------------------------------------------------------------

inline void write_adherence_csv(std::ostream& out,
                                std::span<const adherence_record> records) {
  out << "review_id,item_id,category_id,segment,score,adherence\n";
  for (const auto& r : records) {
    std::vector<std::string> fields = {
        r.review_id,
        r.item_id,
        r.category_id,
        to_string(r.segment),
        r.score ? format_number(*r.score) : std::string(),
        format_number(r.adherence),
    };
    csv::write_row(out, fields);
  }
}

inline void write_bin_stats_csv(std::ostream& out,
                                std::span<const bin_summary> bins) {
  out << "bin_index,avg_adherence,std_adherence,avg_score,std_score\n";
  for (const auto& b : bins) {
    std::vector<std::string> fields = {
        std::to_string(b.bin_index),
        format_number(b.avg_adherence),
        format_number(b.std_adherence),
        b.avg_score ? format_number(*b.avg_score) : std::string(),
        b.std_score ? format_number(*b.std_score) : std::string(),
    };
    csv::write_row(out, fields);
  }
}

/// One row per k in a K_bins sweep.
struct avgd_point {
  int k_bins = 0;
  double avgd_adh = 0.0;
  std::optional<double> avgd_score;
};

inline void write_avgd_curve_csv(std::ostream& out,
                                 std::span<const avgd_point> points) {
  out << "k_bins,avgd_adh,avgd_score\n";
  for (const auto& p : points) {
    std::vector<std::string> fields = {
        std::to_string(p.k_bins),
        format_number(p.avgd_adh),
        p.avgd_score ? format_number(*p.avgd_score) : std::string(),
    };
    csv::write_row(out, fields);
  }
}

/// Two-column listing of a term report, negative side first.
inline void write_term_report_csv(std::ostream& out,
                                  const discriminating_terms& report) {
  out << "side,term\n";
  for (const auto& t : report.negative) {
    std::vector<std::string> fields = {"negative", t.term};
    csv::write_row(out, fields);
  }
  for (const auto& t : report.positive) {
    std::vector<std::string> fields = {"positive", t.term};
    csv::write_row(out, fields);
  }
}

// --- JSON ---------------------------------------------------------------

inline nlohmann::json to_json(const terminology_model& model) {
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& [term, strength] : model.terms) {
    terms[term] = strength;
  }
  return nlohmann::json{
      {"category", model.category_id},
      {"params",
       {{"theta_freq", model.params.theta_freq},
        {"theta_cutoff", model.params.theta_cutoff}}},
      {"domain_doc_count", model.domain_doc_count},
      {"terms", terms},
  };
}

inline terminology_model terminology_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("category") || !j.contains("terms") ||
      !j.contains("params")) {
    throw config_error("not a terminology model");
  }
  terminology_model model;
  model.category_id = j.at("category").get<std::string>();
  model.params.theta_freq = j.at("params").at("theta_freq").get<double>();
  model.params.theta_cutoff = j.at("params").at("theta_cutoff").get<double>();
  model.domain_doc_count = j.value("domain_doc_count", size_t{0});
  for (const auto& [term, strength] : j.at("terms").items()) {
    model.terms.emplace(term, strength.get<double>());
  }
  return model;
}

namespace detail {

inline nlohmann::json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline nlohmann::json opt_json(const std::optional<bool>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace detail

inline nlohmann::json to_json(const bin_summary& bin) {
  return nlohmann::json{
      {"bin_index", bin.bin_index},
      {"review_count", bin.review_count},
      {"avg_adherence", bin.avg_adherence},
      {"std_adherence", bin.std_adherence},
      {"avg_score", detail::opt_json(bin.avg_score)},
      {"std_score", detail::opt_json(bin.std_score)},
  };
}

inline nlohmann::json to_json(const item_bin_analysis& analysis) {
  nlohmann::json bins = nlohmann::json::array();
  for (const auto& bin : analysis.bins) {
    bins.push_back(to_json(bin));
  }
  return nlohmann::json{
      {"item", analysis.item_id},
      {"k_bins", analysis.k_bins},
      {"window", analysis.window},
      {"review_count", analysis.review_count},
      {"bins", bins},
      {"delta_adh", analysis.delta_adh},
      {"delta_score", detail::opt_json(analysis.delta_score)},
      {"first_last_ok", detail::opt_json(analysis.first_last_ok)},
      {"monotonic_ok", detail::opt_json(analysis.monotonic_ok)},
  };
}

inline nlohmann::json to_json(const category_report& report) {
  return nlohmann::json{
      {"category", report.category_id},
      {"min_rev", report.min_rev},
      {"item_count", report.item_count},
      {"review_count", report.review_count},
      {"pct_first_last", detail::opt_json(report.pct_first_last)},
      {"pct_monotonic", detail::opt_json(report.pct_monotonic)},
      {"avgd_adh", report.avgd_adh},
      {"avgd_score", detail::opt_json(report.avgd_score)},
      {"balanced", report.balanced},
      {"seed", report.seed},
  };
}

inline nlohmann::json to_json(const discriminating_terms& report) {
  auto side = [](const std::vector<term_score>& terms) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : terms) {
      arr.push_back({{"term", t.term}, {"weight", t.weight}});
    }
    return arr;
  };
  return nlohmann::json{
      {"subject", report.subject_id},
      {"k_bins", report.k_bins},
      {"top_k", report.top_k},
      {"positive", side(report.positive)},
      {"negative", side(report.negative)},
  };
}

/// Canonical dump: two-space indentation, sorted keys, trailing newline.
inline std::string to_stable_string(const nlohmann::json& j) {
  return j.dump(2) + "\n";
}

}  // namespace revmine
