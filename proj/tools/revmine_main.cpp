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

// revmine CLI: terms | adherence | score-bins | adh-bins | report-terms.
// File-based pipeline around the revmine library; outputs are byte-stable
// for identical inputs, configuration, and seed.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "revmine/revmine.hpp"

namespace fs = std::filesystem;

namespace {

struct run_config {
  std::vector<std::string> domain_paths;
  std::vector<std::string> contrastive_paths;
  std::vector<std::string> model_paths;
  double theta_freq = 0.005;
  double theta_cutoff = 16.0;
  std::vector<int> k_bins;
  int window = 2;
  int min_rev = 1;
  int top_k = 20;
  bool balance = false;
  uint64_t seed = 0;
  bool seed_given = false;
  std::string score_scheme = "none";
  std::string segment = "whole";
  std::string idf_base = "item";
  std::string out_dir;
  std::string config_path;
};

void add_common_options(CLI::App* cmd, run_config& cfg, int default_k) {
  cfg.k_bins = {default_k};
  cmd->add_option("--domain", cfg.domain_paths, "Review corpus files (JSON lines)");
  cmd->add_option("--contrastive", cfg.contrastive_paths,
                  "Generic corpus files (plain text, one document per line; "
                  ".jsonl files use their \"text\" field)");
  cmd->add_option("--model", cfg.model_paths,
                  "Precomputed terminology model files (skips extraction)");
  cmd->add_option("--theta-freq", cfg.theta_freq,
                  "Minimum domain term frequency for candidates")
      ->capture_default_str();
  cmd->add_option("--theta-cutoff", cfg.theta_cutoff,
                  "Minimum term strength kept in the terminology")
      ->capture_default_str();
  cmd->add_option("--k-bins", cfg.k_bins,
                  "Number of adherence bins; repeat for a sweep")
      ->capture_default_str();
  cmd->add_option("--window", cfg.window, "Moving-average window for the monotonicity check")
      ->capture_default_str();
  cmd->add_option("--min-rev", cfg.min_rev, "Minimum reviews per item in category reports")
      ->capture_default_str();
  cmd->add_option("--top-k", cfg.top_k, "Terms kept per side in term reports")
      ->capture_default_str();
  cmd->add_flag("--balance", cfg.balance,
                "Downsample score bins to equal size before analysis");
  cmd->add_option("--seed", cfg.seed, "Random seed for balancing");
  cmd->add_option("--score-scheme", cfg.score_scheme, "booking5 | amazon5 | none")
      ->check(CLI::IsMember({"booking5", "amazon5", "none"}))
      ->capture_default_str();
  cmd->add_option("--segment", cfg.segment, "whole | positive | negative | pos-vs-neg")
      ->check(CLI::IsMember({"whole", "positive", "negative", "pos-vs-neg"}))
      ->capture_default_str();
  cmd->add_option("--idf-base", cfg.idf_base,
                  "Corpus for term-report idf: item | category")
      ->check(CLI::IsMember({"item", "category"}))
      ->capture_default_str();
  cmd->add_option("--out", cfg.out_dir, "Output directory")->required();
  cmd->add_option("--config", cfg.config_path,
                  "Configuration file (key=value lines; flags win)");
}

std::string trim_copy(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

/// Applies key=value lines from the config file to options that were not
/// given on the command line.
void apply_config_file(CLI::App* cmd, const run_config& cfg) {
  if (cfg.config_path.empty()) return;
  std::ifstream in(cfg.config_path);
  if (!in) {
    throw revmine::io_error("cannot open config file " + cfg.config_path);
  }
  std::vector<std::pair<CLI::Option*, std::string>> pending;
  std::set<CLI::Option*> from_command_line;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string entry = trim_copy(line);
    if (entry.empty() || entry[0] == '#') continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      throw revmine::config_error(cfg.config_path + ":" + std::to_string(line_no) +
                                  ": expected key=value");
    }
    const std::string key = trim_copy(entry.substr(0, eq));
    const std::string value = trim_copy(entry.substr(eq + 1));
    if (key == "config") {
      throw revmine::config_error("config files cannot nest");
    }
    auto* option = cmd->get_option_no_throw("--" + key);
    if (option == nullptr) {
      throw revmine::config_error(cfg.config_path + ":" + std::to_string(line_no) +
                                  ": unknown key \"" + key + "\"");
    }
    const bool already_pending =
        std::any_of(pending.begin(), pending.end(),
                    [&](const auto& p) { return p.first == option; });
    if (option->count() > 0 && !already_pending) {
      from_command_line.insert(option);  // flags win
      continue;
    }
    if (from_command_line.count(option)) continue;
    pending.emplace_back(option, value);
  }
  std::set<CLI::Option*> touched;
  for (auto& [option, value] : pending) {
    option->add_result(value);
    touched.insert(option);
  }
  for (auto* option : touched) {
    option->run_callback();
  }
}

std::optional<revmine::score_scheme> parse_scheme(const std::string& name) {
  if (name == "booking5") return revmine::score_scheme::booking5;
  if (name == "amazon5") return revmine::score_scheme::amazon5;
  return std::nullopt;
}

revmine::score_scheme require_scheme(const run_config& cfg) {
  auto scheme = parse_scheme(cfg.score_scheme);
  if (!scheme) {
    throw revmine::config_error("this command needs --score-scheme booking5 or amazon5");
  }
  return *scheme;
}

void validate_common(const run_config& cfg) {
  revmine::validate({cfg.theta_freq, cfg.theta_cutoff});
  for (int k : cfg.k_bins) {
    if (k < 2) throw revmine::parameter_error("--k-bins must be at least 2");
  }
  if (cfg.window < 1) throw revmine::parameter_error("--window must be at least 1");
  if (cfg.min_rev < 0) throw revmine::parameter_error("--min-rev must be non-negative");
  if (cfg.top_k < 1) throw revmine::parameter_error("--top-k must be at least 1");
  if (cfg.balance && !cfg.seed_given) {
    throw revmine::config_error("--balance needs an explicit --seed");
  }
  if (cfg.balance && !parse_scheme(cfg.score_scheme)) {
    throw revmine::config_error("--balance needs --score-scheme booking5 or amazon5");
  }
}

revmine::segment_kind single_segment(const run_config& cfg) {
  auto segment = revmine::segment_from_string(cfg.segment);
  if (!segment) {
    throw revmine::config_error("--segment pos-vs-neg is not supported by this command");
  }
  return *segment;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw revmine::io_error("cannot open " + path);
  }
  return in;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw revmine::io_error("cannot write " + path.string());
  }
  out << content;
  if (!out) {
    throw revmine::io_error("write failure on " + path.string());
  }
}

void report_issues(const std::string& path, const std::vector<revmine::load_issue>& issues) {
  constexpr size_t kMaxShown = 20;
  for (size_t i = 0; i < issues.size() && i < kMaxShown; ++i) {
    std::cerr << "warning: " << path << ":" << issues[i].line_no << ": "
              << issues[i].message << "\n";
  }
  if (issues.size() > kMaxShown) {
    std::cerr << "warning: " << path << ": " << (issues.size() - kMaxShown)
              << " further malformed lines\n";
  }
}

std::vector<revmine::review> load_all_reviews(const run_config& cfg) {
  if (cfg.domain_paths.empty()) {
    throw revmine::config_error("at least one --domain file is required");
  }
  std::vector<revmine::review> reviews;
  for (const auto& path : cfg.domain_paths) {
    auto in = open_input(path);
    auto result = revmine::load_reviews(in, fs::path(path).filename().string());
    report_issues(path, result.issues);
    if (result.dropped_empty > 0) {
      std::cerr << "warning: " << path << ": dropped " << result.dropped_empty
                << " records with blank text\n";
    }
    reviews.insert(reviews.end(), std::make_move_iterator(result.reviews.begin()),
                   std::make_move_iterator(result.reviews.end()));
  }
  return reviews;
}

std::vector<revmine::frequency_table> load_contrastive_tables(const run_config& cfg) {
  if (cfg.contrastive_paths.empty()) {
    throw revmine::config_error("at least one --contrastive file is required");
  }
  std::vector<revmine::frequency_table> tables;
  tables.reserve(cfg.contrastive_paths.size());
  for (const auto& path : cfg.contrastive_paths) {
    const auto ext = fs::path(path).extension().string();
    const auto format = (ext == ".jsonl" || ext == ".json")
                            ? revmine::generic_format::jsonl_text_field
                            : revmine::generic_format::plain_lines;
    auto in = open_input(path);
    auto result = revmine::load_generic_corpus(in, fs::path(path).filename().string(),
                                               format);
    report_issues(path, result.issues);
    tables.push_back(revmine::build_frequency_table(result.docs));
  }
  return tables;
}

std::map<std::string, revmine::terminology_model> load_models(const run_config& cfg) {
  std::map<std::string, revmine::terminology_model> models;
  for (const auto& path : cfg.model_paths) {
    auto in = open_input(path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) {
      throw revmine::config_error("invalid terminology model file: " + path);
    }
    auto model = revmine::terminology_from_json(j);
    models[model.category_id] = std::move(model);
  }
  return models;
}

/// Per-category model source: precomputed files when --model was given,
/// otherwise contrastive extraction from the (possibly balanced) reviews.
class model_source {
 public:
  model_source(const run_config& cfg, bool needs_models)
      : cfg_(cfg) {
    if (!cfg.model_paths.empty()) {
      models_ = load_models(cfg);
    } else if (needs_models) {
      tables_ = load_contrastive_tables(cfg);
    }
  }

  revmine::terminology_model for_category(
      const std::string& category,
      std::span<const revmine::review* const> reviews) const {
    if (!models_.empty()) {
      auto it = models_.find(category);
      if (it == models_.end()) {
        throw revmine::config_error("no terminology model for category \"" +
                                    category + "\"");
      }
      return it->second;
    }
    auto table = revmine::domain_table(reviews);
    return revmine::extract_terminology(
        table, tables_, {cfg_.theta_freq, cfg_.theta_cutoff}, category);
  }

 private:
  const run_config& cfg_;
  std::map<std::string, revmine::terminology_model> models_;
  std::vector<revmine::frequency_table> tables_;
};

/// Applies --balance to a category's reviews, or returns them unchanged.
std::vector<const revmine::review*> reviews_for_analysis(
    const run_config& cfg, const std::string& category,
    const std::vector<const revmine::review*>& reviews) {
  if (!cfg.balance) return reviews;
  auto balanced = revmine::balance_by_score(reviews, require_scheme(cfg), cfg.seed);
  if (balanced.rejected > 0) {
    std::cerr << "warning: category " << category << ": " << balanced.rejected
              << " reviews without a usable score were left out of balancing\n";
  }
  return std::move(balanced.reviews);
}

fs::path prepare_out_dir(const run_config& cfg) {
  fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw revmine::io_error("cannot create output directory " + dir.string());
  }
  return dir;
}

// --- subcommands ---------------------------------------------------------

int cmd_terms(const run_config& cfg) {
  validate_common(cfg);
  const auto out_dir = prepare_out_dir(cfg);
  auto reviews = load_all_reviews(cfg);
  auto tables = load_contrastive_tables(cfg);
  auto groups = revmine::group_by_category(reviews);
  if (groups.empty()) {
    std::cout << "no reviews loaded; nothing to extract\n";
    return 0;
  }
  for (const auto& [category, members] : groups) {
    auto used = reviews_for_analysis(cfg, category, members);
    auto table = revmine::domain_table(used);
    auto model = revmine::extract_terminology(
        table, tables, {cfg.theta_freq, cfg.theta_cutoff}, category);
    const auto path = out_dir / ("terminology_" + revmine::slugify(category) + ".json");
    write_file(path, revmine::to_stable_string(revmine::to_json(model)));
    std::cout << "category " << category << ": " << table.counts().size()
              << " candidate terms, " << model.terms.size() << " kept -> "
              << path.string() << "\n";
  }
  return 0;
}

int cmd_adherence(const run_config& cfg) {
  validate_common(cfg);
  const auto out_dir = prepare_out_dir(cfg);
  auto reviews = load_all_reviews(cfg);
  model_source models(cfg, /*needs_models=*/true);
  auto groups = revmine::group_by_category(reviews);
  std::vector<revmine::adherence_record> all_records;
  size_t skipped = 0;
  const bool pos_vs_neg = cfg.segment == "pos-vs-neg";
  for (const auto& [category, members] : groups) {
    auto used = reviews_for_analysis(cfg, category, members);
    auto model = models.for_category(category, used);
    if (pos_vs_neg) {
      for (auto segment : {revmine::segment_kind::positive, revmine::segment_kind::negative}) {
        auto result = revmine::score_corpus(std::span<const revmine::review* const>(used),
                                            model, segment);
        skipped += result.skipped;
        all_records.insert(all_records.end(),
                           std::make_move_iterator(result.records.begin()),
                           std::make_move_iterator(result.records.end()));
      }
    } else {
      auto result = revmine::score_corpus(std::span<const revmine::review* const>(used),
                                          model, single_segment(cfg));
      skipped += result.skipped;
      all_records.insert(all_records.end(),
                         std::make_move_iterator(result.records.begin()),
                         std::make_move_iterator(result.records.end()));
    }
  }
  std::ostringstream csv;
  revmine::write_adherence_csv(csv, all_records);
  const auto path = out_dir / "adherence.csv";
  write_file(path, csv.str());
  std::cout << all_records.size() << " records written to " << path.string();
  if (skipped > 0) std::cout << " (" << skipped << " reviews skipped)";
  std::cout << "\n";
  return 0;
}

int cmd_score_bins(const run_config& cfg) {
  validate_common(cfg);
  const auto scheme = require_scheme(cfg);
  const auto out_dir = prepare_out_dir(cfg);
  auto reviews = load_all_reviews(cfg);
  model_source models(cfg, /*needs_models=*/true);
  auto groups = revmine::group_by_category(reviews);
  const bool pos_vs_neg = cfg.segment == "pos-vs-neg";
  for (const auto& [category, members] : groups) {
    auto used = reviews_for_analysis(cfg, category, members);
    auto model = models.for_category(category, used);
    const auto slug = revmine::slugify(category);
    if (pos_vs_neg) {
      auto pos = revmine::score_corpus(std::span<const revmine::review* const>(used),
                                       model, revmine::segment_kind::positive);
      auto neg = revmine::score_corpus(std::span<const revmine::review* const>(used),
                                       model, revmine::segment_kind::negative);
      auto comparison = revmine::segment_comparison(pos.records, neg.records, scheme);
      for (const auto& [suffix, bins] :
           {std::pair{"positive", &comparison.positive},
            std::pair{"negative", &comparison.negative}}) {
        std::ostringstream csv;
        revmine::write_bin_stats_csv(csv, *bins);
        const auto path = out_dir / ("score_bins_" + slug + "_" + suffix + ".csv");
        write_file(path, csv.str());
        std::cout << "category " << category << " (" << suffix << "): "
                  << bins->size() << " bins -> " << path.string() << "\n";
      }
    } else {
      auto result = revmine::score_corpus(std::span<const revmine::review* const>(used),
                                          model, single_segment(cfg));
      auto stats = revmine::bin_stats_by_score(result.records, scheme);
      std::ostringstream csv;
      revmine::write_bin_stats_csv(csv, stats.bins);
      const auto path = out_dir / ("score_bins_" + slug + ".csv");
      write_file(path, csv.str());
      std::cout << "category " << category << ": " << stats.bins.size() << " bins";
      if (stats.rejected > 0) {
        std::cout << ", " << stats.rejected << " records rejected";
      }
      std::cout << " -> " << path.string() << "\n";
    }
  }
  return 0;
}

int cmd_adh_bins(const run_config& cfg) {
  validate_common(cfg);
  const auto out_dir = prepare_out_dir(cfg);
  auto reviews = load_all_reviews(cfg);
  model_source models(cfg, /*needs_models=*/true);
  auto groups = revmine::group_by_category(reviews);
  const auto segment = single_segment(cfg);
  for (const auto& [category, members] : groups) {
    auto used = reviews_for_analysis(cfg, category, members);
    auto model = models.for_category(category, used);
    auto result = revmine::score_corpus(std::span<const revmine::review* const>(used),
                                        model, segment);
    auto by_item = revmine::group_records_by_item(
        std::span<const revmine::adherence_record>(result.records));
    const auto slug = revmine::slugify(category);
    std::vector<revmine::avgd_point> curve;
    for (int k : cfg.k_bins) {
      std::vector<revmine::item_bin_analysis> analyses;
      size_t too_small = 0;
      for (const auto& [item, records] : by_item) {
        if (records.size() < static_cast<size_t>(k)) {
          ++too_small;
          continue;
        }
        analyses.push_back(revmine::analyze_item(records, k, cfg.window));
      }
      if (too_small > 0) {
        std::cerr << "warning: category " << category << ": " << too_small
                  << " items below " << k << " reviews were skipped\n";
      }
      if (analyses.empty()) {
        std::cerr << "warning: category " << category
                  << ": no item has enough reviews for k_bins=" << k << "\n";
        continue;
      }
      revmine::category_report report;
      try {
        report = revmine::build_category_report(analyses, cfg.min_rev, category,
                                                cfg.balance, cfg.seed);
      } catch (const revmine::empty_category_error& e) {
        std::cerr << "warning: category " << category << ": " << e.what() << "\n";
        continue;
      }
      nlohmann::json items = nlohmann::json::array();
      for (const auto& analysis : analyses) {
        items.push_back(revmine::to_json(analysis));
      }
      const auto report_path = out_dir / ("adh_report_" + slug + "_k" +
                                          std::to_string(k) + ".json");
      const auto items_path = out_dir / ("adh_items_" + slug + "_k" +
                                         std::to_string(k) + ".json");
      write_file(report_path, revmine::to_stable_string(revmine::to_json(report)));
      write_file(items_path, revmine::to_stable_string(items));
      curve.push_back({k, report.avgd_adh, report.avgd_score});
      std::cout << "category " << category << " k_bins=" << k << ": "
                << report.item_count << " items";
      if (report.pct_first_last) {
        std::cout << ", first-last " << revmine::format_number(*report.pct_first_last)
                  << "%";
      }
      if (report.pct_monotonic) {
        std::cout << ", monotonic " << revmine::format_number(*report.pct_monotonic)
                  << "%";
      }
      std::cout << " -> " << report_path.string() << "\n";
    }
    if (!curve.empty()) {
      std::ostringstream csv;
      revmine::write_avgd_curve_csv(csv, curve);
      write_file(out_dir / ("avgd_curve_" + slug + ".csv"), csv.str());
    }
  }
  return 0;
}

int cmd_report_terms(const run_config& cfg) {
  validate_common(cfg);
  const auto out_dir = prepare_out_dir(cfg);
  auto reviews = load_all_reviews(cfg);
  model_source models(cfg, /*needs_models=*/true);
  auto groups = revmine::group_by_category(reviews);
  const auto segment = single_segment(cfg);
  const int k = cfg.k_bins.front();
  for (const auto& [category, members] : groups) {
    auto used = reviews_for_analysis(cfg, category, members);
    auto model = models.for_category(category, used);
    auto scored = revmine::score_corpus_with_docs(
        std::span<const revmine::review* const>(used), model, segment);
    revmine::frequency_table category_idf;
    if (cfg.idf_base == "category") {
      for (const auto& rd : scored.docs) {
        category_idf.add_document(rd.doc);
      }
    }
    auto by_item = revmine::group_records_by_item(
        std::span<const revmine::review_doc>(scored.docs));
    const auto slug = revmine::slugify(category);
    std::vector<revmine::discriminating_terms> item_reports;
    size_t too_small = 0;
    for (const auto& [item, docs] : by_item) {
      if (docs.size() < static_cast<size_t>(k)) {
        ++too_small;
        continue;
      }
      auto report = revmine::item_discriminating_terms(
          docs, model, k, cfg.top_k,
          cfg.idf_base == "category" ? &category_idf : nullptr);
      const auto base = out_dir / ("item_terms_" + slug + "__" + revmine::slugify(item));
      write_file(base.string() + ".json",
                 revmine::to_stable_string(revmine::to_json(report)));
      std::ostringstream csv;
      revmine::write_term_report_csv(csv, report);
      write_file(base.string() + ".csv", csv.str());
      item_reports.push_back(std::move(report));
    }
    if (too_small > 0) {
      std::cerr << "warning: category " << category << ": " << too_small
                << " items below " << k << " reviews were skipped\n";
    }
    if (item_reports.empty()) {
      std::cerr << "warning: category " << category
                << ": no item report could be produced\n";
      continue;
    }
    auto rollup = revmine::category_discriminating_terms(item_reports, category);
    const auto base = out_dir / ("category_terms_" + slug);
    write_file(base.string() + ".json",
               revmine::to_stable_string(revmine::to_json(rollup)));
    std::ostringstream csv;
    revmine::write_term_report_csv(csv, rollup);
    write_file(base.string() + ".csv", csv.str());
    std::cout << "category " << category << ": " << item_reports.size()
              << " item reports -> " << base.string() << ".json\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Aggregates reviews by expressed opinion: extracts a domain "
               "terminology by contrast against generic corpora, scores each "
               "review's adherence to it, and orders/groups reviews from worse "
               "to better opinions."};
  app.require_subcommand(1);

  run_config terms_cfg, adherence_cfg, score_bins_cfg, adh_bins_cfg, report_cfg;
  auto* terms = app.add_subcommand("terms", "Extract per-category terminologies");
  add_common_options(terms, terms_cfg, 3);
  auto* adherence = app.add_subcommand("adherence", "Score reviews against the terminology");
  add_common_options(adherence, adherence_cfg, 3);
  auto* score_bins = app.add_subcommand("score-bins", "Average adherence per score bin");
  add_common_options(score_bins, score_bins_cfg, 3);
  auto* adh_bins = app.add_subcommand(
      "adh-bins", "Adherence-ordered bins with first-last and monotonicity checks");
  add_common_options(adh_bins, adh_bins_cfg, 3);
  auto* report_terms = app.add_subcommand(
      "report-terms", "Discriminating terms of the first and last adherence bins");
  add_common_options(report_terms, report_cfg, 10);

  CLI11_PARSE(app, argc, argv);

  const std::vector<std::tuple<CLI::App*, run_config*, int (*)(const run_config&)>>
      commands = {
          {terms, &terms_cfg, cmd_terms},
          {adherence, &adherence_cfg, cmd_adherence},
          {score_bins, &score_bins_cfg, cmd_score_bins},
          {adh_bins, &adh_bins_cfg, cmd_adh_bins},
          {report_terms, &report_cfg, cmd_report_terms},
      };
  try {
    for (const auto& [cmd, cfg, fn] : commands) {
      if (!cmd->parsed()) continue;
      apply_config_file(cmd, *cfg);
      cfg->seed_given = cmd->get_option("--seed")->count() > 0;
      return fn(*cfg);
    }
  } catch (const revmine::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
