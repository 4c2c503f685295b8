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

// Acceptance suite. Each criterion prints one PASS/FAIL line; the exit code
// is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "revmine/revmine.hpp"
#include "synth.hpp"

using namespace revmine;

namespace {

int g_failures = 0;

class criterion {
 public:
  criterion(int number, std::string name)
      : number_(number), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}

  void require(bool condition, const std::string& detail) {
    if (!condition && failure_.empty()) {
      failure_ = detail;
    }
  }

  double elapsed_seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

  void finish(const std::string& note = "") {
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    if (failure_.empty()) {
      line << "criterion " << number_ << " [PASS] " << name_ << " ("
           << elapsed_seconds() << "s";
      if (!note.empty()) line << "; " << note;
      line << ")";
    } else {
      line << "criterion " << number_ << " [FAIL] " << name_ << ": " << failure_;
      ++g_failures;
    }
    std::cout << line.str() << std::endl;
  }

  void skip(const std::string& reason) {
    std::cout << "criterion " << number_ << " [SKIP] " << name_ << ": " << reason
              << std::endl;
  }

 private:
  int number_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
  std::string failure_;
};

double gaussian(std::mt19937_64& rng) {
  const double u1 = synth::unit_real(rng);
  const double u2 = synth::unit_real(rng);
  return std::sqrt(-2.0 * std::log(1.0 - u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

// --- criterion 1: oracle equivalence ------------------------------------

struct random_instance {
  std::vector<tokenized_doc> domain_docs;
  std::vector<std::vector<tokenized_doc>> generic_docs;
  oracle::corpus domain_oracle;
  std::vector<oracle::corpus> generics_oracle;
};

random_instance make_instance(std::mt19937_64& rng) {
  random_instance inst;
  const size_t vocab = 1 + rng() % 200;
  auto make_docs = [&](size_t max_docs) {
    std::vector<tokenized_doc> docs;
    const size_t n = 1 + rng() % max_docs;
    for (size_t d = 0; d < n; ++d) {
      std::string text;
      const size_t len = 1 + rng() % 20;
      for (size_t t = 0; t < len; ++t) {
        if (t > 0) text += ' ';
        text += "t" + std::to_string(rng() % vocab);
      }
      docs.push_back(tokenize(text, std::to_string(d)));
    }
    return docs;
  };
  inst.domain_docs = make_docs(50);
  const size_t n_generics = 1 + rng() % 3;
  for (size_t g = 0; g < n_generics; ++g) {
    inst.generic_docs.push_back(make_docs(50));
  }
  for (const auto& doc : inst.domain_docs) {
    inst.domain_oracle.push_back({doc.term_set.begin(), doc.term_set.end()});
  }
  for (const auto& docs : inst.generic_docs) {
    oracle::corpus c;
    for (const auto& doc : docs) {
      c.push_back({doc.term_set.begin(), doc.term_set.end()});
    }
    inst.generics_oracle.push_back(std::move(c));
  }
  return inst;
}

void run_criterion_1() {
  criterion crit(1, "oracle equivalence over 200 randomized corpora");
  std::mt19937_64 rng(20260809);
  for (int iter = 0; iter < 200; ++iter) {
    auto inst = make_instance(rng);
    auto domain = build_frequency_table(inst.domain_docs);
    std::vector<frequency_table> generics;
    for (const auto& docs : inst.generic_docs) {
      generics.push_back(build_frequency_table(docs));
    }
    terminology_params params;
    params.theta_freq = 0.001 + 0.4 * static_cast<double>(rng() % 100) / 100.0;
    params.theta_cutoff = 1.5 + static_cast<double>(rng() % 30);

    auto model = extract_terminology(domain, generics, params, "cat");
    auto expected =
        oracle::terminology(inst.domain_oracle, inst.generics_oracle,
                            params.theta_freq, params.theta_cutoff);
    crit.require(model.terms.size() == expected.size(),
                 "terminology size mismatch at iteration " + std::to_string(iter));
    for (const auto& [term, strength] : expected) {
      auto it = model.terms.find(term);
      if (it == model.terms.end()) {
        crit.require(false, "missing term " + term);
        break;
      }
      crit.require(std::fabs(it->second - strength) <= 1e-12,
                   "strength mismatch for " + term);
    }

    // Adherence of every domain document with a non-empty term set.
    std::set<std::string> model_terms;
    for (const auto& [term, strength] : model.terms) model_terms.insert(term);
    for (const auto& doc : inst.domain_docs) {
      if (doc.term_set.empty()) continue;
      const double got = compute_adherence(doc, model);
      const double want = oracle::adherence(
          {doc.term_set.begin(), doc.term_set.end()}, model_terms);
      crit.require(got == want, "adherence mismatch for doc " + doc.doc_id);
    }

    // Term weights of a random bin, idf over the whole domain corpus.
    if (!inst.domain_docs.empty()) {
      const size_t bin_size = 1 + rng() % inst.domain_docs.size();
      std::vector<tokenized_doc> bin(
          inst.domain_docs.begin(),
          inst.domain_docs.begin() + static_cast<ptrdiff_t>(bin_size));
      auto weights = bin_term_weights(bin, domain, model);
      oracle::corpus bin_oracle(inst.domain_oracle.begin(),
                                inst.domain_oracle.begin() +
                                    static_cast<ptrdiff_t>(bin_size));
      auto expected_weights =
          oracle::bin_term_weights(bin_oracle, inst.domain_oracle, model_terms);
      crit.require(weights.size() == expected_weights.size(),
                   "weight map size mismatch at iteration " + std::to_string(iter));
      for (const auto& [term, weight] : expected_weights) {
        auto it = weights.find(term);
        crit.require(it != weights.end() && std::fabs(it->second - weight) <= 1e-12,
                     "weight mismatch for " + term);
      }
    }
  }
  crit.require(crit.elapsed_seconds() < 10.0, "exceeded the 10 s budget");
  crit.finish("200 corpora");
}

// --- criteria 2-4: planted-lexicon pipeline ------------------------------

struct pipeline_run {
  terminology_model model;
  std::vector<adherence_record> records;
};

pipeline_run run_pipeline(const std::vector<const review*>& reviews,
                          const frequency_table& generic_table) {
  pipeline_run run;
  auto domain = domain_table(reviews);
  std::vector<frequency_table> generics = {generic_table};
  run.model = extract_terminology(domain, generics, {}, "synthcat");
  run.records = score_corpus(reviews, run.model, segment_kind::whole).records;
  return run;
}

bool strictly_increasing_bins(const std::vector<bin_summary>& bins, std::string* why) {
  if (bins.size() != 5) {
    *why = "expected 5 bins, got " + std::to_string(bins.size());
    return false;
  }
  for (size_t i = 1; i < bins.size(); ++i) {
    if (!(bins[i].avg_adherence > bins[i - 1].avg_adherence)) {
      *why = "bin " + std::to_string(i + 1) + " does not exceed bin " +
             std::to_string(i);
      return false;
    }
  }
  return true;
}

void run_criteria_2_to_6() {
  synth::options opt;
  auto corpus = synth::make_corpus(opt);
  auto generic_table = build_frequency_table(corpus.generic_docs);
  std::vector<const review*> all;
  all.reserve(corpus.reviews.size());
  for (const auto& r : corpus.reviews) all.push_back(&r);

  std::vector<adherence_record> unbalanced_records;

  {
    criterion crit(2, "planted-lexicon adherence rises strictly across score bins");
    auto unbalanced = run_pipeline(all, generic_table);
    unbalanced_records = unbalanced.records;
    auto stats = bin_stats_by_score(unbalanced.records, score_scheme::amazon5);
    std::string why;
    crit.require(strictly_increasing_bins(stats.bins, &why), "unbalanced: " + why);

    auto balanced_reviews = balance_by_score(all, score_scheme::amazon5, 404);
    auto balanced = run_pipeline(balanced_reviews.reviews, generic_table);
    auto balanced_stats = bin_stats_by_score(balanced.records, score_scheme::amazon5);
    crit.require(strictly_increasing_bins(balanced_stats.bins, &why),
                 "balanced: " + why);
    crit.require(crit.elapsed_seconds() < 30.0, "exceeded the 30 s budget");
    crit.finish("5000 reviews, balanced and unbalanced");
  }

  // Noisy copy of the records, shared by criteria 3 and 4.
  std::vector<adherence_record> noisy_records = unbalanced_records;
  {
    std::mt19937_64 rng(606);
    for (auto& r : noisy_records) {
      r.score = *r.score + gaussian(rng);
    }
  }
  auto analyze_all = [](const std::vector<adherence_record>& records, int k,
                        int window) {
    std::vector<item_bin_analysis> analyses;
    auto by_item =
        group_records_by_item(std::span<const adherence_record>(records));
    for (const auto& [item, item_records] : by_item) {
      analyses.push_back(analyze_item(item_records, k, window));
    }
    return analyses;
  };

  {
    criterion crit(3, "first-last check holds on the 50-item synthetic category");
    auto analyses = analyze_all(unbalanced_records, 3, 2);
    crit.require(analyses.size() == 50, "expected 50 items");
    auto report = build_category_report(analyses, 100, "synthcat");
    crit.require(report.item_count == 50, "items fell below 100 reviews");
    crit.require(report.pct_first_last.has_value() && *report.pct_first_last == 100.0,
                 "pct_first_last below 100");

    auto noisy = analyze_all(noisy_records, 3, 2);
    auto noisy_report = build_category_report(noisy, 100, "synthcat");
    crit.require(noisy_report.pct_first_last.has_value() &&
                     *noisy_report.pct_first_last >= 90.0,
                 "noisy pct_first_last below 90");
    std::ostringstream note;
    note << "clean 100%, noisy " << *noisy_report.pct_first_last << "%";
    crit.finish(note.str());
  }

  {
    criterion crit(4, "monotonicity degrades as k_bins grows on the noisy category");
    auto k3 = build_category_report(analyze_all(noisy_records, 3, 2), 100, "synthcat");
    auto k5 = build_category_report(analyze_all(noisy_records, 5, 2), 100, "synthcat");
    crit.require(k3.pct_monotonic.has_value() && k5.pct_monotonic.has_value(),
                 "monotonic checks not applicable");
    crit.require(*k3.pct_monotonic >= *k5.pct_monotonic,
                 "pct_monotonic rose from k=3 to k=5");
    std::ostringstream note;
    note << "k=3: " << *k3.pct_monotonic << "%, k=5: " << *k5.pct_monotonic << "%";
    crit.finish(note.str());
  }

  {
    criterion crit(5, "balancing equalizes bins and is seed-deterministic");
    auto grouping = group_by_score_bin(unbalanced_records, score_scheme::amazon5);
    size_t min_size = SIZE_MAX;
    for (const auto& [index, bin] : grouping.bins) {
      min_size = std::min(min_size, bin.size());
    }
    for (uint64_t seed : {1ull, 2ull}) {
      auto balanced = balance_bins(grouping.bins, seed);
      for (const auto& [index, bin] : balanced) {
        crit.require(bin.size() == min_size,
                     "bin " + std::to_string(index) + " not at min size");
        std::set<std::string> input_ids;
        for (const auto& r : grouping.bins.at(index)) input_ids.insert(r.review_id);
        for (const auto& r : bin) {
          crit.require(input_ids.count(r.review_id) == 1,
                       "selected id not from the input bin");
        }
      }
    }
    auto first = balance_bins(grouping.bins, 99);
    auto second = balance_bins(grouping.bins, 99);
    for (const auto& [index, bin] : first) {
      crit.require(second.at(index).size() == bin.size(), "same-seed size mismatch");
      for (size_t i = 0; i < bin.size(); ++i) {
        crit.require(second.at(index)[i].review_id == bin[i].review_id,
                     "same-seed selection mismatch");
      }
    }
    crit.finish();
  }

  {
    criterion crit(6, "planted marker terms land on the right report sides");
    synth::options marked = opt;
    marked.plant_marker_terms = true;
    auto marked_corpus = synth::make_corpus(marked);
    auto marked_generic = build_frequency_table(marked_corpus.generic_docs);
    std::vector<const review*> marked_all;
    for (const auto& r : marked_corpus.reviews) marked_all.push_back(&r);
    auto domain = domain_table(marked_all);
    std::vector<frequency_table> generics = {marked_generic};
    auto model = extract_terminology(domain, generics, {}, "synthcat");
    crit.require(model.contains("great"), "\"great\" missing from the terminology");
    crit.require(model.contains("refund"), "\"refund\" missing from the terminology");

    auto scored = score_corpus_with_docs(marked_all, model, segment_kind::whole);
    auto by_item = group_records_by_item(std::span<const review_doc>(scored.docs));
    std::vector<discriminating_terms> item_reports;
    auto side_has = [](const std::vector<term_score>& side, const std::string& term) {
      for (const auto& t : side) {
        if (t.term == term) return true;
      }
      return false;
    };
    for (const auto& [item, docs] : by_item) {
      auto report = item_discriminating_terms(docs, model, 10, 20);
      crit.require(side_has(report.positive, "great"),
                   "item " + item + ": \"great\" not on the positive side");
      crit.require(side_has(report.negative, "refund"),
                   "item " + item + ": \"refund\" not on the negative side");
      crit.require(report.positive.size() <= 20 && report.negative.size() <= 20,
                   "item " + item + ": list longer than top 20");
      std::set<std::string> pos, neg;
      for (const auto& t : report.positive) pos.insert(t.term);
      for (const auto& t : report.negative) neg.insert(t.term);
      for (const auto& t : pos) {
        crit.require(neg.count(t) == 0, "item " + item + ": sides overlap on " + t);
      }
      item_reports.push_back(std::move(report));
    }
    auto rollup = category_discriminating_terms(item_reports, "synthcat");
    crit.require(side_has(rollup.positive, "great"),
                 "category: \"great\" not on the positive side");
    crit.require(side_has(rollup.negative, "refund"),
                 "category: \"refund\" not on the negative side");
    crit.require(rollup.positive.size() <= 20 && rollup.negative.size() <= 20,
                 "category list longer than top 20");
    crit.finish(std::to_string(item_reports.size()) + " items");
  }
}

// --- criterion 7: invariant property suite -------------------------------

void run_criterion_7() {
  criterion crit(7, "invariant suite over randomized inputs");
  std::mt19937_64 rng(141);
  size_t cases = 0;

  // Adherence stays within [0,1].
  for (int iter = 0; iter < 300; ++iter, ++cases) {
    std::string text;
    const size_t len = 1 + rng() % 25;
    for (size_t i = 0; i < len; ++i) {
      if (i > 0) text += ' ';
      text += "w" + std::to_string(rng() % 40);
    }
    auto doc = tokenize(text);
    terminology_model model;
    for (int t = 0; t < 40; ++t) {
      if (rng() % 2) model.terms.emplace("w" + std::to_string(t), 16.0);
    }
    const double a = compute_adherence(doc, model);
    crit.require(a >= 0.0 && a <= 1.0, "adherence out of range");
  }

  // Raising a threshold shrinks the terminology to a subset.
  for (int iter = 0; iter < 100; ++iter, ++cases) {
    auto inst = make_instance(rng);
    auto domain = build_frequency_table(inst.domain_docs);
    std::vector<frequency_table> generics;
    for (const auto& docs : inst.generic_docs) {
      generics.push_back(build_frequency_table(docs));
    }
    terminology_params loose{0.01, 1.5};
    terminology_params tight_cutoff{0.01, 1.5 + static_cast<double>(rng() % 20)};
    terminology_params tight_freq{
        0.01 + 0.5 * static_cast<double>(rng() % 100) / 100.0, 1.5};
    auto base = extract_terminology(domain, generics, loose, "c");
    for (const auto& params : {tight_cutoff, tight_freq}) {
      auto tightened = extract_terminology(domain, generics, params, "c");
      for (const auto& [term, strength] : tightened.terms) {
        crit.require(base.terms.count(term) == 1,
                     "tightened terminology is not a subset");
      }
    }
  }

  // Delta_adh is never negative and bins partition the records exactly.
  for (int iter = 0; iter < 300; ++iter, ++cases) {
    const int k = 2 + static_cast<int>(rng() % 6);
    const size_t n = static_cast<size_t>(k) + rng() % 80;
    std::vector<adherence_record> records;
    for (size_t i = 0; i < n; ++i) {
      adherence_record r;
      r.review_id = "r" + std::to_string(i);
      r.item_id = "item";
      r.adherence = static_cast<double>(rng() % 1000) / 1000.0;
      if (rng() % 2) r.score = static_cast<double>(rng() % 5 + 1);
      r.distinct_term_count = 1;
      records.push_back(std::move(r));
    }
    auto analysis = split_by_adherence(records, k);
    crit.require(analysis.delta_adh >= 0.0, "delta_adh negative");
    auto partition = partition_by_adherence(records, k);
    std::set<size_t> seen;
    size_t total = 0;
    for (const auto& bin : partition) {
      total += bin.size();
      for (size_t i : bin) {
        crit.require(seen.insert(i).second, "partition bins overlap");
      }
    }
    crit.require(total == n, "partition loses records");
  }

  // moving_average(window=1) is the identity.
  for (int iter = 0; iter < 300; ++iter, ++cases) {
    std::vector<double> values;
    const size_t n = 1 + rng() % 40;
    for (size_t i = 0; i < n; ++i) {
      values.push_back(static_cast<double>(rng() % 10000) / 100.0);
    }
    crit.require(moving_average(values, 1) == values, "window-1 smoothing changed data");
  }

  crit.require(cases >= 1000, "fewer than 1000 randomized cases");
  crit.finish(std::to_string(cases) + " cases");
}

// --- criterion 8: optional public-data smoke test -------------------------

void run_criterion_8() {
  criterion crit(8, "public Amazon subset: bin-5 adherence exceeds bin-1 by 0.02");
  const char* reviews_path = std::getenv("REVMINE_AMAZON_JSONL");
  const char* contrastive_path = std::getenv("REVMINE_CONTRASTIVE");
  if (reviews_path == nullptr || contrastive_path == nullptr) {
    crit.skip(
        "set REVMINE_AMAZON_JSONL and REVMINE_CONTRASTIVE to run (optional)");
    return;
  }
  std::ifstream reviews_in(reviews_path, std::ios::binary);
  std::ifstream contrastive_in(contrastive_path, std::ios::binary);
  if (!reviews_in || !contrastive_in) {
    crit.require(false, "cannot open the supplied dataset files");
    crit.finish();
    return;
  }
  auto loaded = load_reviews(reviews_in, reviews_path);
  auto generic = load_generic_corpus(contrastive_in, contrastive_path,
                                     generic_format::plain_lines);
  std::vector<frequency_table> generics = {build_frequency_table(generic.docs)};
  auto groups = group_by_category(loaded.reviews);
  std::ostringstream note;
  for (const auto& [category, members] : groups) {
    auto domain = domain_table(members);
    auto model = extract_terminology(domain, generics, {}, category);
    auto records = score_corpus(members, model, segment_kind::whole).records;
    auto stats = bin_stats_by_score(records, score_scheme::amazon5);
    if (stats.bins.size() < 2) {
      crit.require(false, category + ": fewer than 2 populated score bins");
      continue;
    }
    const auto& first = stats.bins.front();
    const auto& last = stats.bins.back();
    crit.require(first.bin_index == 1 && last.bin_index == 5,
                 category + ": bins 1 and 5 not both populated");
    crit.require(last.avg_adherence - first.avg_adherence >= 0.02,
                 category + ": bin-5 minus bin-1 gap below 0.02");
    note << category << " " << (last.avg_adherence - first.avg_adherence) << "; ";
  }
  crit.finish(note.str());
}

// --- criterion 9: throughput ----------------------------------------------

void run_criterion_9() {
  synth::options opt;
  opt.bin_counts = {20000, 20000, 20000, 20000, 20000};
  opt.item_count = 100;
  opt.seed = 909;
  auto corpus = synth::make_corpus(opt);
  auto generic_table = build_frequency_table(corpus.generic_docs);
  std::vector<const review*> all;
  all.reserve(corpus.reviews.size());
  for (const auto& r : corpus.reviews) all.push_back(&r);

  criterion crit(9, "extraction plus scoring of 100k reviews under 60 s");
  auto domain = domain_table(all);
  std::vector<frequency_table> generics = {generic_table};
  auto model = extract_terminology(domain, generics, {}, "synthcat");
  auto result = score_corpus(all, model, segment_kind::whole);
  crit.require(result.records.size() == 100000, "expected 100000 records");
  crit.require(crit.elapsed_seconds() < 60.0, "exceeded the 60 s budget");
  std::ostringstream note;
  note << model.terms.size() << " terms";
  crit.finish(note.str());
}

}  // namespace

int main() {
  try {
    run_criterion_1();
    run_criteria_2_to_6();
    run_criterion_7();
    run_criterion_8();
    run_criterion_9();
  } catch (const std::exception& e) {
    std::cout << "acceptance suite aborted: " << e.what() << std::endl;
    return 1;
  }
  if (g_failures == 0) {
    std::cout << "all criteria passed" << std::endl;
  } else {
    std::cout << g_failures << " criteria failed" << std::endl;
  }
  return g_failures;
}
