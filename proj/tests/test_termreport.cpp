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

#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "revmine/report_io.hpp"
#include "revmine/termreport.hpp"

using namespace revmine;

namespace {

terminology_model model_of(std::initializer_list<std::string> terms) {
  terminology_model model;
  model.category_id = "cat";
  for (const auto& t : terms) {
    model.terms.emplace(t, 20.0);
  }
  return model;
}

// An item whose low-adherence reviews say "refund" and whose high-adherence
// reviews say "great". Adherence is driven by how many lexicon words the
// review contains.
std::vector<review_doc> planted_item(size_t n_reviews, const terminology_model& model) {
  std::vector<review_doc> docs;
  docs.reserve(n_reviews);
  for (size_t i = 0; i < n_reviews; ++i) {
    const bool high = i >= n_reviews / 2;
    std::string text = "filler" + std::to_string(i % 7) + " junk" + std::to_string(i % 5);
    if (high) {
      text += " lexa lexb lexc great";
    } else {
      text += " lexa refund";
    }
    tokenized_doc doc = tokenize(text, "r" + std::to_string(i));
    adherence_record record;
    record.review_id = "r" + std::to_string(100 + i);
    record.item_id = "itemX";
    record.category_id = "cat";
    record.adherence = compute_adherence(doc, model);
    record.distinct_term_count = doc.term_set.size();
    docs.push_back({std::move(record), std::move(doc)});
  }
  return docs;
}

}  // namespace

TEST_CASE("bin term weights multiply bin df by the idf log") {
  // Bin: 20 reviews, 5 contain the term; idf corpus: 1000 docs, df 50.
  terminology_model model = model_of({"anchor"});
  std::vector<tokenized_doc> bin;
  frequency_table idf_corpus;
  for (int i = 0; i < 1000; ++i) {
    const bool with_term = i < 50;
    auto doc = tokenize(with_term ? "anchor pad" : "pad only", "d" + std::to_string(i));
    if (i < 20) {
      // The bin is the first 20 documents: 5 with the term, 15 without.
      bin.push_back(tokenize(i < 5 ? "anchor pad" : "pad only", "d" + std::to_string(i)));
    }
    idf_corpus.add_document(doc);
  }
  auto weights = bin_term_weights(bin, idf_corpus, model);
  REQUIRE(weights.size() == 1);
  CHECK(weights.at("anchor") ==
        Catch::Approx(5.0 * std::log(20.0)).margin(1e-12));
}

TEST_CASE("a term present in every idf document weighs zero") {
  terminology_model model = model_of({"everywhere"});
  std::vector<tokenized_doc> bin = {tokenize("everywhere x", "a"),
                                    tokenize("everywhere y", "b")};
  frequency_table idf_corpus;
  idf_corpus.add_document(bin[0]);
  idf_corpus.add_document(bin[1]);
  auto weights = bin_term_weights(bin, idf_corpus, model);
  CHECK(weights.at("everywhere") == 0.0);
}

TEST_CASE("terms outside the terminology are never weighted") {
  terminology_model model = model_of({"kept"});
  std::vector<tokenized_doc> bin = {tokenize("kept spam spam spam", "a")};
  frequency_table idf_corpus;
  idf_corpus.add_document(bin[0]);
  idf_corpus.add_document(tokenize("kept other", "b"));
  auto weights = bin_term_weights(bin, idf_corpus, model);
  CHECK(weights.count("spam") == 0);
  CHECK(weights.count("kept") == 1);
}

TEST_CASE("bin term weights match the brute-force oracle") {
  std::mt19937_64 rng(79);
  for (int iter = 0; iter < 50; ++iter) {
    const size_t n_docs = 2 + rng() % 30;
    std::vector<tokenized_doc> all;
    for (size_t d = 0; d < n_docs; ++d) {
      std::string text;
      const size_t len = 1 + rng() % 10;
      for (size_t t = 0; t < len; ++t) {
        if (t > 0) text += ' ';
        text += "w" + std::to_string(rng() % 25);
      }
      all.push_back(tokenize(text, "d" + std::to_string(d)));
    }
    terminology_model model;
    std::set<std::string> model_terms;
    for (int t = 0; t < 25; ++t) {
      if (rng() % 2) {
        model.terms.emplace("w" + std::to_string(t), 16.0);
        model_terms.insert("w" + std::to_string(t));
      }
    }
    const size_t bin_size = 1 + rng() % n_docs;
    std::vector<tokenized_doc> bin(all.begin(),
                                   all.begin() + static_cast<ptrdiff_t>(bin_size));
    auto idf_corpus = build_frequency_table(all);
    auto weights = bin_term_weights(bin, idf_corpus, model);

    oracle::corpus bin_oracle, all_oracle;
    for (const auto& doc : bin) {
      bin_oracle.push_back({doc.term_set.begin(), doc.term_set.end()});
    }
    for (const auto& doc : all) {
      all_oracle.push_back({doc.term_set.begin(), doc.term_set.end()});
    }
    auto expected = oracle::bin_term_weights(bin_oracle, all_oracle, model_terms);
    REQUIRE(weights.size() == expected.size());
    for (const auto& [term, weight] : expected) {
      REQUIRE(weights.count(term) == 1);
      REQUIRE(weights.at(term) == Catch::Approx(weight).margin(1e-12));
    }
  }
}

TEST_CASE("weights ignore duplicated terms inside a review") {
  terminology_model model = model_of({"dup"});
  std::vector<tokenized_doc> once = {tokenize("dup other", "a")};
  std::vector<tokenized_doc> many = {tokenize("dup dup dup other", "a")};
  frequency_table idf_corpus;
  idf_corpus.add_document(once[0]);
  idf_corpus.add_document(tokenize("pad", "b"));
  CHECK(bin_term_weights(once, idf_corpus, model) ==
        bin_term_weights(many, idf_corpus, model));
}

TEST_CASE("planted positive and negative terms land on the right sides") {
  auto model = model_of({"great", "refund", "lexa", "lexb", "lexc"});
  auto docs = planted_item(40, model);
  auto report = item_discriminating_terms(docs, model, 10, 20);
  CHECK(report.subject_id == "itemX");
  auto side_has = [](const std::vector<term_score>& side, const std::string& term) {
    for (const auto& t : side) {
      if (t.term == term) return true;
    }
    return false;
  };
  CHECK(side_has(report.positive, "great"));
  CHECK(side_has(report.negative, "refund"));
  CHECK_FALSE(side_has(report.positive, "refund"));
  CHECK_FALSE(side_has(report.negative, "great"));
  // "lexa" occurs in every review of both bins, so it is removed from both.
  CHECK_FALSE(side_has(report.positive, "lexa"));
  CHECK_FALSE(side_has(report.negative, "lexa"));
  CHECK(report.positive.size() <= 20);
  CHECK(report.negative.size() <= 20);
}

TEST_CASE("an item with exactly k_bins reviews still produces lists") {
  auto model = model_of({"great", "refund", "lexa", "lexb", "lexc"});
  auto docs = planted_item(10, model);
  auto report = item_discriminating_terms(docs, model, 10, 20);
  CHECK((report.positive.size() + report.negative.size()) > 0);
}

TEST_CASE("too few reviews for an item report names the item") {
  auto model = model_of({"great"});
  auto docs = planted_item(5, model);
  CHECK_THROWS_WITH(item_discriminating_terms(docs, model, 10, 20),
                    Catch::Matchers::ContainsSubstring("itemX"));
}

TEST_CASE("category rollup counts item occurrences and removes shared terms") {
  discriminating_terms a;
  a.subject_id = "a";
  a.positive = {{"comfy", 3.0}, {"both", 2.0}};
  a.negative = {{"broken", 5.0}, {"both", 4.0}};
  discriminating_terms b;
  b.subject_id = "b";
  b.positive = {{"comfy", 1.0}};
  b.negative = {{"broken", 2.0}, {"late", 1.0}};
  discriminating_terms c;
  c.subject_id = "c";
  c.positive = {{"comfy", 9.0}, {"quiet", 2.0}};
  c.negative = {{"late", 3.0}};
  std::vector<discriminating_terms> items = {a, b, c};
  auto rollup = category_discriminating_terms(items, "cat");
  CHECK(rollup.subject_id == "cat");
  REQUIRE(rollup.positive.size() == 2);
  CHECK(rollup.positive[0].term == "comfy");
  CHECK(rollup.positive[0].weight == 3.0);  // found in 3 item lists
  CHECK(rollup.positive[1].term == "quiet");
  REQUIRE(rollup.negative.size() == 2);
  CHECK(rollup.negative[0].term == "broken");
  CHECK(rollup.negative[0].weight == 2.0);
  CHECK(rollup.negative[1].term == "late");
  // "both" sat on both sides of item a, but item-level removal already
  // handles that; here we plant a cross-side term at category level instead.
  discriminating_terms d;
  d.subject_id = "d";
  d.positive = {{"swing", 1.0}};
  discriminating_terms e;
  e.subject_id = "e";
  e.negative = {{"swing", 1.0}};
  std::vector<discriminating_terms> crossed = {d, e};
  auto removed = category_discriminating_terms(crossed, "cat2");
  CHECK(removed.positive.empty());
  CHECK(removed.negative.empty());
}

TEST_CASE("single-item category rollup passes the lists through") {
  discriminating_terms only;
  only.subject_id = "solo";
  only.positive = {{"nice", 4.0}};
  only.negative = {{"bad", 2.0}};
  std::vector<discriminating_terms> items = {only};
  auto rollup = category_discriminating_terms(items, "cat");
  REQUIRE(rollup.positive.size() == 1);
  CHECK(rollup.positive[0].term == "nice");
  CHECK(rollup.positive[0].weight == 1.0);
  REQUIRE(rollup.negative.size() == 1);
  CHECK(rollup.negative[0].term == "bad");
}

TEST_CASE("item reports are deterministic") {
  auto model = model_of({"great", "refund", "lexa", "lexb", "lexc"});
  auto docs = planted_item(30, model);
  auto first = to_stable_string(to_json(item_discriminating_terms(docs, model, 10, 20)));
  auto second = to_stable_string(to_json(item_discriminating_terms(docs, model, 10, 20)));
  CHECK(first == second);
}

TEST_CASE("all reported terms belong to the terminology") {
  auto model = model_of({"great", "refund", "lexa", "lexb", "lexc"});
  auto docs = planted_item(40, model);
  auto report = item_discriminating_terms(docs, model, 10, 20);
  for (const auto& side : {report.positive, report.negative}) {
    for (const auto& t : side) {
      REQUIRE(model.terms.count(t.term) == 1);
      REQUIRE(t.weight >= 0.0);
    }
  }
}
