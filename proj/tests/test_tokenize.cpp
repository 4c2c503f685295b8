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

#include <algorithm>
#include <random>
#include <regex>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "revmine/corpus.hpp"

using revmine::tokenize;
using revmine::tokenize_text;

namespace {

// Independent segmentation oracle for ASCII inputs: lowercase, then match
// alphanumeric runs that may contain internal apostrophes.
std::vector<std::string> regex_tokenize_ascii(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  static const std::regex token_re("[a-z0-9]+(?:'[a-z0-9]+)*");
  std::vector<std::string> tokens;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), token_re);
       it != std::sregex_iterator(); ++it) {
    tokens.push_back(it->str());
  }
  return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string joined;
  for (const auto& t : tokens) {
    if (!joined.empty()) joined += ' ';
    joined += t;
  }
  return joined;
}

}  // namespace

TEST_CASE("tokenize splits on non-alphanumerics and keeps inner apostrophes") {
  const auto tokens = tokenize_text("Wi-Fi didn't work, 99%");
  CHECK(tokens == std::vector<std::string>{"wi", "fi", "didn't", "work", "99"});
  CHECK(tokens == regex_tokenize_ascii("Wi-Fi didn't work, 99%"));
}

TEST_CASE("tokenize of empty text is empty") {
  CHECK(tokenize_text("").empty());
  CHECK(tokenize("").term_set.empty());
}

TEST_CASE("tokenize case-folds") {
  const auto doc = tokenize("AAA aaa");
  CHECK(doc.tokens == std::vector<std::string>{"aaa", "aaa"});
  CHECK(doc.term_set.size() == 1);
  CHECK(doc.term_set.count("aaa") == 1);
}

TEST_CASE("tokenize handles non-ASCII letters and folds them") {
  CHECK(tokenize_text("Hôtel très PROPRE") ==
        std::vector<std::string>{"hôtel", "très", "propre"});
  CHECK(tokenize_text("ÉTÉ") == std::vector<std::string>{"été"});
  // Typographic apostrophe normalizes to the plain one.
  CHECK(tokenize_text("l’hôtel") == std::vector<std::string>{"l'hôtel"});
}

TEST_CASE("digit-only tokens are kept") {
  CHECK(tokenize_text("rated 99 out of 100!") ==
        std::vector<std::string>{"rated", "99", "out", "of", "100"});
}

TEST_CASE("leading and trailing apostrophes are stripped") {
  CHECK(tokenize_text("'quoted' rock'n'roll '") ==
        std::vector<std::string>{"quoted", "rock'n'roll"});
}

TEST_CASE("malformed UTF-8 bytes act as separators") {
  std::string text = "good";
  text += static_cast<char>(0xFF);
  text += "bad";
  CHECK(tokenize_text(text) == std::vector<std::string>{"good", "bad"});
}

TEST_CASE("tokenizing the space-join of tokens reproduces the term set") {
  std::mt19937_64 rng(7);
  const std::vector<std::string> pieces = {
      "Great",  "wi-fi",   "didn't", "99",    "ROOM!",  "très",
      "propre", "(noisy)", "a.c.",   "It's",  "clean;", "l'hôtel",
  };
  for (int iter = 0; iter < 200; ++iter) {
    std::string text;
    const size_t len = rng() % 12;
    for (size_t i = 0; i < len; ++i) {
      text += pieces[rng() % pieces.size()];
      text += (rng() % 2) ? " " : ", ";
    }
    const auto doc = tokenize(text);
    const auto again = tokenize(join_tokens(doc.tokens));
    CHECK(again.term_set == doc.term_set);
    CHECK(again.tokens == doc.tokens);
  }
}
