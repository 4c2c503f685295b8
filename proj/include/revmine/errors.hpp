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

#pragma once

#include <stdexcept>
#include <string>

namespace revmine {

/// Base class for every failure raised by the library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Unreadable or unwritable stream.
struct io_error : error {
  using error::error;
};

/// Invalid run configuration (missing contrastive corpora, bad model file, ...).
struct config_error : error {
  using error::error;
};

/// Asked for document frequencies of a corpus with no documents.
struct empty_corpus_error : error {
  using error::error;
};

/// A document with no terms cannot be scored.
struct empty_document_error : error {
  using error::error;
};

/// Bin balancing hit an empty bin.
struct balancing_error : error {
  using error::error;
};

/// Fewer records than required by the requested grouping.
struct insufficient_data_error : error {
  using error::error;
};

/// Out-of-range parameter value.
struct parameter_error : error {
  using error::error;
};

/// No item passed the category filter.
struct empty_category_error : error {
  using error::error;
};

}  // namespace revmine
