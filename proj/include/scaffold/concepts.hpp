// Copyright 2026 The Scaffold Authors
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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "scaffold/text.hpp"

namespace scaffold {

struct ConceptCandidate {
  std::string phrase;  // unigram or space-joined bigram
  double idf = 0.0;

  friend bool operator==(const ConceptCandidate&, const ConceptCandidate&) = default;
};

// Top-k unigrams and bigrams of `reference_doc` by descending idf = ln(N/df)
// over `corpus`. Stopwords are removed before bigrams are formed, so a bigram
// may span a removed stopword. Phrases that never occur in the corpus have no
// defined idf and are skipped. Ties go to the earlier first occurrence, then
// to the lexicographically smaller phrase.
std::vector<ConceptCandidate> extract_concept_candidates(
    std::span<const TokenList> corpus, std::span<const std::string> reference_doc,
    std::size_t k);

}  // namespace scaffold
