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

#include "scaffold/concepts.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "scaffold/error.hpp"

namespace scaffold {
namespace {

TokenList content_tokens(std::span<const std::string> tokens) {
  TokenList out;
  for (const auto& t : tokens) {
    if (!t.empty() && !is_stopword(t)) out.push_back(t);
  }
  return out;
}

// Calls fn(phrase) for every unigram and bigram of an already filtered list.
template <typename Fn>
void for_each_phrase(const TokenList& tokens, Fn&& fn) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    fn(i, tokens[i]);
    if (i + 1 < tokens.size()) fn(i, tokens[i] + " " + tokens[i + 1]);
  }
}

}  // namespace

std::vector<ConceptCandidate> extract_concept_candidates(
    std::span<const TokenList> corpus, std::span<const std::string> reference_doc,
    std::size_t k) {
  if (corpus.empty()) throw ValidationError("concept extraction needs a non-empty corpus");
  if (k == 0) throw ValidationError("k must be at least 1");

  struct Entry {
    std::size_t first = 0;
    std::size_t df = 0;
  };
  std::unordered_map<std::string, Entry> phrases;
  std::vector<std::string> order;
  for_each_phrase(content_tokens(reference_doc),
                  [&](std::size_t pos, std::string phrase) {
                    auto [it, inserted] = phrases.try_emplace(phrase, Entry{pos, 0});
                    if (inserted) order.push_back(std::move(phrase));
                  });
  if (phrases.empty()) return {};

  for (const auto& doc : corpus) {
    std::unordered_set<std::string> seen;
    for_each_phrase(content_tokens(doc), [&](std::size_t, std::string phrase) {
      auto it = phrases.find(phrase);
      if (it != phrases.end() && seen.insert(std::move(phrase)).second) {
        ++it->second.df;
      }
    });
  }

  const double n = static_cast<double>(corpus.size());
  std::vector<std::pair<ConceptCandidate, std::size_t>> ranked;
  for (const auto& phrase : order) {
    const Entry& e = phrases.at(phrase);
    if (e.df == 0) continue;
    ranked.push_back({{phrase, std::log(n / static_cast<double>(e.df))}, e.first});
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first.idf != b.first.idf) return a.first.idf > b.first.idf;
    if (a.second != b.second) return a.second < b.second;
    return a.first.phrase < b.first.phrase;
  });
  if (ranked.size() > k) ranked.resize(k);

  std::vector<ConceptCandidate> out;
  out.reserve(ranked.size());
  for (auto& r : ranked) out.push_back(std::move(r.first));
  return out;
}

}  // namespace scaffold
