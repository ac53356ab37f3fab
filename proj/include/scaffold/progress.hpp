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

#include <Eigen/Dense>
#include <atomic>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scaffold/embedding.hpp"
#include "scaffold/outline.hpp"
#include "scaffold/text.hpp"

namespace scaffold {

struct DocumentText {
  std::string doc_id;
  TokenList tokens;
  TokenSet unique_terms;

  static DocumentText from_tokens(std::string doc_id, TokenList tokens);
  static DocumentText from_text(std::string doc_id, std::string_view text);

  friend bool operator==(const DocumentText&, const DocumentText&) = default;
};

struct ScoringConfig {
  std::size_t min_tokens = 50;
  double min_overlap = 0.2;
  double cap = 10.0;

  // Throws ConfigError when a field is out of range.
  void validate() const;

  friend bool operator==(const ScoringConfig&, const ScoringConfig&) = default;
};

// |doc| > min_tokens and |doc ∩ ref| / |ref| > min_overlap, both strict.
bool passes_filters(const DocumentText& doc, const Subtopic& sub,
                    const ScoringConfig& cfg);

// Text the subtopic is embedded from: title followed by reference text.
TokenList subtopic_tokens(const Subtopic& sub);

// Gated, non-negative cosine in [0, 1].
double similarity(const DocumentText& doc, const Subtopic& sub,
                  const ScoringConfig& cfg, const EmbeddingProvider& emb);

// Per-outline scorer that embeds every subtopic once and each document at
// most once, and counts how many pairs actually reached the embedding stage.
class OutlineScorer {
 public:
  OutlineScorer(const TopicOutline& outline, const EmbeddingProvider& emb,
                ScoringConfig cfg);

  const TopicOutline& outline() const { return *outline_; }
  const ScoringConfig& config() const { return cfg_; }

  // Similarity to every subtopic, in TopicOutline::subtopics() order. The
  // document is embedded lazily, only if some pair passes the filters.
  std::vector<double> score_document(const DocumentText& doc) const;

  // One row per document, one column per subtopic.
  Eigen::MatrixXd score_batch(std::span<const DocumentText> docs) const;

  std::size_t filter_checks() const { return filter_checks_.load(std::memory_order_relaxed); }
  std::size_t embedded_pairs() const { return embedded_pairs_.load(std::memory_order_relaxed); }

 private:
  const TopicOutline* outline_;
  const EmbeddingProvider* emb_;
  ScoringConfig cfg_;
  std::vector<const Subtopic*> subtopics_;
  std::vector<Embedding> subtopic_embeddings_;
  mutable std::atomic<std::size_t> filter_checks_{0};
  mutable std::atomic<std::size_t> embedded_pairs_{0};
};

struct ProgressState {
  std::map<std::string, double> sums;
  std::map<std::string, std::set<std::string>> scored_docs;
  ScoringConfig config;

  // All subtopics of the outline at zero.
  static ProgressState for_outline(const TopicOutline& outline,
                                   ScoringConfig config = {});

  friend bool operator==(const ProgressState&, const ProgressState&) = default;
};

using ProgressDeltas = std::map<std::string, double>;

// Adds the document's similarity to every subtopic that has not counted it
// yet. Returns the per-subtopic increments (zero entries included).
ProgressDeltas record_view(ProgressState& state, const DocumentText& doc,
                           const OutlineScorer& scorer);
ProgressDeltas record_view(ProgressState& state, const DocumentText& doc,
                           const TopicOutline& outline,
                           const EmbeddingProvider& emb);

double fill_fraction(const ProgressState& state, std::string_view sub_id);

}  // namespace scaffold
