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

#include "scaffold/progress.hpp"

#include <algorithm>

#include "scaffold/error.hpp"

namespace scaffold {
namespace {

std::size_t overlap(const TokenSet& a, const TokenSet& b) {
  const TokenSet& small = a.size() <= b.size() ? a : b;
  const TokenSet& large = a.size() <= b.size() ? b : a;
  std::size_t count = 0;
  for (const auto& t : small) count += large.count(t);
  return count;
}

double gated_cosine(const Embedding& doc, const Embedding& sub,
                    const DocumentText& doc_text) {
  if (doc.norm() == 0.0) {
    throw ProviderError("zero-norm embedding for non-empty document " +
                        doc_text.doc_id);
  }
  if (sub.norm() == 0.0) throw ProviderError("zero-norm subtopic embedding");
  return std::clamp(cosine(doc, sub), 0.0, 1.0);
}

}  // namespace

DocumentText DocumentText::from_tokens(std::string doc_id, TokenList tokens) {
  DocumentText doc;
  doc.doc_id = std::move(doc_id);
  doc.unique_terms = scaffold::unique_terms(tokens);
  doc.tokens = std::move(tokens);
  return doc;
}

DocumentText DocumentText::from_text(std::string doc_id, std::string_view text) {
  return from_tokens(std::move(doc_id), normalize(text));
}

void ScoringConfig::validate() const {
  if (!(min_overlap >= 0.0 && min_overlap <= 1.0)) {
    throw ConfigError("min_overlap must lie in [0, 1]");
  }
  if (!(cap > 0.0)) throw ConfigError("cap must be positive");
}

bool passes_filters(const DocumentText& doc, const Subtopic& sub,
                    const ScoringConfig& cfg) {
  if (sub.reference_terms.empty()) {
    throw ConfigError("subtopic '" + sub.id + "' has no reference terms");
  }
  if (doc.tokens.size() <= cfg.min_tokens) return false;
  const double shared = static_cast<double>(overlap(doc.unique_terms, sub.reference_terms));
  return shared / static_cast<double>(sub.reference_terms.size()) > cfg.min_overlap;
}

TokenList subtopic_tokens(const Subtopic& sub) {
  TokenList tokens = normalize(sub.title);
  TokenList body = normalize(sub.reference_text);
  tokens.insert(tokens.end(), body.begin(), body.end());
  return tokens;
}

double similarity(const DocumentText& doc, const Subtopic& sub,
                  const ScoringConfig& cfg, const EmbeddingProvider& emb) {
  if (!passes_filters(doc, sub, cfg)) return 0.0;
  return gated_cosine(emb.embed(doc.tokens), emb.embed(subtopic_tokens(sub)), doc);
}

OutlineScorer::OutlineScorer(const TopicOutline& outline,
                             const EmbeddingProvider& emb, ScoringConfig cfg)
    : outline_(&outline), emb_(&emb), cfg_(cfg), subtopics_(outline.subtopics()) {
  cfg_.validate();
  subtopic_embeddings_.reserve(subtopics_.size());
  for (const Subtopic* sub : subtopics_) {
    subtopic_embeddings_.push_back(emb.embed(subtopic_tokens(*sub)));
  }
}

std::vector<double> OutlineScorer::score_document(const DocumentText& doc) const {
  std::vector<double> scores(subtopics_.size(), 0.0);
  Embedding doc_embedding;
  bool embedded = false;
  for (std::size_t j = 0; j < subtopics_.size(); ++j) {
    const Subtopic& sub = *subtopics_[j];
    if (sub.reference_terms.empty()) continue;
    filter_checks_.fetch_add(1, std::memory_order_relaxed);
    if (!passes_filters(doc, sub, cfg_)) continue;
    if (!embedded) {
      doc_embedding = emb_->embed(doc.tokens);
      embedded = true;
    }
    embedded_pairs_.fetch_add(1, std::memory_order_relaxed);
    scores[j] = gated_cosine(doc_embedding, subtopic_embeddings_[j], doc);
  }
  return scores;
}

Eigen::MatrixXd OutlineScorer::score_batch(std::span<const DocumentText> docs) const {
  Eigen::MatrixXd scores(static_cast<Eigen::Index>(docs.size()),
                         static_cast<Eigen::Index>(subtopics_.size()));
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const std::vector<double> row = score_document(docs[i]);
    scores.row(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const Eigen::RowVectorXd>(row.data(),
                                             static_cast<Eigen::Index>(row.size()));
  }
  return scores;
}

ProgressState ProgressState::for_outline(const TopicOutline& outline,
                                         ScoringConfig config) {
  config.validate();
  ProgressState state;
  state.config = config;
  for (const Subtopic* sub : outline.subtopics()) {
    state.sums[sub->id] = 0.0;
    state.scored_docs[sub->id];
  }
  return state;
}

ProgressDeltas record_view(ProgressState& state, const DocumentText& doc,
                           const OutlineScorer& scorer) {
  if (!(scorer.config() == state.config)) {
    throw ConsistencyError("scorer and progress state use different configs");
  }
  const auto subtopics = scorer.outline().subtopics();
  ProgressDeltas deltas;
  bool fresh = false;
  for (const Subtopic* sub : subtopics) {
    deltas[sub->id] = 0.0;
    if (!state.scored_docs[sub->id].contains(doc.doc_id)) fresh = true;
  }
  if (!fresh) return deltas;

  const std::vector<double> scores = scorer.score_document(doc);
  for (std::size_t j = 0; j < subtopics.size(); ++j) {
    const std::string& id = subtopics[j]->id;
    if (!state.scored_docs[id].insert(doc.doc_id).second) continue;
    state.sums[id] += scores[j];
    deltas[id] = scores[j];
  }
  return deltas;
}

ProgressDeltas record_view(ProgressState& state, const DocumentText& doc,
                           const TopicOutline& outline,
                           const EmbeddingProvider& emb) {
  const OutlineScorer scorer(outline, emb, state.config);
  return record_view(state, doc, scorer);
}

double fill_fraction(const ProgressState& state, std::string_view sub_id) {
  auto it = state.sums.find(std::string(sub_id));
  if (it == state.sums.end()) {
    throw LookupError("unknown subtopic '" + std::string(sub_id) + "'");
  }
  return std::min(1.0, it->second / state.config.cap);
}

}  // namespace scaffold
