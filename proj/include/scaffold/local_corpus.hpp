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
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scaffold/search.hpp"
#include "scaffold/text.hpp"

namespace scaffold {

struct CorpusDocument {
  std::string doc_id;
  std::string title;
  std::string snippet;
  std::string body;

  friend bool operator==(const CorpusDocument&, const CorpusDocument&) = default;
};

// YAML document with doc_id, title, snippet and body fields.
CorpusDocument parse_corpus_document(std::string_view source);
std::string serialize_corpus_document(const CorpusDocument& doc);

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

struct ScoredDoc {
  std::string doc_id;
  double score = 0.0;
};

// BM25 term weight with the non-negative idf ln(1 + (N - df + 0.5) / (df + 0.5)).
double bm25_idf(std::size_t num_docs, std::size_t df);

// In-memory inverted index over title + body. Immutable once built, hence
// safe to share across sessions.
class LocalCorpus final : public SearchBackend {
 public:
  explicit LocalCorpus(std::vector<CorpusDocument> docs, Bm25Params params = {});

  // Reads index.json if present, otherwise every *.yaml document in `dir`.
  static LocalCorpus load(const std::filesystem::path& dir, Bm25Params params = {});
  void save_index(const std::filesystem::path& file) const;
  static LocalCorpus load_index(const std::filesystem::path& file);

  std::string_view name() const override { return "local"; }
  std::vector<RawHit> retrieve(const std::string& query, std::size_t offset,
                               std::size_t count) override;
  std::string fetch_text(const std::string& doc_id) override;

  // Every document sharing a term with the query, by descending score, ties
  // by ascending doc_id.
  std::vector<ScoredDoc> rank_scored(std::string_view query) const;

  const std::vector<CorpusDocument>& documents() const { return docs_; }
  const CorpusDocument* find(std::string_view doc_id) const;
  const Bm25Params& params() const { return params_; }
  std::size_t num_terms() const { return postings_.size(); }
  double average_length() const { return avgdl_; }

 private:
  struct Posting {
    std::size_t doc;
    std::size_t tf;
  };

  LocalCorpus() = default;
  void build();

  std::vector<CorpusDocument> docs_;
  Bm25Params params_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::map<std::string, std::vector<Posting>> postings_;
  std::vector<std::size_t> lengths_;
  double avgdl_ = 0.0;
};

std::vector<std::string> rank_local(std::string_view query, const LocalCorpus& corpus);

}  // namespace scaffold
