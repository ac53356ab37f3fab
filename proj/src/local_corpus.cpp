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

#include "scaffold/local_corpus.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "scaffold/error.hpp"

namespace scaffold {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string field(const YAML::Node& root, const char* key, bool required) {
  const YAML::Node node = root[key];
  if (!node || node.IsNull()) {
    if (!required) return {};
    const YAML::Mark m = root.Mark();
    throw ParseError(std::string("missing field '") + key + "'", m.line + 1, m.column + 1);
  }
  if (!node.IsScalar()) {
    const YAML::Mark m = node.Mark();
    throw ParseError(std::string("field '") + key + "' must be a string", m.line + 1,
                     m.column + 1);
  }
  return node.as<std::string>();
}

}  // namespace

CorpusDocument parse_corpus_document(std::string_view source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(source));
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, e.mark.line + 1, e.mark.column + 1);
  }
  if (!root || !root.IsMap()) throw ParseError("document must be a mapping", 1, 1);
  CorpusDocument doc;
  doc.doc_id = trim(field(root, "doc_id", true));
  doc.title = field(root, "title", false);
  doc.snippet = field(root, "snippet", false);
  doc.body = field(root, "body", false);
  if (doc.doc_id.empty()) throw ValidationError("empty doc_id");
  return doc;
}

std::string serialize_corpus_document(const CorpusDocument& doc) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "doc_id" << YAML::Value << doc.doc_id;
  out << YAML::Key << "title" << YAML::Value << doc.title;
  out << YAML::Key << "snippet" << YAML::Value << doc.snippet;
  out << YAML::Key << "body" << YAML::Value << YAML::Literal << doc.body;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

double bm25_idf(std::size_t num_docs, std::size_t df) {
  const double n = static_cast<double>(num_docs);
  const double d = static_cast<double>(df);
  return std::log(1.0 + (n - d + 0.5) / (d + 0.5));
}

LocalCorpus::LocalCorpus(std::vector<CorpusDocument> docs, Bm25Params params)
    : docs_(std::move(docs)), params_(params) {
  build();
}

void LocalCorpus::build() {
  by_id_.clear();
  postings_.clear();
  lengths_.assign(docs_.size(), 0);
  std::size_t total = 0;
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    if (!by_id_.emplace(docs_[i].doc_id, i).second) {
      throw ValidationError("duplicate doc_id " + docs_[i].doc_id);
    }
    const TokenList tokens = normalize(docs_[i].title + "\n" + docs_[i].body);
    lengths_[i] = tokens.size();
    total += tokens.size();
    std::map<std::string, std::size_t> tf;
    for (const auto& t : tokens) ++tf[t];
    for (const auto& [term, count] : tf) postings_[term].push_back({i, count});
  }
  avgdl_ = docs_.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(docs_.size());
}

LocalCorpus LocalCorpus::load(const std::filesystem::path& dir, Bm25Params params) {
  if (std::filesystem::is_regular_file(dir)) return load_index(dir);
  if (!std::filesystem::is_directory(dir)) {
    throw ConfigError("corpus directory not found: " + dir.string());
  }
  if (std::filesystem::exists(dir / "index.json")) return load_index(dir / "index.json");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".yaml") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<CorpusDocument> docs;
  docs.reserve(files.size());
  for (const auto& f : files) {
    try {
      docs.push_back(parse_corpus_document(read_file(f)));
    } catch (const Error& e) {
      throw ParseError(f.string() + ": " + e.what(), 0, 0);
    }
  }
  std::sort(docs.begin(), docs.end(),
            [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
  return LocalCorpus(std::move(docs), params);
}

void LocalCorpus::save_index(const std::filesystem::path& file) const {
  nlohmann::ordered_json j;
  j["format"] = "scaffold-index/1";
  j["k1"] = params_.k1;
  j["b"] = params_.b;
  j["num_docs"] = docs_.size();
  j["avgdl"] = avgdl_;
  auto& docs = j["documents"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    docs.push_back({{"doc_id", docs_[i].doc_id},
                    {"title", docs_[i].title},
                    {"snippet", docs_[i].snippet},
                    {"body", docs_[i].body},
                    {"length", lengths_[i]}});
  }
  auto& postings = j["postings"] = nlohmann::ordered_json::object();
  for (const auto& [term, list] : postings_) {
    auto& arr = postings[term] = nlohmann::ordered_json::array();
    for (const auto& p : list) arr.push_back({p.doc, p.tf});
  }
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + file.string());
  out << j.dump() << "\n";
}

LocalCorpus LocalCorpus::load_index(const std::filesystem::path& file) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(file));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(file.string() + ": " + e.what(), 0, static_cast<int>(e.byte));
  }
  if (j.value("format", "") != "scaffold-index/1") {
    throw ParseError(file.string() + ": not a scaffold index", 0, 0);
  }
  LocalCorpus corpus;
  corpus.params_ = {j.at("k1").get<double>(), j.at("b").get<double>()};
  std::size_t total = 0;
  for (const auto& d : j.at("documents")) {
    corpus.by_id_.emplace(d.at("doc_id").get<std::string>(), corpus.docs_.size());
    corpus.docs_.push_back({d.at("doc_id"), d.at("title"), d.at("snippet"), d.at("body")});
    corpus.lengths_.push_back(d.at("length").get<std::size_t>());
    total += corpus.lengths_.back();
  }
  for (const auto& [term, list] : j.at("postings").items()) {
    auto& dest = corpus.postings_[term];
    for (const auto& p : list) dest.push_back({p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>()});
  }
  corpus.avgdl_ = corpus.docs_.empty()
                      ? 0.0
                      : static_cast<double>(total) / static_cast<double>(corpus.docs_.size());
  return corpus;
}

std::vector<ScoredDoc> LocalCorpus::rank_scored(std::string_view query) const {
  const TokenList q = normalize(query);
  const TokenSet terms(q.begin(), q.end());
  std::vector<double> scores(docs_.size(), 0.0);
  std::vector<bool> matched(docs_.size(), false);
  for (const auto& term : terms) {
    auto it = postings_.find(term);
    if (it == postings_.end()) continue;
    const double idf = bm25_idf(docs_.size(), it->second.size());
    for (const Posting& p : it->second) {
      const double tf = static_cast<double>(p.tf);
      const double norm = params_.k1 * (1.0 - params_.b +
                                        params_.b * static_cast<double>(lengths_[p.doc]) / avgdl_);
      scores[p.doc] += idf * tf * (params_.k1 + 1.0) / (tf + norm);
      matched[p.doc] = true;
    }
  }
  std::vector<ScoredDoc> ranked;
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    if (matched[i]) ranked.push_back({docs_[i].doc_id, scores[i]});
  }
  std::sort(ranked.begin(), ranked.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  });
  return ranked;
}

std::vector<RawHit> LocalCorpus::retrieve(const std::string& query, std::size_t offset,
                                          std::size_t count) {
  const std::vector<ScoredDoc> ranked = rank_scored(query);
  std::vector<RawHit> hits;
  for (std::size_t i = offset; i < ranked.size() && hits.size() < count; ++i) {
    const CorpusDocument& doc = docs_[by_id_.at(ranked[i].doc_id)];
    hits.push_back({doc.doc_id, doc.title, doc.snippet});
  }
  return hits;
}

std::string LocalCorpus::fetch_text(const std::string& doc_id) {
  const CorpusDocument* doc = find(doc_id);
  if (!doc) throw BodyUnavailableError("unknown document " + doc_id);
  return doc->body;
}

const CorpusDocument* LocalCorpus::find(std::string_view doc_id) const {
  auto it = by_id_.find(std::string(doc_id));
  return it == by_id_.end() ? nullptr : &docs_[it->second];
}

std::vector<std::string> rank_local(std::string_view query, const LocalCorpus& corpus) {
  std::vector<std::string> ids;
  for (auto& r : corpus.rank_scored(query)) ids.push_back(std::move(r.doc_id));
  return ids;
}

}  // namespace scaffold
