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
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "scaffold/progress.hpp"

namespace scaffold {

inline constexpr std::size_t kResultsPerPage = 10;

struct SearchResult {
  std::string doc_id;
  std::string title;
  std::string snippet;
  std::string host;
  int rank = 0;
  std::optional<DocumentText> body;

  friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

struct Serp {
  std::string query_as_submitted;
  int page = 1;
  std::vector<SearchResult> results;

  std::vector<std::string> doc_ids() const;

  friend bool operator==(const Serp&, const Serp&) = default;
};

struct UrlParts {
  std::string scheme;
  std::string host;  // lowercase, without port
  int port = 0;      // 0 when absent
  std::string path;  // includes query string, "/" when absent
};

// Returns nullopt when `url` has no scheme://host prefix.
std::optional<UrlParts> parse_url(std::string_view url);

// Lowercased host of a URL doc id; empty for plain corpus ids.
std::string host_of(std::string_view doc_id);

// Case-insensitive host-suffix matching on label boundaries:
// "wikipedia.org" blocks "en.wikipedia.org" but not "notwikipedia.org".
class Blacklist {
 public:
  Blacklist() = default;
  explicit Blacklist(std::set<std::string> domains);

  // One suffix per line; '#' starts a comment.
  static Blacklist parse(std::string_view text);
  static Blacklist load(const std::filesystem::path& path);

  bool blocks(std::string_view host) const;
  bool empty() const { return domains_.empty(); }
  std::size_t size() const { return domains_.size(); }
  const std::set<std::string>& domains() const { return domains_; }

 private:
  std::set<std::string> domains_;
};

// A hit as returned by an adapter, before filtering and ranking on a page.
struct RawHit {
  std::string doc_id;
  std::string title;
  std::string snippet;
};

// Adapters must be safe for concurrent calls from different sessions.
class SearchBackend {
 public:
  virtual ~SearchBackend() = default;
  virtual std::string_view name() const = 0;
  // Hits [offset, offset + count) of the adapter's ranking for `query`.
  virtual std::vector<RawHit> retrieve(const std::string& query,
                                       std::size_t offset, std::size_t count) = 0;
  // Raw document text. Throws BodyUnavailableError.
  virtual std::string fetch_text(const std::string& doc_id) = 0;
};

// Retrieves one page and drops blacklisted hosts. Pages are disjoint windows
// of the adapter ranking, so filtered pages may hold fewer than page_size.
Serp search(std::string_view query, int page, SearchBackend& backend,
            const Blacklist& blacklist, std::size_t page_size = kResultsPerPage);

// Per-session document cache. Single writer.
class BodyCache {
 public:
  explicit BodyCache(SearchBackend& backend) : backend_(&backend) {}

  // Normalized body tokens; throws BodyUnavailableError.
  const DocumentText& fetch(const std::string& doc_id);
  std::size_t size() const { return cache_.size(); }
  std::size_t misses() const { return misses_; }

 private:
  SearchBackend* backend_;
  std::map<std::string, DocumentText> cache_;
  std::size_t misses_ = 0;
};

DocumentText fetch_body(const SearchResult& result, BodyCache& cache);

}  // namespace scaffold
