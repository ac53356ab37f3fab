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

#include "scaffold/search.hpp"

#include <fstream>
#include <sstream>

#include "scaffold/error.hpp"
#include "scaffold/text.hpp"

namespace scaffold {

std::vector<std::string> Serp::doc_ids() const {
  std::vector<std::string> ids;
  ids.reserve(results.size());
  for (const auto& r : results) ids.push_back(r.doc_id);
  return ids;
}

std::optional<UrlParts> parse_url(std::string_view url) {
  const auto sep = url.find("://");
  if (sep == std::string_view::npos || sep == 0) return std::nullopt;
  UrlParts parts;
  parts.scheme = to_lower_ascii(url.substr(0, sep));
  std::string_view rest = url.substr(sep + 3);
  const auto path_at = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, path_at);
  parts.path = path_at == std::string_view::npos ? "/" : std::string(rest.substr(path_at));
  if (!parts.path.empty() && parts.path[0] != '/') parts.path.insert(0, "/");
  if (const auto at = authority.rfind('@'); at != std::string_view::npos) {
    authority = authority.substr(at + 1);
  }
  if (const auto colon = authority.rfind(':'); colon != std::string_view::npos) {
    const std::string port(authority.substr(colon + 1));
    authority = authority.substr(0, colon);
    try {
      parts.port = port.empty() ? 0 : std::stoi(port);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  if (authority.empty()) return std::nullopt;
  parts.host = to_lower_ascii(authority);
  return parts;
}

std::string host_of(std::string_view doc_id) {
  auto parts = parse_url(doc_id);
  return parts ? parts->host : std::string();
}

Blacklist::Blacklist(std::set<std::string> domains) {
  for (const auto& d : domains) {
    std::string key = to_lower_ascii(trim(d));
    while (!key.empty() && key.front() == '.') key.erase(key.begin());
    if (!key.empty()) domains_.insert(std::move(key));
  }
}

Blacklist Blacklist::parse(std::string_view text) {
  std::set<std::string> domains;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::string entry = trim(line);
    if (!entry.empty()) domains.insert(std::move(entry));
  }
  return Blacklist(std::move(domains));
}

Blacklist Blacklist::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open blacklist " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

bool Blacklist::blocks(std::string_view host) const {
  std::string h = to_lower_ascii(host);
  while (!h.empty() && h.back() == '.') h.pop_back();
  if (h.empty()) return false;
  // Walk label suffixes: a.b.c -> a.b.c, b.c, c
  std::string_view view = h;
  while (true) {
    if (domains_.contains(std::string(view))) return true;
    const auto dot = view.find('.');
    if (dot == std::string_view::npos) return false;
    view.remove_prefix(dot + 1);
  }
}

Serp search(std::string_view query, int page, SearchBackend& backend,
            const Blacklist& blacklist, std::size_t page_size) {
  const std::string q = collapse_whitespace(query);
  if (q.empty()) throw ValidationError("query must not be empty");
  if (page < 1) throw ValidationError("page must be >= 1");
  Serp serp;
  serp.query_as_submitted = q;
  serp.page = page;
  const std::size_t offset = static_cast<std::size_t>(page - 1) * page_size;
  std::vector<RawHit> hits = backend.retrieve(q, offset, page_size);
  if (hits.size() > page_size) hits.resize(page_size);
  for (auto& hit : hits) {
    SearchResult r;
    r.host = host_of(hit.doc_id);
    if (blacklist.blocks(r.host)) continue;
    r.doc_id = std::move(hit.doc_id);
    r.title = std::move(hit.title);
    r.snippet = std::move(hit.snippet);
    r.rank = static_cast<int>(offset + serp.results.size() + 1);
    serp.results.push_back(std::move(r));
  }
  return serp;
}

const DocumentText& BodyCache::fetch(const std::string& doc_id) {
  if (auto it = cache_.find(doc_id); it != cache_.end()) return it->second;
  ++misses_;
  std::string text = backend_->fetch_text(doc_id);
  return cache_.emplace(doc_id, DocumentText::from_text(doc_id, text)).first->second;
}

DocumentText fetch_body(const SearchResult& result, BodyCache& cache) {
  if (result.body) return *result.body;
  return cache.fetch(result.doc_id);
}

}  // namespace scaffold
