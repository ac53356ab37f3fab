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

#include "scaffold/remote_backend.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cstdlib>

#include "scaffold/error.hpp"
#include "scaffold/text.hpp"

namespace scaffold {
namespace {

std::string base_url(const UrlParts& url) {
  std::string base = url.scheme + "://" + url.host;
  if (url.port != 0) base += ":" + std::to_string(url.port);
  return base;
}

httplib::Result get(const std::string& url, const httplib::Headers& headers,
                    std::chrono::seconds timeout) {
  auto parts = parse_url(url);
  if (!parts || (parts->scheme != "http" && parts->scheme != "https")) {
    throw ConfigError("unsupported url " + url);
  }
  httplib::Client client(base_url(*parts));
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_follow_location(true);
  return client.Get(parts->path, headers);
}

bool starts_with_ci(std::string_view text, std::size_t pos, std::string_view word) {
  if (pos + word.size() > text.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[pos + i])) != word[i]) return false;
  }
  return true;
}

}  // namespace

RemoteSearchBackend::RemoteSearchBackend(RemoteSearchConfig config)
    : config_(std::move(config)) {
  if (config_.api_key.empty()) {
    if (const char* key = std::getenv("SEARCH_API_KEY")) config_.api_key = key;
  }
  if (config_.endpoint.empty()) throw ConfigError("remote search endpoint not configured");
  if (!parse_url(config_.endpoint)) throw ConfigError("bad endpoint " + config_.endpoint);
}

std::vector<RawHit> RemoteSearchBackend::retrieve(const std::string& query,
                                                  std::size_t offset,
                                                  std::size_t count) {
  httplib::Params params{{"q", query},
                         {"count", std::to_string(count)},
                         {"offset", std::to_string(offset)},
                         {"mkt", config_.market}};
  const std::string sep = config_.endpoint.find('?') == std::string::npos ? "?" : "&";
  const std::string url =
      config_.endpoint + sep + httplib::detail::params_to_query_str(params);
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace(config_.api_key_header, config_.api_key);
  auto res = get(url, headers, config_.timeout);
  if (!res) {
    throw BackendError("search request failed: " + httplib::to_string(res.error()));
  }
  if (res->status == 429) throw BackendError("search quota exceeded");
  if (res->status != 200) {
    throw BackendError("search backend returned status " + std::to_string(res->status));
  }
  std::vector<RawHit> hits = parse_web_search_response(res->body);
  if (hits.size() > count) hits.resize(count);
  return hits;
}

std::string RemoteSearchBackend::fetch_text(const std::string& doc_id) {
  httplib::Result res;
  try {
    res = get(doc_id, {}, config_.timeout);
  } catch (const ConfigError& e) {
    throw BodyUnavailableError(e.what());
  }
  if (!res || res->status != 200) throw BodyUnavailableError("cannot fetch " + doc_id);
  return html_to_text(res->body);
}

std::vector<RawHit> parse_web_search_response(std::string_view body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw BackendError(std::string("unparseable search response: ") + e.what());
  }
  std::vector<RawHit> hits;
  if (!j.is_object()) throw BackendError("search response is not an object");
  auto pages = j.find("webPages");
  if (pages == j.end()) return hits;  // no results
  auto value = pages->find("value");
  if (value == pages->end() || !value->is_array()) {
    throw BackendError("search response lacks webPages.value");
  }
  for (const auto& item : *value) {
    if (!item.is_object() || !item.contains("url")) continue;
    hits.push_back({item.at("url").get<std::string>(), item.value("name", ""),
                    item.value("snippet", "")});
  }
  return hits;
}

std::string html_to_text(std::string_view html) {
  std::string out;
  out.reserve(html.size());
  std::size_t i = 0;
  while (i < html.size()) {
    if (html[i] == '<') {
      for (std::string_view block : {"script", "style"}) {
        if (starts_with_ci(html, i + 1, block)) {
          const std::string close = "</" + std::string(block);
          std::size_t end = i;
          while (end < html.size() && !starts_with_ci(html, end, close)) ++end;
          i = end;
          break;
        }
      }
      const std::size_t close = html.find('>', i);
      i = close == std::string_view::npos ? html.size() : close + 1;
      out.push_back(' ');
      continue;
    }
    if (html[i] == '&') {
      static const std::pair<std::string_view, char> entities[] = {
          {"&amp;", '&'}, {"&lt;", '<'},   {"&gt;", '>'},
          {"&quot;", '"'}, {"&#39;", '\''}, {"&nbsp;", ' '}};
      bool decoded = false;
      for (const auto& [name, ch] : entities) {
        if (html.compare(i, name.size(), name) == 0) {
          out.push_back(ch);
          i += name.size();
          decoded = true;
          break;
        }
      }
      if (decoded) continue;
    }
    out.push_back(html[i++]);
  }
  return collapse_whitespace(out);
}

}  // namespace scaffold
