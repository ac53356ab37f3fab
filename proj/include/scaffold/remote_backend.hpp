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

#include <chrono>
#include <string>
#include <string_view>

#include "scaffold/search.hpp"

namespace scaffold {

struct RemoteSearchConfig {
  // Web-search endpoint, e.g. https://api.bing.microsoft.com/v7.0/search
  std::string endpoint;
  // Read from SEARCH_API_KEY when empty.
  std::string api_key;
  std::string api_key_header = "Ocp-Apim-Subscription-Key";
  std::string market = "en-US";
  std::chrono::seconds timeout{10};
};

// Web-search adapter. Accepts responses in the Bing v7 shape
// ({"webPages": {"value": [{"url", "name", "snippet"}]}}) and normalizes them
// into RawHit before anything else sees them.
class RemoteSearchBackend final : public SearchBackend {
 public:
  explicit RemoteSearchBackend(RemoteSearchConfig config);

  std::string_view name() const override { return "remote"; }
  std::vector<RawHit> retrieve(const std::string& query, std::size_t offset,
                               std::size_t count) override;
  std::string fetch_text(const std::string& doc_id) override;

  const RemoteSearchConfig& config() const { return config_; }

 private:
  RemoteSearchConfig config_;
};

// Vendor response body -> hits. Throws BackendError on schema mismatch.
std::vector<RawHit> parse_web_search_response(std::string_view body);

// Visible text of an HTML page: drops script/style blocks and tags, decodes
// the common entities.
std::string html_to_text(std::string_view html);

}  // namespace scaffold
