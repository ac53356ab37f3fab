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

#include <json.hpp>

#include <string_view>

#include "scaffold/events.hpp"
#include "scaffold/search.hpp"
#include "scaffold/strategy.hpp"
#include "scaffold/vks.hpp"

namespace scaffold {

using Json = nlohmann::ordered_json;

Json to_json(const VksRecord& record);
VksRecord vks_record_from_json(const nlohmann::json& j);

Json to_json(const EventPayload& payload);
// Throws ParseError on unknown kinds or missing fields.
EventPayload payload_from_json(std::string_view kind, const nlohmann::json& j);

// Kinds a client may post through the events endpoint.
bool is_client_kind(std::string_view kind);

// Client-facing SERP. `query` is the user's raw query; the submitted form is
// never serialized.
Json serp_to_client_json(const Serp& serp, std::string_view raw_query);
Json to_json(const ScaffoldView& view);

}  // namespace scaffold
