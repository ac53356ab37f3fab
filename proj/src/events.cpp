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

#include "scaffold/events.hpp"

#include "scaffold/error.hpp"
#include "scaffold/json_codec.hpp"

namespace scaffold {

void SessionConfig::validate() const {
  if (min_task_time.count() <= 0) throw ConfigError("min_task_time must be positive");
  if (planned_duration.count() <= 0) throw ConfigError("planned_duration must be positive");
  if (max_tab_switches <= 0) throw ConfigError("max_tab_switches must be positive");
  if (results_per_page == 0) throw ConfigError("results_per_page must be positive");
}

std::string_view kind_name(const EventPayload& payload) {
  using namespace events;
  return std::visit(
      [](const auto& p) -> std::string_view {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SessionCreated>) return "SessionCreated";
        else if constexpr (std::is_same_v<T, PreTestSubmitted>) return "PreTestSubmitted";
        else if constexpr (std::is_same_v<T, SearchStarted>) return "SearchStarted";
        else if constexpr (std::is_same_v<T, QueryIssued>) return "QueryIssued";
        else if constexpr (std::is_same_v<T, SerpShown>) return "SerpShown";
        else if constexpr (std::is_same_v<T, SnippetViewed>) return "SnippetViewed";
        else if constexpr (std::is_same_v<T, DocumentOpened>) return "DocumentOpened";
        else if constexpr (std::is_same_v<T, DocumentClosed>) return "DocumentClosed";
        else if constexpr (std::is_same_v<T, Bookmarked>) return "Bookmarked";
        else if constexpr (std::is_same_v<T, Hidden>) return "Hidden";
        else if constexpr (std::is_same_v<T, PageChanged>) return "PageChanged";
        else if constexpr (std::is_same_v<T, TabSwitch>) return "TabSwitch";
        else if constexpr (std::is_same_v<T, ScaffoldScrolled>) return "ScaffoldScrolled";
        else if constexpr (std::is_same_v<T, SearchEnded>) return "SearchEnded";
        else return "PostTestSubmitted";
      },
      payload);
}

std::string_view SessionEvent::kind() const { return kind_name(payload); }

std::string to_log_line(const SessionEvent& event) {
  Json j;
  j["session_id"] = event.session_id;
  j["seq"] = event.seq;
  j["ts_ms"] = event.ts_ms;
  j["kind"] = std::string(event.kind());
  Json payload = to_json(event.payload);
  if (event.client_seq) payload["client_seq"] = *event.client_seq;
  j["payload"] = std::move(payload);
  return j.dump();
}

SessionEvent parse_log_line(std::string_view line, int line_no) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad event record: ") + e.what(), line_no,
                     static_cast<int>(e.byte));
  }
  try {
    SessionEvent event;
    event.session_id = j.at("session_id").get<std::string>();
    event.seq = j.at("seq").get<std::uint64_t>();
    event.ts_ms = j.at("ts_ms").get<std::int64_t>();
    const std::string kind = j.at("kind").get<std::string>();
    const nlohmann::json& payload = j.at("payload");
    event.payload = payload_from_json(kind, payload);
    if (payload.contains("client_seq")) {
      event.client_seq = payload.at("client_seq").get<std::uint64_t>();
    }
    return event;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad event record: ") + e.what(), line_no, 1);
  } catch (const ParseError& e) {
    throw ParseError(std::string("bad event record: ") + e.what(), line_no, 1);
  }
}

}  // namespace scaffold
