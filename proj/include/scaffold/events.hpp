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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scaffold/strategy.hpp"
#include "scaffold/vks.hpp"

namespace scaffold {

struct SessionConfig {
  Millis min_task_time = std::chrono::minutes(30);
  Millis planned_duration = std::chrono::minutes(30);
  int max_tab_switches = 3;
  std::size_t results_per_page = 10;

  void validate() const;

  friend bool operator==(const SessionConfig&, const SessionConfig&) = default;
};

struct VksItem {
  std::string topic_id;
  std::string term;

  friend bool operator==(const VksItem&, const VksItem&) = default;
};

struct PreTestBundle {
  std::vector<std::string> study_topics;  // two distinct topic ids
  std::string attention_topic;
  std::vector<VksItem> items;  // 10 per topic, shuffled

  friend bool operator==(const PreTestBundle&, const PreTestBundle&) = default;
};

struct PreTestOutcome {
  std::optional<std::string> assigned_topic;
  std::string rejection_reason;  // set when assigned_topic is empty

  bool rejected() const { return !assigned_topic.has_value(); }

  friend bool operator==(const PreTestOutcome&, const PreTestOutcome&) = default;
};

namespace events {

// Lifecycle records. They let a log alone reconstruct the whole session.
struct SessionCreated {
  std::string participant_id;
  StrategyKind strategy = StrategyKind::Control;
  std::uint64_t seed = 0;
  std::int64_t epoch_unix_ms = 0;
  SessionConfig config;
  PreTestBundle pretest;
  friend bool operator==(const SessionCreated&, const SessionCreated&) = default;
};
struct PreTestSubmitted {
  std::vector<VksResponse> responses;
  PreTestOutcome outcome;
  friend bool operator==(const PreTestSubmitted&, const PreTestSubmitted&) = default;
};
struct SearchStarted {
  std::string topic_id;
  friend bool operator==(const SearchStarted&, const SearchStarted&) = default;
};
struct SearchEnded {
  friend bool operator==(const SearchEnded&, const SearchEnded&) = default;
};
struct PostTestSubmitted {
  std::vector<VksRecord> responses;
  std::string summary;
  bool rejected = false;
  std::string rejection_reason;
  friend bool operator==(const PostTestSubmitted&, const PostTestSubmitted&) = default;
};

// Behavioral records.
struct QueryIssued {
  std::string raw;
  std::string rewritten;
  friend bool operator==(const QueryIssued&, const QueryIssued&) = default;
};
struct SerpShown {
  std::string query;  // raw form
  int page = 1;
  std::vector<std::string> doc_ids;
  friend bool operator==(const SerpShown&, const SerpShown&) = default;
};
struct SnippetViewed {
  std::string doc_id;
  friend bool operator==(const SnippetViewed&, const SnippetViewed&) = default;
};
struct DocumentOpened {
  std::string doc_id;
  friend bool operator==(const DocumentOpened&, const DocumentOpened&) = default;
};
struct DocumentClosed {
  std::string doc_id;
  bool synthetic = false;  // closed by the server at search end
  friend bool operator==(const DocumentClosed&, const DocumentClosed&) = default;
};
struct Bookmarked {
  std::string doc_id;
  friend bool operator==(const Bookmarked&, const Bookmarked&) = default;
};
struct Hidden {
  std::string doc_id;
  friend bool operator==(const Hidden&, const Hidden&) = default;
};
struct PageChanged {
  int page = 1;
  friend bool operator==(const PageChanged&, const PageChanged&) = default;
};
struct TabSwitch {
  friend bool operator==(const TabSwitch&, const TabSwitch&) = default;
};
struct ScaffoldScrolled {
  friend bool operator==(const ScaffoldScrolled&, const ScaffoldScrolled&) = default;
};

}  // namespace events

using EventPayload =
    std::variant<events::SessionCreated, events::PreTestSubmitted,
                 events::SearchStarted, events::QueryIssued, events::SerpShown,
                 events::SnippetViewed, events::DocumentOpened,
                 events::DocumentClosed, events::Bookmarked, events::Hidden,
                 events::PageChanged, events::TabSwitch,
                 events::ScaffoldScrolled, events::SearchEnded,
                 events::PostTestSubmitted>;

struct SessionEvent {
  std::string session_id;
  std::uint64_t seq = 0;
  std::int64_t ts_ms = 0;  // since the session epoch
  EventPayload payload;
  // Client batch sequence number, for events posted by the client.
  std::optional<std::uint64_t> client_seq;

  std::string_view kind() const;

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&payload);
  }

  friend bool operator==(const SessionEvent&, const SessionEvent&) = default;
};

std::string_view kind_name(const EventPayload& payload);

// One JSON object per line with keys session_id, seq, ts_ms, kind, payload
// in that order. Byte-stable.
std::string to_log_line(const SessionEvent& event);
// `line_no` is only used in error messages.
SessionEvent parse_log_line(std::string_view line, int line_no = 0);

}  // namespace scaffold
