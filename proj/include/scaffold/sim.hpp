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
#include <span>
#include <string>
#include <vector>

#include "scaffold/embedding.hpp"
#include "scaffold/events.hpp"
#include "scaffold/local_corpus.hpp"
#include "scaffold/metrics.hpp"
#include "scaffold/outline.hpp"
#include "scaffold/search.hpp"
#include "scaffold/session.hpp"
#include "scaffold/strategy.hpp"

namespace scaffold {

struct CorpusSynthesisOptions {
  std::uint64_t seed = 7;
  std::size_t docs_per_subtopic = 3;
  std::size_t thin_per_topic = 4;       // below the token filter
  std::size_t encyclopedia_per_topic = 3;  // on a blacklisted host
  std::size_t off_topic = 30;
  std::size_t max_docs = 500;
};

// Deterministic documents written from each subtopic's reference text.
// Doc ids are URLs whose path starts with the topic id.
std::vector<CorpusDocument> synthesize_corpus(std::span<const TopicOutline> outlines,
                                              const CorpusSynthesisOptions& options = {});

// The blacklist the synthetic corpus is meant to be searched with.
Blacklist default_blacklist();

enum class AgentKind { FreeForm, OutlineFollower, GaugeChaser };
inline constexpr AgentKind kAllAgents[] = {AgentKind::FreeForm, AgentKind::OutlineFollower,
                                           AgentKind::GaugeChaser};
std::string_view to_string(AgentKind kind);
std::optional<AgentKind> parse_agent(std::string_view name);

struct AgentProfile {
  AgentKind kind = AgentKind::FreeForm;
  std::uint64_t seed = 1;
  double query_rate = 1.0;  // mean queries per 5 minutes
  double dwell_mean = 60.0;  // seconds
  Millis session_length{std::chrono::minutes(32)};

  // Defaults that give each kind its characteristic behavior.
  static AgentProfile defaults(AgentKind kind, std::uint64_t seed);
};

// Topics, corpus and scorer shared by simulated sessions.
struct SimWorld {
  std::vector<TopicOutline> outlines;  // study topics, sorted by id
  TopicOutline attention;
  LocalCorpus corpus;
  Blacklist blacklist;
  LexicalEmbedder embedder;
  SessionConfig session;

  const TopicOutline& outline(const std::string& topic_id) const;
};

struct SimSession {
  std::string session_id;
  std::vector<SessionEvent> log;
  SessionState state;
  SessionRecord record;
};

// Runs one complete session (pre-test, search, post-test) through the
// session engine under a manual clock. The pre-test pool is the topic plus a
// decoy the agent claims to know well, so the topic is always assigned.
SimSession run_agent(const AgentProfile& profile, const std::string& topic_id,
                     StrategyKind strategy, SimWorld& world);

}  // namespace scaffold
