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

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scaffold/embedding.hpp"
#include "scaffold/event_log.hpp"
#include "scaffold/events.hpp"
#include "scaffold/metrics.hpp"
#include "scaffold/outline.hpp"
#include "scaffold/progress.hpp"
#include "scaffold/random.hpp"
#include "scaffold/search.hpp"
#include "scaffold/strategy.hpp"
#include "scaffold/study.hpp"

namespace scaffold {

enum class Phase { PreTest, Search, PostTest, Done, Rejected };
std::string_view to_string(Phase phase);

// Client timestamps on open/close events may run this far ahead of or behind
// the server before they are refused.
inline constexpr std::int64_t kClockSkewMs = 2000;

struct SessionState {
  std::string session_id;
  std::string participant_id;
  std::string topic_id;  // empty until assigned
  StrategyKind strategy = StrategyKind::Control;
  std::uint64_t seed = 0;
  std::int64_t epoch_unix_ms = 0;
  Phase phase = Phase::PreTest;
  SessionConfig config;

  PreTestBundle pretest;
  std::vector<VksResponse> pretest_responses;
  PreTestOutcome outcome;

  std::vector<SessionEvent> event_log;
  ProgressState progress;
  std::vector<std::string> bookmarks;  // insertion order
  std::set<std::string> hidden;
  std::vector<std::string> query_history;  // raw queries
  std::optional<std::string> current_query;
  int current_page = 0;
  std::vector<std::string> current_serp;
  std::map<std::string, std::int64_t> open_docs;  // doc id -> open time
  int tab_switches = 0;
  bool flagged = false;  // too many tab switches
  std::optional<std::int64_t> search_started_ms;
  std::optional<std::int64_t> search_ended_ms;
  std::uint64_t last_client_seq = 0;  // client seqs start at 1

  std::vector<VksRecord> posttest_responses;
  std::string summary;
  std::string rejection_reason;

  std::uint64_t next_seq() const;
  std::int64_t last_ts() const;

  friend bool operator==(const SessionState&, const SessionState&) = default;
};

// True once the search phase has lasted min_task_time at session time
// `now_ms`.
bool may_finish(const SessionState& state, std::int64_t now_ms);
// Milliseconds until may_finish holds; 0 when it already does.
std::int64_t remaining_ms(const SessionState& state, std::int64_t now_ms);

// What the reducer needs beyond the log itself.
class SessionEnvironment {
 public:
  virtual ~SessionEnvironment() = default;
  // Throws LookupError for an unknown topic.
  virtual const TopicOutline& outline(const std::string& topic_id) const = 0;
  virtual const ScoringConfig& scoring() const = 0;
  // Scores an opened document into `progress`. Unavailable bodies add
  // nothing.
  virtual void record_view(ProgressState& progress, const std::string& topic_id,
                           const std::string& doc_id) = 0;
};

// Applies one event. Checks sequence and timestamp order, the phase machine
// and open/close pairing; throws OrderingError, PhaseError or
// ConsistencyError and leaves `state` untouched on failure.
void handle_event(SessionState& state, const SessionEvent& event,
                  SessionEnvironment& env);

// Rebuilds a session from its log.
SessionState replay(std::span<const SessionEvent> log, SessionEnvironment& env);

// Topics the service serves, their scorers and a shared body cache.
class TopicCatalog final : public SessionEnvironment {
 public:
  TopicCatalog(std::vector<TopicOutline> topics, TopicOutline attention,
               SearchBackend& backend, const EmbeddingProvider& embedder,
               ScoringConfig scoring = {});

  const TopicOutline& outline(const std::string& topic_id) const override;
  const ScoringConfig& scoring() const override { return scoring_; }
  void record_view(ProgressState& progress, const std::string& topic_id,
                   const std::string& doc_id) override;

  const std::vector<TopicOutline>& study_topics() const { return topics_; }
  const TopicOutline& attention() const { return attention_; }
  const OutlineScorer& scorer(const std::string& topic_id) const;

 private:
  std::optional<DocumentText> body(const std::string& doc_id);

  std::vector<TopicOutline> topics_;
  TopicOutline attention_;
  SearchBackend* backend_;
  const EmbeddingProvider* embedder_;
  ScoringConfig scoring_;
  std::map<std::string, std::unique_ptr<OutlineScorer>> scorers_;
  std::mutex cache_mutex_;
  std::map<std::string, std::optional<DocumentText>> bodies_;
};

class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::int64_t now_unix_ms() = 0;
};

class SystemClock final : public Clock {
 public:
  std::int64_t now_unix_ms() override;
};

class ManualClock final : public Clock {
 public:
  explicit ManualClock(std::int64_t start_unix_ms = 0) : now_(start_unix_ms) {}
  std::int64_t now_unix_ms() override;
  void set(std::int64_t unix_ms);
  void advance(std::int64_t ms);

 private:
  std::mutex mutex_;
  std::int64_t now_;
};

// An event posted by the client. `ts_ms` is honored only for document
// open/close events; everything else is stamped on receipt.
struct ClientEvent {
  std::uint64_t client_seq = 0;
  std::optional<std::int64_t> ts_ms;
  EventPayload payload;
};

struct QueryResponse {
  Serp serp;  // query_as_submitted holds the rewritten form; strip before sending
  std::string raw_query;
  ScaffoldView scaffold;
};

struct CreatedSession {
  std::string session_id;
  StrategyKind strategy = StrategyKind::Control;
  PreTestBundle pretest;
};

struct SessionReport {
  std::string session_id;
  Phase phase = Phase::PreTest;
  SessionRecord record;
};

// Owns every live session. Operations on one session are serialized; different
// sessions proceed concurrently. Every accepted event is persisted through the
// sink before the call returns.
class SessionEngine {
 public:
  struct Options {
    SessionConfig session;
    std::uint64_t seed = 0;
    // Produces session ids; defaults to 128-bit random hex tokens.
    std::function<std::string()> id_source;
  };

  SessionEngine(TopicCatalog& catalog, SearchBackend& backend, Blacklist blacklist,
                EventSink& sink, Clock& clock, Options options);

  // Without a strategy, one of the four is drawn uniformly from the engine seed.
  CreatedSession create(const std::string& participant_id,
                        std::optional<StrategyKind> strategy = std::nullopt);
  PreTestOutcome submit_pretest(const std::string& session_id,
                                std::span<const VksResponse> responses);
  // A new query, or page > 1 of the current one.
  QueryResponse submit_query(const std::string& session_id, const std::string& raw_query,
                             int page = 1);
  // Events already seen (by client_seq) are skipped. A batch is applied
  // atomically. Returns the number of events accepted.
  std::size_t post_events(const std::string& session_id, std::span<const ClientEvent> batch);
  ScaffoldView scaffold(const std::string& session_id);
  // Closes open documents and ends the search; returns the post-test concepts.
  // Throws PhaseError with the remaining time before min_task_time.
  std::vector<std::string> finish_search(const std::string& session_id);
  // Ends the search first when still searching. Returns the final phase.
  Phase submit_posttest(const std::string& session_id, std::span<const VksRecord> responses,
                        const std::string& summary);

  SessionState snapshot(const std::string& session_id) const;
  SessionReport report(const std::string& session_id) const;
  std::vector<std::string> session_ids() const;
  bool contains(const std::string& session_id) const;

  // Replays persisted logs into live sessions. Returns the number recovered.
  std::size_t recover(std::span<const std::vector<SessionEvent>> logs);
  std::size_t recover_from(const std::filesystem::path& log_dir);

  const ParticipantRegistry& registry() const { return registry_; }
  std::int64_t now_ms(const std::string& session_id) const;

 private:
  struct Slot {
    mutable std::mutex mutex;
    SessionState state;
  };

  std::shared_ptr<Slot> slot(const std::string& session_id) const;
  // Applies `events` to a copy of the state, persists them, then commits.
  void commit(Slot& slot, std::vector<SessionEvent> events);
  SessionEvent make_event(const SessionState& state, std::uint64_t seq_offset,
                          std::int64_t ts_ms, EventPayload payload) const;
  std::int64_t session_now(const SessionState& state) const;
  void end_search_locked(Slot& slot);

  TopicCatalog* catalog_;
  SearchBackend* backend_;
  Blacklist blacklist_;
  EventSink* sink_;
  Clock* clock_;
  Options options_;

  mutable std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::mutex rng_mutex_;
  Rng rng_;
  ParticipantRegistry registry_;
};

// Everything the cohort tables need, from a finished or partial session.
// `outline` is null for sessions rejected before a topic was assigned.
SessionRecord session_record(const SessionState& state, const TopicOutline* outline);

}  // namespace scaffold
