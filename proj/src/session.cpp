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

#include "scaffold/session.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <random>
#include <sstream>
#include <utility>

#include "scaffold/error.hpp"
#include "scaffold/json_codec.hpp"

namespace scaffold {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::PreTest: return "PreTest";
    case Phase::Search: return "Search";
    case Phase::PostTest: return "PostTest";
    case Phase::Done: return "Done";
    case Phase::Rejected: return "Rejected";
  }
  return "PreTest";
}

std::uint64_t SessionState::next_seq() const {
  return event_log.empty() ? 1 : event_log.back().seq + 1;
}

std::int64_t SessionState::last_ts() const {
  return event_log.empty() ? 0 : event_log.back().ts_ms;
}

std::int64_t remaining_ms(const SessionState& state, std::int64_t now_ms) {
  if (!state.search_started_ms) return state.config.min_task_time.count();
  const std::int64_t elapsed = now_ms - *state.search_started_ms;
  return std::max<std::int64_t>(0, state.config.min_task_time.count() - elapsed);
}

bool may_finish(const SessionState& state, std::int64_t now_ms) {
  return state.phase == Phase::Search && remaining_ms(state, now_ms) == 0;
}

namespace {

void require_phase(const SessionState& state, Phase phase, std::string_view what) {
  if (state.phase != phase) {
    throw PhaseError(std::string(what) + " is not allowed in phase " +
                     std::string(to_string(state.phase)));
  }
}

std::vector<VksRecord> topic_records(std::span<const VksResponse> responses,
                                     const std::string& topic_id) {
  std::vector<VksRecord> out;
  for (const auto& r : responses) {
    if (r.topic_id == topic_id) out.push_back(r.record);
  }
  return out;
}

void apply_created(SessionState& state, const SessionEvent& e,
                   const events::SessionCreated& p) {
  if (!state.event_log.empty()) throw OrderingError("SessionCreated must be the first event");
  p.config.validate();
  state.session_id = e.session_id;
  state.participant_id = p.participant_id;
  state.strategy = p.strategy;
  state.seed = p.seed;
  state.epoch_unix_ms = p.epoch_unix_ms;
  state.config = p.config;
  state.pretest = p.pretest;
  state.phase = Phase::PreTest;
}

void apply_pretest(SessionState& state, const events::PreTestSubmitted& p) {
  require_phase(state, Phase::PreTest, "pre-test submission");
  if (!state.pretest_responses.empty()) throw OrderingError("pre-test already submitted");
  Rng tie = make_rng(state.seed, 2);
  const PreTestOutcome expected = assign_topic(state.pretest, p.responses, tie);
  if (expected != p.outcome) {
    throw ConsistencyError("logged pre-test outcome does not follow from the responses");
  }
  state.pretest_responses = p.responses;
  state.outcome = p.outcome;
  if (p.outcome.rejected()) {
    state.phase = Phase::Rejected;
    state.rejection_reason = p.outcome.rejection_reason;
  } else {
    state.topic_id = *p.outcome.assigned_topic;
  }
}

void apply_search_started(SessionState& state, const SessionEvent& e,
                          const events::SearchStarted& p, SessionEnvironment& env) {
  require_phase(state, Phase::PreTest, "starting the search");
  if (state.topic_id.empty() || p.topic_id != state.topic_id) {
    throw ConsistencyError("search started for topic '" + p.topic_id +
                           "' but the assigned topic is '" + state.topic_id + "'");
  }
  state.progress = ProgressState::for_outline(env.outline(state.topic_id), env.scoring());
  state.search_started_ms = e.ts_ms;
  state.phase = Phase::Search;
}

void apply_search_ended(SessionState& state, const SessionEvent& e) {
  require_phase(state, Phase::Search, "ending the search");
  if (!state.open_docs.empty()) {
    throw OrderingError("search ended with " + std::to_string(state.open_docs.size()) +
                        " documents still open");
  }
  const std::int64_t left = remaining_ms(state, e.ts_ms);
  if (left > 0) {
    throw PhaseError("minimum task time not reached", left);
  }
  state.search_ended_ms = e.ts_ms;
  state.phase = Phase::PostTest;
}

void apply_posttest(SessionState& state, const events::PostTestSubmitted& p,
                    SessionEnvironment& env) {
  require_phase(state, Phase::PostTest, "post-test submission");
  const auto concepts = test_concepts(env.outline(state.topic_id));
  validate_posttest(concepts, p.responses, p.summary);
  if (p.rejected != state.flagged) {
    throw ConsistencyError("logged post-test rejection disagrees with the tab-switch count");
  }
  state.posttest_responses = p.responses;
  state.summary = p.summary;
  if (p.rejected) {
    state.phase = Phase::Rejected;
    state.rejection_reason = p.rejection_reason;
  } else {
    state.phase = Phase::Done;
  }
}

// Search-phase behavioral events.
void apply_behavior(SessionState& state, const SessionEvent& e, SessionEnvironment& env) {
  require_phase(state, Phase::Search, std::string(e.kind()));
  if (auto q = e.as<events::QueryIssued>()) {
    if (trim(q->raw).empty()) throw ValidationError("empty query");
    state.query_history.push_back(q->raw);
    state.current_query = q->raw;
    state.current_page = 0;
    state.current_serp.clear();
  } else if (auto s = e.as<events::SerpShown>()) {
    if (!state.current_query || s->query != *state.current_query) {
      throw ConsistencyError("result page shown for a query that was not issued");
    }
    if (s->page < 1) throw ValidationError("page must be positive");
    state.current_page = s->page;
    state.current_serp = s->doc_ids;
  } else if (auto pc = e.as<events::PageChanged>()) {
    if (!state.current_query) throw ConsistencyError("page change before any query");
    if (pc->page < 1) throw ValidationError("page must be positive");
  } else if (auto o = e.as<events::DocumentOpened>()) {
    if (o->doc_id.empty()) throw ValidationError("empty doc id");
    if (state.open_docs.contains(o->doc_id)) {
      throw OrderingError("document " + o->doc_id + " opened twice without a close");
    }
    ProgressState progress = state.progress;
    env.record_view(progress, state.topic_id, o->doc_id);
    state.progress = std::move(progress);
    state.open_docs.emplace(o->doc_id, e.ts_ms);
  } else if (auto c = e.as<events::DocumentClosed>()) {
    if (!state.open_docs.erase(c->doc_id)) {
      throw OrderingError("document " + c->doc_id + " closed without being open");
    }
  } else if (auto b = e.as<events::Bookmarked>()) {
    if (b->doc_id.empty()) throw ValidationError("empty doc id");
    state.hidden.erase(b->doc_id);
    if (std::find(state.bookmarks.begin(), state.bookmarks.end(), b->doc_id) ==
        state.bookmarks.end()) {
      state.bookmarks.push_back(b->doc_id);
    }
  } else if (auto h = e.as<events::Hidden>()) {
    if (h->doc_id.empty()) throw ValidationError("empty doc id");
    std::erase(state.bookmarks, h->doc_id);
    state.hidden.insert(h->doc_id);
  } else if (e.as<events::TabSwitch>()) {
    ++state.tab_switches;
    state.flagged = state.tab_switches > state.config.max_tab_switches;
  } else if (auto sv = e.as<events::SnippetViewed>()) {
    if (sv->doc_id.empty()) throw ValidationError("empty doc id");
  }
}

}  // namespace

void handle_event(SessionState& state, const SessionEvent& e, SessionEnvironment& env) {
  const bool first = state.event_log.empty();
  if (first != (e.as<events::SessionCreated>() != nullptr)) {
    throw OrderingError("a log must start with exactly one SessionCreated");
  }
  if (!first && e.session_id != state.session_id) {
    throw ConsistencyError("event for session " + e.session_id + " applied to " +
                           state.session_id);
  }
  if (e.seq != state.next_seq()) {
    throw OrderingError("expected seq " + std::to_string(state.next_seq()) + ", got " +
                        std::to_string(e.seq));
  }
  if (e.ts_ms < state.last_ts()) {
    throw OrderingError("timestamp " + std::to_string(e.ts_ms) + " precedes " +
                        std::to_string(state.last_ts()));
  }
  if (e.client_seq && *e.client_seq <= state.last_client_seq) {
    throw OrderingError("client seq " + std::to_string(*e.client_seq) + " already applied");
  }

  // Each branch checks before it mutates, so a throw leaves `state` as it was.
  if (auto p = e.as<events::SessionCreated>()) {
    apply_created(state, e, *p);
  } else if (auto p = e.as<events::PreTestSubmitted>()) {
    apply_pretest(state, *p);
  } else if (auto p = e.as<events::SearchStarted>()) {
    apply_search_started(state, e, *p, env);
  } else if (e.as<events::SearchEnded>()) {
    apply_search_ended(state, e);
  } else if (auto p = e.as<events::PostTestSubmitted>()) {
    apply_posttest(state, *p, env);
  } else {
    apply_behavior(state, e, env);
  }
  if (e.client_seq) state.last_client_seq = *e.client_seq;
  state.event_log.push_back(e);
}

SessionState replay(std::span<const SessionEvent> log, SessionEnvironment& env) {
  SessionState state;
  for (const auto& e : log) handle_event(state, e, env);
  return state;
}

TopicCatalog::TopicCatalog(std::vector<TopicOutline> topics, TopicOutline attention,
                           SearchBackend& backend, const EmbeddingProvider& embedder,
                           ScoringConfig scoring)
    : topics_(std::move(topics)),
      attention_(std::move(attention)),
      backend_(&backend),
      embedder_(&embedder),
      scoring_(scoring) {
  scoring_.validate();
  test_concepts(attention_);
  for (const auto& t : topics_) {
    if (t.topic_id == attention_.topic_id) {
      throw ConfigError("attention topic '" + t.topic_id + "' is also a study topic");
    }
    test_concepts(t);
    auto [it, inserted] =
        scorers_.emplace(t.topic_id, std::make_unique<OutlineScorer>(t, *embedder_, scoring_));
    if (!inserted) throw ConfigError("duplicate topic '" + t.topic_id + "'");
  }
}

const TopicOutline& TopicCatalog::outline(const std::string& topic_id) const {
  for (const auto& t : topics_) {
    if (t.topic_id == topic_id) return t;
  }
  if (topic_id == attention_.topic_id) return attention_;
  throw LookupError("unknown topic '" + topic_id + "'");
}

const OutlineScorer& TopicCatalog::scorer(const std::string& topic_id) const {
  auto it = scorers_.find(topic_id);
  if (it == scorers_.end()) throw LookupError("unknown topic '" + topic_id + "'");
  return *it->second;
}

std::optional<DocumentText> TopicCatalog::body(const std::string& doc_id) {
  {
    std::lock_guard lock(cache_mutex_);
    auto it = bodies_.find(doc_id);
    if (it != bodies_.end()) return it->second;
  }
  std::optional<DocumentText> doc;
  try {
    doc = DocumentText::from_text(doc_id, backend_->fetch_text(doc_id));
  } catch (const BodyUnavailableError&) {
    // Remembered as unavailable.
  } catch (const BackendError&) {
    return std::nullopt;  // transient, retried on the next open
  }
  std::lock_guard lock(cache_mutex_);
  return bodies_.emplace(doc_id, std::move(doc)).first->second;
}

void TopicCatalog::record_view(ProgressState& progress, const std::string& topic_id,
                               const std::string& doc_id) {
  const OutlineScorer& s = scorer(topic_id);
  if (auto doc = body(doc_id)) scaffold::record_view(progress, *doc, s);
}

std::int64_t SystemClock::now_unix_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::int64_t ManualClock::now_unix_ms() {
  std::lock_guard lock(mutex_);
  return now_;
}

void ManualClock::set(std::int64_t unix_ms) {
  std::lock_guard lock(mutex_);
  now_ = unix_ms;
}

void ManualClock::advance(std::int64_t ms) {
  std::lock_guard lock(mutex_);
  now_ += ms;
}

namespace {

std::string random_token() {
  std::random_device rd;
  std::ostringstream out;
  out << std::hex << std::setfill('0');
  for (int i = 0; i < 4; ++i) out << std::setw(8) << static_cast<std::uint32_t>(rd());
  return out.str();
}

// Applies events to a working copy and swaps it in only after the sink has
// accepted all of them.
class Transaction {
 public:
  Transaction(SessionState& state, SessionEnvironment& env) : state_(&state), env_(&env) {
    base_ = state.event_log.size();
    std::vector<SessionEvent> log = std::move(state.event_log);
    state.event_log.clear();
    working_ = state;
    working_.event_log = std::move(log);
  }
  ~Transaction() {
    if (!committed_) {
      working_.event_log.resize(base_);
      state_->event_log = std::move(working_.event_log);
    }
  }
  Transaction(const Transaction&) = delete;
  Transaction& operator=(const Transaction&) = delete;

  const SessionState& working() const { return working_; }

  void emit(std::int64_t ts_ms, EventPayload payload,
            std::optional<std::uint64_t> client_seq = std::nullopt) {
    SessionEvent e;
    e.session_id = working_.session_id;
    e.seq = working_.next_seq();
    e.ts_ms = std::max(ts_ms, working_.last_ts());
    e.payload = std::move(payload);
    e.client_seq = client_seq;
    handle_event(working_, e, *env_);
  }

  void commit(EventSink& sink) {
    for (std::size_t i = base_; i < working_.event_log.size(); ++i) {
      sink.append(working_.event_log[i]);
    }
    *state_ = std::move(working_);
    committed_ = true;
  }

 private:
  SessionState* state_;
  SessionEnvironment* env_;
  SessionState working_;
  std::size_t base_ = 0;
  bool committed_ = false;
};

}  // namespace

SessionEngine::SessionEngine(TopicCatalog& catalog, SearchBackend& backend,
                             Blacklist blacklist, EventSink& sink, Clock& clock,
                             Options options)
    : catalog_(&catalog),
      backend_(&backend),
      blacklist_(std::move(blacklist)),
      sink_(&sink),
      clock_(&clock),
      options_(std::move(options)),
      rng_(make_rng(options_.seed, 0)) {
  options_.session.validate();
  if (!options_.id_source) options_.id_source = random_token;
}

std::shared_ptr<SessionEngine::Slot> SessionEngine::slot(const std::string& session_id) const {
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw LookupError("unknown session '" + session_id + "'");
  return it->second;
}

std::int64_t SessionEngine::session_now(const SessionState& state) const {
  return std::max(clock_->now_unix_ms() - state.epoch_unix_ms, state.last_ts());
}

std::int64_t SessionEngine::now_ms(const std::string& session_id) const {
  auto s = slot(session_id);
  std::lock_guard lock(s->mutex);
  return session_now(s->state);
}

bool SessionEngine::contains(const std::string& session_id) const {
  std::lock_guard lock(sessions_mutex_);
  return sessions_.contains(session_id);
}

std::vector<std::string> SessionEngine::session_ids() const {
  std::lock_guard lock(sessions_mutex_);
  std::vector<std::string> ids;
  for (const auto& [id, s] : sessions_) ids.push_back(id);
  return ids;
}

CreatedSession SessionEngine::create(const std::string& participant_id,
                                     std::optional<StrategyKind> strategy) {
  if (trim(participant_id).empty()) throw ValidationError("participant id must not be empty");
  std::uint64_t seed = 0;
  std::string id;
  {
    std::lock_guard lock(rng_mutex_);
    seed = rng_();
    if (!strategy) strategy = kAllStrategies[uniform_index(rng_, std::size(kAllStrategies))];
    id = options_.id_source();
  }
  if (contains(id)) throw ConsistencyError("session id collision: " + id);

  Rng draw = make_rng(seed, 1);
  events::SessionCreated created;
  created.participant_id = participant_id;
  created.strategy = *strategy;
  created.seed = seed;
  created.epoch_unix_ms = clock_->now_unix_ms();
  created.config = options_.session;
  created.pretest = start_pretest(catalog_->study_topics(), catalog_->attention(), draw);

  registry_.enroll(participant_id, id);
  auto s = std::make_shared<Slot>();
  try {
    s->state.session_id = id;
    Transaction tx(s->state, *catalog_);
    tx.emit(0, created);
    tx.commit(*sink_);
  } catch (...) {
    registry_.release(participant_id, id);
    throw;
  }
  {
    std::lock_guard lock(sessions_mutex_);
    sessions_.emplace(id, s);
  }
  return {id, *strategy, created.pretest};
}

PreTestOutcome SessionEngine::submit_pretest(const std::string& session_id,
                                             std::span<const VksResponse> responses) {
  auto s = slot(session_id);
  std::lock_guard lock(s->mutex);
  require_phase(s->state, Phase::PreTest, "pre-test submission");
  Rng tie = make_rng(s->state.seed, 2);
  events::PreTestSubmitted submitted;
  submitted.responses.assign(responses.begin(), responses.end());
  submitted.outcome = assign_topic(s->state.pretest, responses, tie);

  const std::int64_t now = session_now(s->state);
  Transaction tx(s->state, *catalog_);
  tx.emit(now, submitted);
  if (!submitted.outcome.rejected()) {
    tx.emit(now, events::SearchStarted{*submitted.outcome.assigned_topic});
  }
  tx.commit(*sink_);
  return submitted.outcome;
}

QueryResponse SessionEngine::submit_query(const std::string& session_id,
                                          const std::string& raw_query, int page) {
  if (page < 1) throw ValidationError("page must be at least 1, got " + std::to_string(page));
  auto s = slot(session_id);
  std::lock_guard lock(s->mutex);
  const SessionState& state = s->state;
  require_phase(state, Phase::Search, "searching");

  const TopicOutline& outline = catalog_->outline(state.topic_id);
  const std::int64_t now = session_now(state);
  const SliceSchedule schedule =
      SliceSchedule::for_outline(outline, state.config.planned_duration);
  const std::string& active_id =
      active_subtopic(schedule, Millis(now - *state.search_started_ms));
  const std::string rewritten =
      rewrite_query(raw_query, outline.title, outline.find(active_id)->title, state.strategy);

  Serp serp = search(rewritten, page, *backend_, blacklist_, state.config.results_per_page);

  Transaction tx(s->state, *catalog_);
  const bool paging = page > 1 && state.current_query && *state.current_query == raw_query;
  if (paging) {
    tx.emit(now, events::PageChanged{page});
  } else {
    tx.emit(now, events::QueryIssued{raw_query, rewritten});
  }
  tx.emit(now, events::SerpShown{raw_query, page, serp.doc_ids()});
  tx.commit(*sink_);

  QueryResponse response;
  response.serp = std::move(serp);
  response.raw_query = raw_query;
  response.scaffold = scaffold_view(s->state.strategy, outline, s->state.progress);
  return response;
}

std::size_t SessionEngine::post_events(const std::string& session_id,
                                       std::span<const ClientEvent> batch) {
  auto s = slot(session_id);
  std::lock_guard lock(s->mutex);
  const std::int64_t now = session_now(s->state);
  Transaction tx(s->state, *catalog_);
  std::size_t accepted = 0;
  for (const ClientEvent& ce : batch) {
    const std::string_view kind = kind_name(ce.payload);
    if (!is_client_kind(kind)) {
      throw ValidationError("clients may not post " + std::string(kind) + " events");
    }
    if (ce.client_seq == 0) throw ValidationError("client_seq must be positive");
    if (auto closed = std::get_if<events::DocumentClosed>(&ce.payload); closed && closed->synthetic) {
      throw ValidationError("synthetic closes are reserved for the server");
    }
    if (ce.client_seq <= tx.working().last_client_seq) continue;  // already applied

    std::int64_t ts = now;
    const bool dwell_event = std::holds_alternative<events::DocumentOpened>(ce.payload) ||
                             std::holds_alternative<events::DocumentClosed>(ce.payload);
    if (dwell_event && ce.ts_ms) {
      const std::int64_t last = tx.working().last_ts();
      if (*ce.ts_ms < last - kClockSkewMs || *ce.ts_ms > now + kClockSkewMs) {
        throw ValidationError("client timestamp " + std::to_string(*ce.ts_ms) +
                              " is outside [" + std::to_string(last - kClockSkewMs) + ", " +
                              std::to_string(now + kClockSkewMs) + "]");
      }
      ts = std::clamp(*ce.ts_ms, last, now);
    }
    tx.emit(ts, ce.payload, ce.client_seq);
    ++accepted;
  }
  tx.commit(*sink_);
  return accepted;
}

ScaffoldView SessionEngine::scaffold(const std::string& session_id) {
  auto s = slot(session_id);
  std::lock_guard lock(s->mutex);
  const SessionState& state = s->state;
  if (state.topic_id.empty() || !state.search_started_ms) {
    throw PhaseError("no search phase has started");
  }
  return scaffold_view(state.strategy, catalog_->outline(state.topic_id), state.progress);
}

void SessionEngine::end_search_locked(Slot& s) {
  const std::int64_t now = session_now(s.state);
  const std::int64_t left = remaining_ms(s.state, now);
  if (left > 0) {
    throw PhaseError("minimum task time not reached; " + std::to_string(left) +
                         " ms remaining",
                     left);
  }
  Transaction tx(s.state, *catalog_);
  std::vector<std::string> open;
  for (const auto& [doc, ts] : s.state.open_docs) open.push_back(doc);
  for (const auto& doc : open) tx.emit(now, events::DocumentClosed{doc, true});
  tx.emit(now, events::SearchEnded{});
  tx.commit(*sink_);
}

std::vector<std::string> SessionEngine::finish_search(const std::string& session_id) {
  auto s = slot(session_id);
  std::lock_guard lock(s->mutex);
  if (s->state.phase != Phase::PostTest) {
    require_phase(s->state, Phase::Search, "finishing the search");
    end_search_locked(*s);
  }
  return test_concepts(catalog_->outline(s->state.topic_id));
}

Phase SessionEngine::submit_posttest(const std::string& session_id,
                                     std::span<const VksRecord> responses,
                                     const std::string& summary) {
  auto s = slot(session_id);
  std::lock_guard lock(s->mutex);
  const SessionState& state = s->state;
  if (state.phase != Phase::Search && state.phase != Phase::PostTest) {
    require_phase(state, Phase::PostTest, "post-test submission");
  }
  if (state.phase == Phase::Search) {
    const std::int64_t left = remaining_ms(state, session_now(state));
    if (left > 0) {
      throw PhaseError("minimum task time not reached; " + std::to_string(left) +
                           " ms remaining",
                       left);
    }
  }
  const auto concepts = test_concepts(catalog_->outline(state.topic_id));
  validate_posttest(concepts, responses, summary);
  if (state.phase == Phase::Search) end_search_locked(*s);

  events::PostTestSubmitted submitted;
  submitted.responses.assign(responses.begin(), responses.end());
  submitted.summary = summary;
  submitted.rejected = s->state.flagged;
  if (submitted.rejected) {
    submitted.rejection_reason = std::to_string(s->state.tab_switches) +
                                 " tab switches exceed the limit of " +
                                 std::to_string(s->state.config.max_tab_switches);
  }
  Transaction tx(s->state, *catalog_);
  tx.emit(session_now(s->state), submitted);
  tx.commit(*sink_);
  return s->state.phase;
}

SessionState SessionEngine::snapshot(const std::string& session_id) const {
  auto s = slot(session_id);
  std::lock_guard lock(s->mutex);
  return s->state;
}

SessionReport SessionEngine::report(const std::string& session_id) const {
  auto s = slot(session_id);
  std::lock_guard lock(s->mutex);
  const SessionState& state = s->state;
  const TopicOutline* outline =
      state.topic_id.empty() ? nullptr : &catalog_->outline(state.topic_id);
  return {state.session_id, state.phase, session_record(state, outline)};
}

std::size_t SessionEngine::recover(std::span<const std::vector<SessionEvent>> logs) {
  std::size_t recovered = 0;
  for (const auto& log : logs) {
    if (log.empty()) continue;
    auto s = std::make_shared<Slot>();
    s->state = replay(log, *catalog_);
    const std::string id = s->state.session_id;
    registry_.enroll(s->state.participant_id, id);
    std::lock_guard lock(sessions_mutex_);
    if (!sessions_.emplace(id, s).second) {
      throw ConsistencyError("session " + id + " recovered twice");
    }
    ++recovered;
  }
  return recovered;
}

std::size_t SessionEngine::recover_from(const std::filesystem::path& log_dir) {
  std::vector<std::vector<SessionEvent>> logs;
  for (const auto& path : list_event_logs(log_dir)) logs.push_back(read_event_log(path));
  return recover(logs);
}

SessionRecord session_record(const SessionState& state, const TopicOutline* outline) {
  SessionRecord r;
  r.session_id = state.session_id;
  r.participant_id = state.participant_id;
  r.topic_id = state.topic_id;
  r.strategy = state.strategy;
  r.rejected = state.phase == Phase::Rejected;
  if (!state.posttest_responses.empty()) {
    const auto pre = topic_records(state.pretest_responses, state.topic_id);
    r.learning = learning_report(pre, state.posttest_responses, state.participant_id,
                                 state.topic_id);
  }
  if (outline) {
    r.behavior = behavior_report(state.event_log, *outline);
    r.buckets = time_bucketed(state.event_log, *outline);
  }
  return r;
}

}  // namespace scaffold
