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

#include "scaffold/service.hpp"

#include <httplib.h>
#include <json.hpp>

#include <vector>

#include "scaffold/embedding.hpp"
#include "scaffold/error.hpp"
#include "scaffold/event_log.hpp"
#include "scaffold/json_codec.hpp"
#include "scaffold/local_corpus.hpp"
#include "scaffold/remote_backend.hpp"
#include "scaffold/report.hpp"

namespace scaffold {

struct Service::Impl {
  std::unique_ptr<Clock> clock;
  std::unique_ptr<SearchBackend> backend;
  LexicalEmbedder embedder;
  std::unique_ptr<TopicCatalog> catalog;
  std::unique_ptr<FileEventLog> log;
  std::unique_ptr<SessionEngine> engine;
  httplib::Server server;
};

namespace {

using nlohmann::json;

// Malformed JSON, as opposed to well-formed JSON that fails validation.
struct BadRequest {
  std::string message;
};

json parse_body(std::string_view body) {
  if (body.empty()) return json::object();
  try {
    json j = json::parse(body);
    if (!j.is_object()) throw BadRequest{"request body must be a JSON object"};
    return j;
  } catch (const json::parse_error& e) {
    throw BadRequest{std::string("malformed JSON: ") + e.what()};
  }
}

ApiResponse reply(int status, const Json& body) { return {status, body.dump()}; }

ApiResponse error_reply(int status, const std::string& message) {
  return reply(status, Json{{"error", message}});
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    const auto slash = path.find('/');
    std::string_view part = path.substr(0, slash);
    if (!part.empty()) parts.push_back(part);
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash + 1);
  }
  return parts;
}

Json string_array(const auto& items) {
  Json a = Json::array();
  for (const auto& s : items) a.push_back(s);
  return a;
}

}  // namespace

Service::Service(ServiceConfig config, std::unique_ptr<Clock> clock)
    : config_(std::move(config)), impl_(std::make_unique<Impl>()) {
  config_.validate();
  impl_->clock = clock ? std::move(clock) : std::make_unique<SystemClock>();
  if (config_.corpus) {
    impl_->backend = std::make_unique<LocalCorpus>(LocalCorpus::load(*config_.corpus));
  } else {
    impl_->backend = std::make_unique<RemoteSearchBackend>(*config_.remote);
  }
  impl_->catalog = std::make_unique<TopicCatalog>(
      load_outline_set(config_.topics_dir), load_outline(config_.attention), *impl_->backend,
      impl_->embedder, config_.scoring);
  impl_->log = std::make_unique<FileEventLog>(config_.log_dir, config_.sync_log);
  SessionEngine::Options options;
  options.session = config_.session;
  options.seed = config_.seed;
  impl_->engine = std::make_unique<SessionEngine>(*impl_->catalog, *impl_->backend,
                                                  Blacklist::load(config_.blacklist),
                                                  *impl_->log, *impl_->clock, options);
  recovered_ = impl_->engine->recover_from(config_.log_dir);

  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse r = handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  impl_->server.Get(".*", route);
  impl_->server.Post(".*", route);
}

Service::~Service() { stop(); }

SessionEngine& Service::engine() { return *impl_->engine; }

int Service::bind() {
  auto& server = impl_->server;
  const int port = config_.port == 0 ? server.bind_to_any_port(config_.host)
                                     : (server.bind_to_port(config_.host, config_.port)
                                            ? config_.port
                                            : -1);
  if (port < 0) {
    throw ConfigError("cannot bind " + config_.host + ":" + std::to_string(config_.port));
  }
  return port;
}

void Service::listen() { impl_->server.listen_after_bind(); }

void Service::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

ApiResponse Service::handle(std::string_view method, std::string_view path,
                            std::string_view body) {
  SessionEngine& engine = *impl_->engine;
  const auto parts = split_path(path);
  const bool get = method == "GET";
  const bool post = method == "POST";
  try {
    if (get && parts.size() == 1 && parts[0] == "healthz") {
      return reply(200, Json{{"status", "ok"},
                             {"backend", std::string(impl_->backend->name())},
                             {"sessions", engine.session_ids().size()}});
    }
    if (parts.empty() || parts[0] != "sessions" || parts.size() > 3) {
      return error_reply(404, "no such endpoint");
    }

    if (parts.size() == 1) {
      if (!post) return error_reply(405, "use POST to create a session");
      const json req = parse_body(body);
      const std::string participant = req.at("participant_id").get<std::string>();
      const std::string strategy_name = req.value("strategy", "random-assign");
      std::optional<StrategyKind> strategy;
      if (strategy_name != "random-assign") {
        strategy = parse_strategy(strategy_name);
        if (!strategy) throw ValidationError("unknown strategy '" + strategy_name + "'");
      }
      const CreatedSession created = engine.create(participant, strategy);
      Json items = Json::array();
      for (const auto& item : created.pretest.items) {
        items.push_back({{"topic_id", item.topic_id}, {"concept", item.term}});
      }
      return reply(201, Json{{"session_id", created.session_id},
                             {"phase", "PreTest"},
                             {"pretest", {{"items", items}}}});
    }

    const std::string id(parts[1]);
    if (!engine.contains(id)) return error_reply(404, "unknown session '" + id + "'");

    if (parts.size() == 2) {
      if (!get) return error_reply(405, "use GET");
      const SessionState s = engine.snapshot(id);
      const std::int64_t now = engine.now_ms(id);
      Json j{{"session_id", s.session_id}, {"phase", std::string(to_string(s.phase))}};
      if (s.search_started_ms) {
        const std::int64_t end = s.search_ended_ms.value_or(now);
        j["elapsed_ms"] = end - *s.search_started_ms;
        j["remaining_ms"] = remaining_ms(s, now);
        j["may_finish"] = may_finish(s, now);
        j["task_topic"] = impl_->catalog->outline(s.topic_id).title;
      }
      j["query_history"] = string_array(s.query_history);
      j["bookmarks"] = string_array(s.bookmarks);
      j["hidden"] = string_array(s.hidden);
      return reply(200, j);
    }

    const std::string_view action = parts[2];
    const bool get_action = action == "scaffold" || action == "report";
    const bool post_action = action == "pretest" || action == "query" || action == "events" ||
                             action == "finish" || action == "posttest";
    if (!get_action && !post_action) return error_reply(404, "no such endpoint");
    if (get_action != get) return error_reply(405, get_action ? "use GET" : "use POST");
    if (action == "scaffold") return reply(200, to_json(engine.scaffold(id)));
    if (action == "report") {
      const SessionReport r = engine.report(id);
      Json j = session_record_json(r.record);
      j["phase"] = std::string(to_string(r.phase));
      return reply(200, j);
    }

    const json req = parse_body(body);
    if (action == "pretest") {
      std::vector<VksResponse> responses;
      for (const auto& r : req.at("responses")) {
        responses.push_back({r.at("topic_id").get<std::string>(), vks_record_from_json(r)});
      }
      const PreTestOutcome outcome = engine.submit_pretest(id, responses);
      Json j;
      if (outcome.rejected()) {
        j = {{"phase", "Rejected"}, {"assigned_topic", nullptr},
             {"rejection_reason", outcome.rejection_reason}};
      } else {
        const TopicOutline& t = impl_->catalog->outline(*outcome.assigned_topic);
        j = {{"phase", "Search"},
             {"assigned_topic", {{"topic_id", t.topic_id}, {"title", t.title}}}};
      }
      return reply(200, j);
    }
    if (action == "query") {
      const std::string query = req.at("query").get<std::string>();
      const int page = req.value("page", 1);
      const QueryResponse r = engine.submit_query(id, query, page);
      const SessionState s = engine.snapshot(id);
      return reply(200, Json{{"serp", serp_to_client_json(r.serp, r.raw_query)},
                             {"scaffold", to_json(r.scaffold)},
                             {"query_history", string_array(s.query_history)}});
    }
    if (action == "events") {
      std::vector<ClientEvent> batch;
      for (const auto& e : req.at("events")) {
        ClientEvent ce;
        ce.client_seq = e.at("client_seq").get<std::uint64_t>();
        if (e.contains("ts_ms") && !e.at("ts_ms").is_null()) {
          ce.ts_ms = e.at("ts_ms").get<std::int64_t>();
        }
        const std::string kind = e.at("kind").get<std::string>();
        if (!is_client_kind(kind)) {
          throw ValidationError("clients may not post " + kind + " events");
        }
        ce.payload = payload_from_json(kind, e.value("payload", json::object()));
        batch.push_back(std::move(ce));
      }
      const std::size_t accepted = engine.post_events(id, batch);
      return reply(200, Json{{"accepted", accepted},
                             {"last_client_seq", engine.snapshot(id).last_client_seq}});
    }
    if (action == "finish") {
      const auto concepts = engine.finish_search(id);
      return reply(200, Json{{"phase", "PostTest"},
                             {"posttest", {{"items", string_array(concepts)}}}});
    }
    if (action == "posttest") {
      std::vector<VksRecord> responses;
      for (const auto& r : req.at("responses")) responses.push_back(vks_record_from_json(r));
      const std::string summary = req.at("summary").get<std::string>();
      const Phase phase = engine.submit_posttest(id, responses, summary);
      return reply(200, Json{{"phase", std::string(to_string(phase))}});
    }
    return error_reply(404, "no such endpoint");
  } catch (const BadRequest& e) {
    return error_reply(400, e.message);
  } catch (const PhaseError& e) {
    Json j{{"error", e.what()}};
    if (e.remaining_ms() > 0) j["remaining_ms"] = e.remaining_ms();
    return reply(409, j);
  } catch (const LookupError& e) {
    return error_reply(404, e.what());
  } catch (const BackendError& e) {
    return error_reply(503, e.what());
  } catch (const ValidationError& e) {
    return error_reply(422, e.what());
  } catch (const OrderingError& e) {
    return error_reply(422, e.what());
  } catch (const ConsistencyError& e) {
    return error_reply(422, e.what());
  } catch (const ParseError& e) {
    return error_reply(422, e.what());
  } catch (const json::exception& e) {
    return error_reply(422, std::string("invalid request: ") + e.what());
  } catch (const std::exception& e) {
    return error_reply(500, e.what());
  }
}

}  // namespace scaffold
