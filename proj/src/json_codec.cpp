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

#include "scaffold/json_codec.hpp"

#include "scaffold/error.hpp"

namespace scaffold {
namespace {

using nlohmann::json;

Json config_to_json(const SessionConfig& c) {
  return Json{{"min_task_ms", c.min_task_time.count()},
              {"planned_ms", c.planned_duration.count()},
              {"max_tab_switches", c.max_tab_switches},
              {"results_per_page", c.results_per_page}};
}

SessionConfig config_from_json(const json& j) {
  SessionConfig c;
  c.min_task_time = Millis(j.at("min_task_ms").get<std::int64_t>());
  c.planned_duration = Millis(j.at("planned_ms").get<std::int64_t>());
  c.max_tab_switches = j.at("max_tab_switches").get<int>();
  c.results_per_page = j.at("results_per_page").get<std::size_t>();
  return c;
}

Json response_to_json(const VksResponse& r) {
  Json j;
  j["topic_id"] = r.topic_id;
  const Json record = to_json(r.record);
  for (const auto& [k, v] : record.items()) j[k] = v;
  return j;
}

StrategyKind strategy_from_json(const json& j) {
  auto kind = parse_strategy(j.get<std::string>());
  if (!kind) throw ParseError("unknown strategy " + j.dump(), 0, 0);
  return *kind;
}

}  // namespace

Json to_json(const VksRecord& record) {
  Json j{{"concept", record.term}, {"level", record.level}};
  if (record.definition) j["definition"] = *record.definition;
  return j;
}

VksRecord vks_record_from_json(const json& j) {
  VksRecord r;
  r.term = j.at("concept").get<std::string>();
  r.level = j.at("level").get<int>();
  if (j.contains("definition") && !j.at("definition").is_null()) {
    r.definition = j.at("definition").get<std::string>();
  }
  return r;
}

Json to_json(const EventPayload& payload) {
  using namespace events;
  return std::visit(
      [](const auto& p) -> Json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SessionCreated>) {
          Json items = Json::array();
          for (const auto& item : p.pretest.items) {
            items.push_back({{"topic_id", item.topic_id}, {"concept", item.term}});
          }
          return Json{{"participant_id", p.participant_id},
                      {"strategy", std::string(to_string(p.strategy))},
                      {"seed", p.seed},
                      {"epoch_unix_ms", p.epoch_unix_ms},
                      {"config", config_to_json(p.config)},
                      {"pretest",
                       {{"study_topics", p.pretest.study_topics},
                        {"attention_topic", p.pretest.attention_topic},
                        {"items", items}}}};
        } else if constexpr (std::is_same_v<T, PreTestSubmitted>) {
          Json responses = Json::array();
          for (const auto& r : p.responses) responses.push_back(response_to_json(r));
          Json outcome;
          if (p.outcome.assigned_topic) {
            outcome["assigned_topic"] = *p.outcome.assigned_topic;
          } else {
            outcome["assigned_topic"] = nullptr;
          }
          outcome["rejection_reason"] = p.outcome.rejection_reason;
          return Json{{"responses", responses}, {"outcome", outcome}};
        } else if constexpr (std::is_same_v<T, SearchStarted>) {
          return Json{{"topic_id", p.topic_id}};
        } else if constexpr (std::is_same_v<T, QueryIssued>) {
          return Json{{"raw", p.raw}, {"rewritten", p.rewritten}};
        } else if constexpr (std::is_same_v<T, SerpShown>) {
          return Json{{"query", p.query}, {"page", p.page}, {"doc_ids", p.doc_ids}};
        } else if constexpr (std::is_same_v<T, DocumentClosed>) {
          Json j{{"doc_id", p.doc_id}};
          if (p.synthetic) j["synthetic"] = true;
          return j;
        } else if constexpr (std::is_same_v<T, SnippetViewed> ||
                             std::is_same_v<T, DocumentOpened> ||
                             std::is_same_v<T, Bookmarked> || std::is_same_v<T, Hidden>) {
          return Json{{"doc_id", p.doc_id}};
        } else if constexpr (std::is_same_v<T, PageChanged>) {
          return Json{{"page", p.page}};
        } else if constexpr (std::is_same_v<T, PostTestSubmitted>) {
          Json responses = Json::array();
          for (const auto& r : p.responses) responses.push_back(to_json(r));
          return Json{{"responses", responses},
                      {"summary", p.summary},
                      {"rejected", p.rejected},
                      {"rejection_reason", p.rejection_reason}};
        } else {
          return Json::object();
        }
      },
      payload);
}

EventPayload payload_from_json(std::string_view kind, const json& j) {
  using namespace events;
  if (!j.is_object()) throw ParseError("payload must be an object", 0, 0);
  auto doc = [&]() { return j.at("doc_id").get<std::string>(); };
  if (kind == "SessionCreated") {
    SessionCreated p;
    p.participant_id = j.at("participant_id").get<std::string>();
    p.strategy = strategy_from_json(j.at("strategy"));
    p.seed = j.at("seed").get<std::uint64_t>();
    p.epoch_unix_ms = j.at("epoch_unix_ms").get<std::int64_t>();
    p.config = config_from_json(j.at("config"));
    const json& pre = j.at("pretest");
    p.pretest.study_topics = pre.at("study_topics").get<std::vector<std::string>>();
    p.pretest.attention_topic = pre.at("attention_topic").get<std::string>();
    for (const auto& item : pre.at("items")) {
      p.pretest.items.push_back(
          {item.at("topic_id").get<std::string>(), item.at("concept").get<std::string>()});
    }
    return p;
  }
  if (kind == "PreTestSubmitted") {
    PreTestSubmitted p;
    for (const auto& r : j.at("responses")) {
      p.responses.push_back({r.at("topic_id").get<std::string>(), vks_record_from_json(r)});
    }
    const json& outcome = j.at("outcome");
    if (!outcome.at("assigned_topic").is_null()) {
      p.outcome.assigned_topic = outcome.at("assigned_topic").get<std::string>();
    }
    p.outcome.rejection_reason = outcome.value("rejection_reason", "");
    return p;
  }
  if (kind == "SearchStarted") return SearchStarted{j.at("topic_id").get<std::string>()};
  if (kind == "SearchEnded") return SearchEnded{};
  if (kind == "PostTestSubmitted") {
    PostTestSubmitted p;
    for (const auto& r : j.at("responses")) p.responses.push_back(vks_record_from_json(r));
    p.summary = j.at("summary").get<std::string>();
    p.rejected = j.value("rejected", false);
    p.rejection_reason = j.value("rejection_reason", "");
    return p;
  }
  if (kind == "QueryIssued") {
    return QueryIssued{j.at("raw").get<std::string>(), j.value("rewritten", j.at("raw").get<std::string>())};
  }
  if (kind == "SerpShown") {
    return SerpShown{j.at("query").get<std::string>(), j.value("page", 1),
                     j.value("doc_ids", std::vector<std::string>{})};
  }
  if (kind == "SnippetViewed") return SnippetViewed{doc()};
  if (kind == "DocumentOpened") return DocumentOpened{doc()};
  if (kind == "DocumentClosed") return DocumentClosed{doc(), j.value("synthetic", false)};
  if (kind == "Bookmarked") return Bookmarked{doc()};
  if (kind == "Hidden") return Hidden{doc()};
  if (kind == "PageChanged") return PageChanged{j.at("page").get<int>()};
  if (kind == "TabSwitch") return TabSwitch{};
  if (kind == "ScaffoldScrolled") return ScaffoldScrolled{};
  throw ParseError("unknown event kind '" + std::string(kind) + "'", 0, 0);
}

bool is_client_kind(std::string_view kind) {
  for (std::string_view k : {"SnippetViewed", "DocumentOpened", "DocumentClosed", "Bookmarked",
                             "Hidden", "TabSwitch", "ScaffoldScrolled"}) {
    if (k == kind) return true;
  }
  return false;
}

Json serp_to_client_json(const Serp& serp, std::string_view raw_query) {
  Json results = Json::array();
  for (const auto& r : serp.results) {
    results.push_back({{"doc_id", r.doc_id},
                       {"title", r.title},
                       {"snippet", r.snippet},
                       {"host", r.host},
                       {"rank", r.rank}});
  }
  return Json{{"query", std::string(raw_query)}, {"page", serp.page}, {"results", results}};
}

Json to_json(const ScaffoldView& view) {
  Json entries = Json::array();
  for (const auto& e : view.entries) {
    entries.push_back({{"id", e.id},
                       {"title", e.title},
                       {"level", e.level},
                       {"fill_fraction", e.fill_fraction}});
  }
  Json j{{"visible", view.visible}};
  if (view.visible) j["topic"] = view.topic_title;
  j["entries"] = entries;
  return j;
}

}  // namespace scaffold
