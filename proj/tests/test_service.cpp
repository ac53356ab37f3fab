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


#include <doctest.h>

#include <thread>

#include "service_rig.hpp"

// After the scaffold headers: httplib pulls in resolv.h, whose `_res` macro
// breaks Eigen if it comes first.
#include <httplib.h>

namespace scaffold {
namespace {

using testing::event;
using testing::fixture;
using testing::kMinute;
using testing::Reply;
using testing::ServiceRig;

}  // namespace

TEST_SUITE("service") {

TEST_CASE("health and session creation") {
  ServiceRig rig;
  const Reply health = rig.call("GET", "/healthz");
  CHECK(health.status == 200);
  CHECK(health.body["backend"] == "local");
  CHECK(health.body["sessions"] == 0);

  const Reply created = rig.call("POST", "/sessions", {{"participant_id", "p1"}});
  REQUIRE(created.status == 201);
  CHECK(created.body["phase"] == "PreTest");
  CHECK(created.body["pretest"]["items"].size() == 30);
  CHECK(created.body["pretest"]["items"][0].contains("concept"));
  // Which topics are the study topics is not revealed to the client.
  CHECK_FALSE(created.body["pretest"].contains("study_topics"));
  CHECK(rig.call("GET", "/healthz").body["sessions"] == 1);

  CHECK(rig.call("POST", "/sessions", {{"participant_id", "p1"}}).status == 422);
  CHECK(rig.call("POST", "/sessions", {{"participant_id", "p2"}, {"strategy", "bogus"}}).status ==
        422);
  CHECK(rig.call("POST", "/sessions", Json::object()).status == 422);
  CHECK(rig.service().handle("POST", "/sessions", "{oops").status == 400);
  CHECK(rig.service().handle("POST", "/sessions", "[1, 2]").status == 400);
  const Reply aqe = rig.call("POST", "/sessions", {{"participant_id", "p3"}, {"strategy", "aqe"}});
  REQUIRE(aqe.status == 201);
  CHECK(rig.service().engine().snapshot(aqe.body["session_id"]).strategy == StrategyKind::Aqe);
}

TEST_CASE("the pre-test assigns the weaker topic or rejects on attention") {
  ServiceRig rig;
  const std::string id = rig.create("p1", "curated");
  const PreTestBundle b = rig.bundle(id);
  CHECK(rig.pretest(id, [](const VksItem&) { return 3; }, 1).status == 422);
  const Reply r = rig.pretest(id, [&](const VksItem& item) {
    if (item.topic_id == b.attention_topic) return 2;
    return item.topic_id == b.study_topics[1] ? 1 : 4;
  });
  REQUIRE(r.status == 200);
  CHECK(r.body["phase"] == "Search");
  CHECK(r.body["assigned_topic"]["topic_id"] == b.study_topics[1]);
  CHECK(r.body["assigned_topic"]["title"] == testing::study_outline(b.study_topics[1]).title);
  CHECK(rig.pretest(id, [](const VksItem&) { return 3; }).status == 409);

  const std::string low = rig.create("p2", "curated");
  const PreTestBundle lb = rig.bundle(low);
  const Reply rejected = rig.pretest(low, [&](const VksItem& item) {
    return item.topic_id == lb.attention_topic ? 1 : 3;
  });
  REQUIRE(rejected.status == 200);
  CHECK(rejected.body["phase"] == "Rejected");
  CHECK(rejected.body["assigned_topic"].is_null());
  CHECK_FALSE(rejected.body["rejection_reason"].get<std::string>().empty());
  CHECK(rig.call("POST", "/sessions/" + low + "/query", {{"query", "x"}}).status == 409);
}

TEST_CASE("queries return the raw query and the strategy's scaffold") {
  ServiceRig rig;
  const std::string control = rig.searching("p1", "control");
  const Reply rc = rig.call("POST", "/sessions/" + control + "/query", {{"query", "history"}});
  REQUIRE(rc.status == 200);
  CHECK(rc.body["scaffold"]["visible"] == false);
  CHECK(rc.body["scaffold"]["entries"].empty());
  CHECK(rc.body["query_history"] == Json::array({"history"}));
  const Reply report = rig.call("GET", "/sessions/" + control + "/report");
  REQUIRE(report.status == 200);
  CHECK(report.body["behavior"]["query_count"] == 1);
  CHECK(report.body["phase"] == "Search");

  const std::string aqe = rig.searching("p2", "aqe");
  const SessionState s = rig.service().engine().snapshot(aqe);
  const std::string title = testing::study_outline(s.topic_id).title;
  const Reply ra = rig.call("POST", "/sessions/" + aqe + "/query", {{"query", "history"}});
  REQUIRE(ra.status == 200);
  CHECK(ra.body["serp"]["query"] == "history");
  CHECK(ra.body["scaffold"]["visible"] == false);
  // The rewritten form never reaches the client.
  const SessionState after = rig.service().engine().snapshot(aqe);
  const auto* issued = after.event_log[after.event_log.size() - 2].as<events::QueryIssued>();
  REQUIRE(issued != nullptr);
  CHECK(issued->rewritten.find(title) != std::string::npos);
  CHECK(ra.body.dump().find(issued->rewritten) == std::string::npos);
  CHECK(rig.service().engine().snapshot(aqe).event_log.back().as<events::SerpShown>()->query ==
        "history");

  const std::string feedback = rig.searching("p3", "feedback");
  const Reply rf = rig.call("POST", "/sessions/" + feedback + "/query", {{"query", "history"}});
  CHECK(rf.body["scaffold"]["visible"] == true);
  CHECK_FALSE(rf.body["scaffold"]["entries"].empty());
  const Reply scaffold = rig.call("GET", "/sessions/" + feedback + "/scaffold");
  CHECK(scaffold.status == 200);
  CHECK(scaffold.body == rf.body["scaffold"]);

  const Reply page2 =
      rig.call("POST", "/sessions/" + feedback + "/query", {{"query", "history"}, {"page", 2}});
  CHECK(page2.status == 200);
  CHECK(page2.body["serp"]["page"] == 2);
  CHECK(rig.call("POST", "/sessions/" + feedback + "/query", {{"query", " "}}).status == 422);
  CHECK(rig.call("POST", "/sessions/" + feedback + "/query", {{"page", 1}}).status == 422);
}

TEST_CASE("the search cannot end before the minimum task time") {
  ServiceRig rig;
  const std::string id = rig.searching("p1", "curated");
  rig.advance(12 * kMinute);
  const Reply early = rig.call("POST", "/sessions/" + id + "/finish");
  CHECK(early.status == 409);
  CHECK(early.body["remaining_ms"] == 18 * kMinute);
  const Reply status = rig.call("GET", "/sessions/" + id);
  CHECK(status.body["phase"] == "Search");
  CHECK(status.body["remaining_ms"] == 18 * kMinute);
  CHECK(status.body["elapsed_ms"] == 12 * kMinute);
  CHECK(status.body["may_finish"] == false);
  CHECK(rig.posttest(id, 100).status == 409);

  rig.advance(18 * kMinute);
  CHECK(rig.call("GET", "/sessions/" + id).body["may_finish"] == true);
  const Reply done = rig.call("POST", "/sessions/" + id + "/finish");
  REQUIRE(done.status == 200);
  CHECK(done.body["phase"] == "PostTest");
  CHECK(done.body["posttest"]["items"].size() == 10);
}

TEST_CASE("post-test submissions are checked for completeness and summary length") {
  ServiceRig rig;
  const std::string id = rig.searching("p1", "curated");
  rig.advance(30 * kMinute);
  const Reply short_summary = rig.posttest(id, 99);
  CHECK(short_summary.status == 422);
  CHECK(short_summary.body["error"].get<std::string>().find("99") != std::string::npos);
  CHECK(rig.posttest(id, 100, 1).status == 422);
  const Reply ok = rig.posttest(id, 100);
  REQUIRE(ok.status == 200);
  CHECK(ok.body["phase"] == "Done");
  const Reply report = rig.call("GET", "/sessions/" + id + "/report");
  CHECK(report.body["phase"] == "Done");
  CHECK(report.body["learning"].is_object());
}

TEST_CASE("client events are acknowledged and too many tab switches reject") {
  ServiceRig rig;
  const std::string id = rig.searching("p1", "feedback");
  const Reply q = rig.call("POST", "/sessions/" + id + "/query", {{"query", "overview"}});
  REQUIRE_FALSE(q.body["serp"]["results"].empty());
  const std::string doc = q.body["serp"]["results"][0]["doc_id"];
  const Json batch = {{"events",
                       {event(1, "SnippetViewed", {{"doc_id", doc}}),
                        event(2, "DocumentOpened", {{"doc_id", doc}}),
                        event(3, "TabSwitch"), event(4, "TabSwitch")}}};
  const Reply first = rig.call("POST", "/sessions/" + id + "/events", batch);
  REQUIRE(first.status == 200);
  CHECK(first.body["accepted"] == 4);
  CHECK(first.body["last_client_seq"] == 4);
  const Reply again = rig.call("POST", "/sessions/" + id + "/events", batch);
  CHECK(again.body["accepted"] == 0);

  CHECK(rig.call("POST", "/sessions/" + id + "/events",
                 {{"events", {event(5, "QueryIssued", {{"raw", "x"}})}}})
            .status == 422);
  CHECK(rig.call("POST", "/sessions/" + id + "/events",
                 {{"events", {event(5, "DocumentClosed", {{"doc_id", "never-opened"}})}}})
            .status == 422);

  rig.advance(kMinute);
  const Reply more = rig.call(
      "POST", "/sessions/" + id + "/events",
      {{"events", {event(5, "DocumentClosed", {{"doc_id", doc}}), event(6, "TabSwitch"),
                   event(7, "TabSwitch")}}});
  CHECK(more.body["accepted"] == 3);
  rig.advance(30 * kMinute);
  const Reply post = rig.posttest(id, 100);
  REQUIRE(post.status == 200);
  CHECK(post.body["phase"] == "Rejected");
  CHECK(rig.call("GET", "/sessions/" + id + "/report").body["rejected"] == true);
}

TEST_CASE("unknown routes, sessions and methods") {
  ServiceRig rig;
  const std::string id = rig.create("p1", "control");
  CHECK(rig.call("GET", "/nothing").status == 404);
  CHECK(rig.call("GET", "/").status == 404);
  CHECK(rig.call("GET", "/sessions/missing").status == 404);
  CHECK(rig.call("POST", "/sessions/missing/query", {{"query", "x"}}).status == 404);
  CHECK(rig.call("POST", "/sessions/" + id + "/teleport").status == 404);
  CHECK(rig.call("GET", "/sessions/" + id + "/a/b").status == 404);
  CHECK(rig.call("GET", "/sessions").status == 405);
  CHECK(rig.call("POST", "/sessions/" + id).status == 405);
  CHECK(rig.call("POST", "/sessions/" + id + "/report").status == 405);
  CHECK(rig.call("GET", "/sessions/" + id + "/query").status == 405);
  CHECK(rig.call("GET", "/sessions/" + id + "/finish").status == 405);
  CHECK(rig.call("GET", "/sessions/" + id + "/scaffold").status == 409);
}

TEST_CASE("sessions survive a restart") {
  ServiceRig rig;
  const std::string id = rig.searching("p1", "feedback");
  rig.call("POST", "/sessions/" + id + "/query", {{"query", "overview"}});
  rig.call("POST", "/sessions/" + id + "/events", {{"events", {event(1, "TabSwitch")}}});
  const SessionState before = rig.service().engine().snapshot(id);

  rig.restart();
  CHECK(rig.service().recovered() == 1);
  CHECK(rig.service().engine().snapshot(id) == before);
  const Reply status = rig.call("GET", "/sessions/" + id);
  CHECK(status.body["phase"] == "Search");
  CHECK(status.body["query_history"] == Json::array({"overview"}));
  CHECK(rig.call("POST", "/sessions", {{"participant_id", "p1"}}).status == 422);
  CHECK(rig.call("POST", "/sessions/" + id + "/events", {{"events", {event(1, "TabSwitch")}}})
            .body["accepted"] == 0);

  rig.advance(30 * kMinute);
  CHECK(rig.posttest(id, 100).body["phase"] == "Done");
  rig.restart();
  CHECK(rig.call("GET", "/sessions/" + id).body["phase"] == "Done");
}

TEST_CASE("a bad configuration refuses to start") {
  ServiceRig rig;
  ServiceConfig config = rig.config();
  config.corpus.reset();
  CHECK_THROWS_AS(Service{config}, ConfigError);
  config = rig.config();
  config.attention = fixture("outlines/ethics/outline.yaml");
  CHECK_THROWS_AS(Service{config}, ConfigError);
}

TEST_CASE("the API answers over HTTP") {
  ServiceRig rig;
  const int port = rig.service().bind();
  REQUIRE(port > 0);
  std::thread server([&] { rig.service().listen(); });

  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);
  httplib::Result health;
  for (int i = 0; i < 100 && !(health = client.Get("/healthz")); ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(health->get_header_value("Content-Type") == "application/json");

  auto created = client.Post("/sessions", Json{{"participant_id", "p-http"}}.dump(),
                             "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  const std::string id = Json::parse(created->body)["session_id"];
  auto status = client.Get("/sessions/" + id);
  REQUIRE(status);
  CHECK(Json::parse(status->body)["phase"] == "PreTest");
  auto missing = client.Get("/sessions/none");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  rig.service().stop();
  server.join();
}

}  // TEST_SUITE

}  // namespace scaffold
