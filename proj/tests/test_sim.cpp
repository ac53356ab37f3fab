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

#include <chrono>
#include <set>

#include "scaffold/json_codec.hpp"
#include "support.hpp"

namespace scaffold {
namespace {

SimWorld make_world() {
  return SimWorld{testing::study_outlines(), testing::sports(),
                  LocalCorpus(testing::synthetic_docs()), default_blacklist(),
                  LexicalEmbedder(), SessionConfig{}};
}

SimWorld& world() {
  static SimWorld w = make_world();
  return w;
}

std::string topic_for(std::uint64_t seed) {
  const auto& outlines = testing::study_outlines();
  return outlines[seed % outlines.size()].topic_id;
}

StrategyKind strategy_for(std::uint64_t seed) {
  return kAllStrategies[seed % std::size(kAllStrategies)];
}

SimSession run(AgentKind kind, std::uint64_t seed) {
  return run_agent(AgentProfile::defaults(kind, seed), topic_for(seed), strategy_for(seed),
                   world());
}

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("the synthetic corpus is bounded and deterministic") {
  const auto a = synthesize_corpus(testing::study_outlines());
  const auto b = synthesize_corpus(testing::study_outlines());
  CHECK(a == b);
  CHECK(a.size() <= 500);
  CHECK(a.size() > 100);
  std::set<std::string> ids;
  for (const auto& d : a) ids.insert(d.doc_id);
  CHECK(ids.size() == a.size());

  CorpusSynthesisOptions small;
  small.max_docs = 40;
  // The limit is a guarantee, so exceeding it is an error rather than a cut.
  CHECK_THROWS_AS(synthesize_corpus(testing::study_outlines(), small), ConfigError);
  CorpusSynthesisOptions other;
  other.seed = 8;
  CHECK(synthesize_corpus(testing::study_outlines(), other) != a);
}

TEST_CASE("the synthetic corpus exercises the blacklist and the token filter") {
  const auto docs = testing::synthetic_docs();
  const Blacklist blacklist = default_blacklist();
  std::size_t blocked = 0;
  std::size_t thin = 0;
  for (const auto& d : docs) {
    if (blacklist.blocks(parse_url(d.doc_id).value().host)) ++blocked;
    if (DocumentText::from_text(d.doc_id, d.body).tokens.size() <= 50) ++thin;
  }
  CHECK(blocked > 0);
  CHECK(thin > 0);
}

TEST_CASE("agent names round trip") {
  for (AgentKind k : kAllAgents) CHECK(parse_agent(to_string(k)) == k);
  CHECK_FALSE(parse_agent("random").has_value());
}

TEST_CASE("simulated sessions are legal and reproducible") {
  for (AgentKind kind : kAllAgents) {
    CAPTURE(to_string(kind));
    const SimSession a = run(kind, 3);
    const SimSession b = run(kind, 3);
    CHECK(a.log == b.log);
    CHECK(a.state.phase == Phase::Done);
    CHECK(a.state.topic_id == topic_for(3));
    CHECK(a.state.strategy == strategy_for(3));
    CHECK(a.record.behavior.query_count > 0);
    REQUIRE(a.record.learning.has_value());

    // The log alone reproduces the session.
    {
      std::vector<SessionEvent> decoded;
      for (const auto& e : a.log) decoded.push_back(parse_log_line(to_log_line(e)));
      CHECK(decoded == a.log);
    }
    const SimSession c = run(kind, 4);
    CHECK(c.log != a.log);
  }
}

TEST_CASE("agents reproduce the behavioral orderings on every seed") {
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CAPTURE(seed);
    const SimSession free_form = run(AgentKind::FreeForm, seed);
    const SimSession follower = run(AgentKind::OutlineFollower, seed);
    const SimSession chaser = run(AgentKind::GaugeChaser, seed);
    const BehaviorReport& f = free_form.record.behavior;
    const BehaviorReport& o = follower.record.behavior;
    const BehaviorReport& g = chaser.record.behavior;

    CHECK(o.frac_query_terms_from_outline > f.frac_query_terms_from_outline);
    CHECK(o.frac_query_terms_from_outline >= 0.5);
    REQUIRE(g.mean_doc_dwell.has_value());
    REQUIRE(o.mean_doc_dwell.has_value());
    CHECK(*g.mean_doc_dwell < *o.mean_doc_dwell);
    CHECK(g.unique_snippets_viewed > o.unique_snippets_viewed);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(seconds < 60.0);
}

}  // TEST_SUITE

}  // namespace scaffold
