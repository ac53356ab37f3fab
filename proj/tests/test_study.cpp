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

#include <map>
#include <set>

#include "scaffold/error.hpp"
#include "scaffold/study.hpp"
#include "support.hpp"

using namespace scaffold;
using scaffold::testing::answer_pretest;
using scaffold::testing::sports;
using scaffold::testing::study_outlines;
using scaffold::testing::vks;

namespace {

PreTestBundle bundle_for(std::uint64_t seed) {
  Rng rng = make_rng(seed, 1);
  return start_pretest(study_outlines(), sports(), rng);
}

// Levels per topic: attention, first study topic, second study topic.
std::vector<VksResponse> answers(const PreTestBundle& b, int attention, int first, int second) {
  return answer_pretest(b, [&](const VksItem& item) {
    if (item.topic_id == b.attention_topic) return attention;
    return item.topic_id == b.study_topics[0] ? first : second;
  });
}

}  // namespace

TEST_SUITE("study") {

TEST_CASE("pre-test draws two distinct topics plus the attention topic") {
  std::set<std::string> drawn;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const PreTestBundle b = bundle_for(seed);
    REQUIRE(b.study_topics.size() == 2);
    CHECK(b.study_topics[0] != b.study_topics[1]);
    CHECK(b.attention_topic == "sports");
    CHECK(b.items.size() == 30);
    std::map<std::string, int> per_topic;
    std::set<std::pair<std::string, std::string>> unique;
    for (const auto& item : b.items) {
      ++per_topic[item.topic_id];
      unique.emplace(item.topic_id, item.term);
    }
    CHECK(unique.size() == 30);
    CHECK(per_topic.size() == 3);
    for (const auto& [topic, n] : per_topic) CHECK(n == 10);
    drawn.insert(b.study_topics.begin(), b.study_topics.end());
  }
  CHECK(drawn.size() == study_outlines().size());
  // Same seed, same bundle.
  CHECK(bundle_for(7) == bundle_for(7));
}

TEST_CASE("pre-test pool problems are configuration errors") {
  Rng rng = make_rng(1, 1);
  CHECK_THROWS_AS(start_pretest(std::span(study_outlines()).first(1), sports(), rng), ConfigError);
  std::vector<TopicOutline> pool = {study_outlines()[0], sports()};
  CHECK_THROWS_AS(start_pretest(pool, sports(), rng), ConfigError);
}

TEST_CASE("test concepts are the first ten") {
  const TopicOutline& nihl = testing::study_outline("noise-induced-hearing-loss");
  REQUIRE(nihl.concepts.size() == 11);
  const auto c = test_concepts(nihl);
  CHECK(c.size() == 10);
  CHECK(c.front() == "acoustic trauma");
  CHECK(c.back() == "tinnitus");
  TopicOutline short_topic = nihl;
  short_topic.concepts.resize(9);
  CHECK_THROWS_AS(test_concepts(short_topic), ConfigError);
}

TEST_CASE("attention topic below both study topics rejects the participant") {
  const PreTestBundle b = bundle_for(3);
  Rng tie = make_rng(3, 2);
  // Attention all level 1 (score 0), study topics level 3 (score 10 each).
  const PreTestOutcome out = assign_topic(b, answers(b, 1, 3, 3), tie);
  CHECK(out.rejected());
  CHECK(out.rejection_reason.find("attention") != std::string::npos);
}

TEST_CASE("attention equal to one study topic is not rejected") {
  const PreTestBundle b = bundle_for(3);
  Rng tie = make_rng(3, 2);
  const PreTestOutcome out = assign_topic(b, answers(b, 3, 3, 4), tie);
  REQUIRE_FALSE(out.rejected());
  CHECK(*out.assigned_topic == b.study_topics[0]);
}

TEST_CASE("the less familiar study topic is assigned") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PreTestBundle b = bundle_for(seed);
    Rng tie = make_rng(seed, 2);
    CHECK(*assign_topic(b, answers(b, 4, 2, 3), tie).assigned_topic == b.study_topics[0]);
    CHECK(*assign_topic(b, answers(b, 4, 4, 3), tie).assigned_topic == b.study_topics[1]);
  }
}

TEST_CASE("mixed levels: lowest sum wins") {
  const PreTestBundle b = bundle_for(21);
  std::map<std::string, int> sums;
  std::vector<VksResponse> responses;
  int i = 0;
  for (const auto& item : b.items) {
    const int level = item.topic_id == b.attention_topic ? 4 : 1 + (i++ * 7) % 4;
    responses.push_back({item.topic_id, vks(item.term, level)});
    sums[item.topic_id] += level == 4 ? 2 : level == 3 ? 1 : 0;
  }
  CHECK(knowledge_sums(responses) == sums);
  Rng tie = make_rng(21, 2);
  const PreTestOutcome out = assign_topic(b, responses, tie);
  const int s0 = sums[b.study_topics[0]], s1 = sums[b.study_topics[1]];
  if (s0 != s1) CHECK(*out.assigned_topic == (s0 < s1 ? b.study_topics[0] : b.study_topics[1]));
}

TEST_CASE("ties are broken by the seeded stream and both outcomes occur") {
  std::set<std::string> winners;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    const PreTestBundle b = bundle_for(seed);
    Rng t1 = make_rng(seed, 2), t2 = make_rng(seed, 2);
    const auto a = assign_topic(b, answers(b, 4, 3, 3), t1);
    CHECK(a == assign_topic(b, answers(b, 4, 3, 3), t2));
    winners.insert(*a.assigned_topic == b.study_topics[0] ? "first" : "second");
  }
  CHECK(winners.size() == 2);
}

TEST_CASE("pre-test must answer exactly the bundle") {
  const PreTestBundle b = bundle_for(5);
  Rng tie = make_rng(5, 2);
  auto r = answers(b, 4, 1, 3);
  auto missing = r;
  missing.pop_back();
  CHECK_THROWS_AS(assign_topic(b, missing, tie), ValidationError);
  auto dup = r;
  dup.back() = dup.front();
  CHECK_THROWS_AS(assign_topic(b, dup, tie), ValidationError);
  auto foreign = r;
  foreign.back().record.term = "not an item";
  CHECK_THROWS_AS(assign_topic(b, foreign, tie), ValidationError);
  auto bad_level = r;
  bad_level.front().record = VksRecord{bad_level.front().record.term, 3, std::nullopt};
  CHECK_THROWS_AS(assign_topic(b, bad_level, tie), ValidationError);
}

TEST_CASE("summary gate is 100 words") {
  const auto concepts = test_concepts(study_outlines()[0]);
  const auto responses = testing::answer_posttest(concepts, 2);
  CHECK_THROWS_AS(validate_posttest(concepts, responses, testing::words(99)), ValidationError);
  CHECK_NOTHROW(validate_posttest(concepts, responses, testing::words(100)));
  try {
    validate_posttest(concepts, responses, testing::words(99));
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("99") != std::string::npos);
  }
}

TEST_CASE("post-test needs all ten concepts once") {
  const auto concepts = test_concepts(study_outlines()[0]);
  auto responses = testing::answer_posttest(concepts, 1);
  const std::string summary = testing::words(120);
  auto nine = responses;
  nine.pop_back();
  CHECK_THROWS_AS(validate_posttest(concepts, nine, summary), ValidationError);
  auto dup = responses;
  dup[9] = dup[0];
  CHECK_THROWS_AS(validate_posttest(concepts, dup, summary), ValidationError);
  auto foreign = responses;
  foreign[0].term = "elsewhere";
  CHECK_THROWS_AS(validate_posttest(concepts, foreign, summary), ValidationError);
}

TEST_CASE("participants hold one session") {
  ParticipantRegistry reg;
  reg.enroll("p1", "s1");
  CHECK_NOTHROW(reg.enroll("p1", "s1"));
  CHECK_THROWS_AS(reg.enroll("p1", "s2"), ValidationError);
  CHECK(reg.session_of("p1") == "s1");
  CHECK_FALSE(reg.session_of("p2").has_value());
  reg.release("p1", "s1");
  CHECK(reg.size() == 0);
  CHECK_THROWS_AS(reg.enroll("", "s3"), ValidationError);
}

}
