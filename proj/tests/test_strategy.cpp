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

#include <random>

#include "scaffold/error.hpp"
#include "scaffold/progress.hpp"
#include "scaffold/strategy.hpp"
#include "support.hpp"

using namespace scaffold;
using namespace std::chrono_literals;

namespace {

std::vector<std::string> ids(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("l1-" + std::to_string(i));
  return out;
}

}  // namespace

TEST_SUITE("strategy") {

TEST_CASE("six subtopics over thirty minutes change every five minutes") {
  const SliceSchedule s(30min, ids(6));
  CHECK(s.slice_length_ms() == 300000.0);
  for (std::size_t i = 0; i <= 6; ++i) {
    CHECK(s.slice_start_ms(i) == static_cast<std::int64_t>(i) * 300000);
  }
  for (std::size_t i = 0; i < 6; ++i) {
    const std::int64_t start = static_cast<std::int64_t>(i) * 300000;
    CHECK(s.active_index(Millis(start)) == i);
    CHECK(s.active_index(Millis(start + 299999)) == i);
    if (i > 0) CHECK(s.active_index(Millis(start - 1)) == i - 1);
  }
  // Past the plan the last subtopic stays active.
  CHECK(s.active_index(45min) == 5);
}

TEST_CASE("slices are equal and order preserving for 1 to 12 subtopics") {
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const std::int64_t planned =
          trial == 0 ? 1800000 : std::uniform_int_distribution<std::int64_t>(n, 7200000)(rng);
      const SliceSchedule s{Millis(planned), ids(n)};
      INFO("n=" << n << " planned=" << planned);
      CHECK(s.slice_start_ms(0) == 0);
      CHECK(s.slice_start_ms(n) == planned);
      // Integer boundaries: each slice is floor or ceil of planned / n.
      const std::int64_t lo = planned / static_cast<std::int64_t>(n);
      for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t len = s.slice_start_ms(i + 1) - s.slice_start_ms(i);
        CHECK(len >= lo);
        CHECK(len <= lo + 1);
        CHECK(s.active_index(Millis(s.slice_start_ms(i))) == i);
        CHECK(s.active_index(Millis(s.slice_start_ms(i + 1) - 1)) == i);
        CHECK(active_subtopic(s, Millis(s.slice_start_ms(i))) == "l1-" + std::to_string(i));
      }
      if (planned % static_cast<std::int64_t>(n) == 0) {
        for (std::size_t i = 0; i < n; ++i) {
          CHECK(s.slice_start_ms(i + 1) - s.slice_start_ms(i) == lo);
        }
      }
      // Walking the clock never moves backwards through the order.
      std::size_t prev = 0;
      for (std::int64_t t = 0; t < planned + 1000; t += std::max<std::int64_t>(1, planned / 97)) {
        const std::size_t idx = s.active_index(Millis(t));
        CHECK(idx >= prev);
        CHECK(idx <= prev + 1);
        prev = idx;
      }
      CHECK(prev == n - 1);
    }
  }
}

TEST_CASE("schedule takes outline order") {
  const TopicOutline& o = testing::study_outline("business-cycle");
  const SliceSchedule s = SliceSchedule::for_outline(o, 30min);
  REQUIRE(s.l1_order().size() == o.l1.size());
  for (std::size_t i = 0; i < o.l1.size(); ++i) CHECK(s.l1_order()[i] == o.l1[i].id);
}

TEST_CASE("invalid schedules") {
  CHECK_THROWS_AS(SliceSchedule(30min, {}), ConfigError);
  CHECK_THROWS_AS(SliceSchedule(0ms, ids(2)), ConfigError);
  CHECK_THROWS_AS(SliceSchedule(30min, ids(2)).active_index(Millis(-1)), ValidationError);
}

TEST_CASE("only AQE rewrites the query") {
  CHECK(rewrite_query("  housing   bubble ", "Subprime mortgage crisis", "Causes",
                      StrategyKind::Aqe) == "housing bubble Subprime mortgage crisis Causes");
  for (StrategyKind k : {StrategyKind::Control, StrategyKind::Curated, StrategyKind::Feedback}) {
    CHECK(rewrite_query(" housing  bubble", "T", "A", k) == "housing bubble");
  }
  CHECK_THROWS_AS(rewrite_query("   ", "T", "A", StrategyKind::Aqe), ValidationError);
}

TEST_CASE("strategy names round trip") {
  for (StrategyKind k : kAllStrategies) CHECK(parse_strategy(to_string(k)) == k);
  CHECK(parse_strategy(" AQE ") == StrategyKind::Aqe);
  CHECK_FALSE(parse_strategy("random").has_value());
}

TEST_CASE("scaffold visibility and fill by strategy") {
  const TopicOutline& o = testing::study_outline("ethics");
  ProgressState p = ProgressState::for_outline(o);
  p.sums[o.l1[0].id] = 4.0;
  p.sums[o.l1[1].id] = 25.0;

  CHECK_FALSE(scaffold_view(StrategyKind::Control, o, p).visible);
  CHECK(scaffold_view(StrategyKind::Control, o, p).entries.empty());
  CHECK_FALSE(scaffold_view(StrategyKind::Aqe, o, p).visible);

  const ScaffoldView curated = scaffold_view(StrategyKind::Curated, o, p);
  CHECK(curated.visible);
  CHECK(curated.topic_title == o.title);
  REQUIRE(curated.entries.size() == o.total_subtopics());
  for (const auto& e : curated.entries) CHECK(e.fill_fraction == 0.0);

  const ScaffoldView feedback = scaffold_view(StrategyKind::Feedback, o, p);
  REQUIRE(feedback.entries.size() == o.total_subtopics());
  CHECK(feedback.entries[0].id == o.l1[0].id);
  CHECK(feedback.entries[0].level == 1);
  CHECK(feedback.entries[0].fill_fraction == 0.4);
  std::size_t i = 0;
  for (const auto& l1 : o.l1) {
    CHECK(feedback.entries[i].id == l1.id);
    CHECK(feedback.entries[i++].level == 1);
    for (const auto& l2 : l1.children) {
      CHECK(feedback.entries[i].id == l2.id);
      CHECK(feedback.entries[i++].level == 2);
    }
  }
  const auto second = std::find_if(feedback.entries.begin(), feedback.entries.end(),
                                   [&](const ScaffoldEntry& e) { return e.id == o.l1[1].id; });
  REQUIRE(second != feedback.entries.end());
  CHECK(second->fill_fraction == 1.0);
}

TEST_CASE("scaffold view rejects progress for another outline") {
  const TopicOutline& o = testing::study_outline("ethics");
  ProgressState p = ProgressState::for_outline(testing::study_outline("business-cycle"));
  CHECK_THROWS_AS(scaffold_view(StrategyKind::Feedback, o, p), ConsistencyError);
}

}
