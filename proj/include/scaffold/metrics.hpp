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
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scaffold/events.hpp"
#include "scaffold/outline.hpp"
#include "scaffold/strategy.hpp"
#include "scaffold/vks.hpp"

namespace scaffold {

struct LearningReport {
  std::string participant_id;
  std::string topic_id;
  double alg = 0.0;
  double mlg = 0.0;
  std::optional<double> rpl;  // undefined when mlg == 0

  friend bool operator==(const LearningReport&, const LearningReport&) = default;
};

// ALG = mean(max(0, post - pre)), MLG = mean(2 - pre), RPL = ALG / MLG, with
// post records matched to pre records by concept.
LearningReport learning_report(std::span<const VksRecord> pre,
                               std::span<const VksRecord> post,
                               std::string participant_id = {},
                               std::string topic_id = {});

struct OutlineFractions {
  double from_outline = 0.0;     // |Q ∩ T| / |Q|
  double outline_covered = 0.0;  // |Q ∩ T| / |T|

  friend bool operator==(const OutlineFractions&, const OutlineFractions&) = default;
};

// Q is the pooled normalized term set of all queries, T the outline terms.
OutlineFractions query_outline_fractions(std::span<const std::string> queries,
                                         const TopicOutline& outline);
OutlineFractions query_outline_fractions(std::span<const std::string> queries,
                                         const TokenSet& outline_terms);

// Durations in seconds. Means over empty sets are undefined.
struct BehaviorReport {
  std::size_t query_count = 0;
  double frac_query_terms_from_outline = 0.0;
  double frac_outline_terms_queried = 0.0;
  std::optional<double> mean_time_between_queries;
  std::optional<double> mean_gap_doc_close_to_next_open;
  std::optional<double> mean_doc_dwell;
  std::size_t unique_docs_viewed = 0;
  std::size_t unique_snippets_viewed = 0;
  std::size_t bookmark_count = 0;
  // First QueryIssued to last DocumentClosed.
  std::optional<double> session_duration;

  friend bool operator==(const BehaviorReport&, const BehaviorReport&) = default;
};

// Documents still open at the end of the log are closed at the timestamp of
// the last event.
BehaviorReport behavior_report(std::span<const SessionEvent> log,
                               const TopicOutline& outline);

struct TimeBucket {
  std::size_t query_count = 0;
  OutlineFractions fractions;
  double mean_query_length = 0.0;  // tokens per query, stopwords included

  friend bool operator==(const TimeBucket&, const TimeBucket&) = default;
};

// Buckets anchored at the first query; empty buckets are nullopt.
struct TimeBucketSeries {
  Millis bucket_length{std::chrono::minutes(5)};
  std::vector<std::optional<TimeBucket>> buckets;

  friend bool operator==(const TimeBucketSeries&, const TimeBucketSeries&) = default;
};

TimeBucketSeries time_bucketed(std::span<const SessionEvent> log,
                               const TopicOutline& outline,
                               Millis bucket_length = std::chrono::minutes(5));

// Everything the cohort tables need about one session.
struct SessionRecord {
  std::string session_id;
  std::string participant_id;
  std::string topic_id;
  StrategyKind strategy = StrategyKind::Control;
  bool rejected = false;
  std::optional<LearningReport> learning;
  BehaviorReport behavior;
  TimeBucketSeries buckets;
};

enum class Grouping { Strategy, Topic, StrategyTopic };

struct MetricStats {
  std::size_t n = 0;         // values included
  std::size_t excluded = 0;  // undefined values left out
  std::optional<double> mean;
  std::optional<double> sd;  // sample sd; 0 when n == 1
  bool single = false;       // n == 1, sd reported as 0 by convention

  friend bool operator==(const MetricStats&, const MetricStats&) = default;
};

// Metric columns in summary order.
struct MetricDef {
  const char* key;
  const char* label;
};
std::span<const MetricDef> cohort_metrics();

struct CohortCell {
  std::string strategy;  // empty when grouping by topic only
  std::string topic;     // empty when grouping by strategy only
  std::size_t sessions = 0;
  std::vector<MetricStats> metrics;  // parallel to cohort_metrics()

  bool empty() const { return sessions == 0; }
};

MetricStats summarize(std::span<const std::optional<double>> values);

// Unweighted per-cell mean and sample sd of every metric. Rejected sessions
// are left out. Strategy cells always cover all four conditions; empty cells
// stay in the table, marked empty.
std::vector<CohortCell> cohort_summary(std::span<const SessionRecord> records,
                                       Grouping grouping);

}  // namespace scaffold
