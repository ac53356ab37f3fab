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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scaffold/outline.hpp"
#include "scaffold/progress.hpp"

namespace scaffold {

using Millis = std::chrono::milliseconds;

enum class StrategyKind { Control, Aqe, Curated, Feedback };

inline constexpr StrategyKind kAllStrategies[] = {
    StrategyKind::Control, StrategyKind::Aqe, StrategyKind::Curated,
    StrategyKind::Feedback};

std::string_view to_string(StrategyKind kind);
// Accepts "control", "aqe", "curated", "feedback" in any case.
std::optional<StrategyKind> parse_strategy(std::string_view name);

// Time-sliced rotation over the L1 subtopics for query expansion.
class SliceSchedule {
 public:
  SliceSchedule(Millis planned_duration, std::vector<std::string> l1_order);
  static SliceSchedule for_outline(const TopicOutline& outline,
                                   Millis planned_duration);

  Millis planned_duration() const { return planned_; }
  // Exact slice length is planned / |L1|; boundaries are computed with
  // integer arithmetic so they never drift.
  double slice_length_ms() const;
  // Start of slice i, in ms, for i in [0, |L1|].
  std::int64_t slice_start_ms(std::size_t i) const;
  const std::vector<std::string>& l1_order() const { return order_; }

  std::size_t active_index(Millis elapsed) const;

 private:
  Millis planned_;
  std::vector<std::string> order_;
};

// The L1 id whose slice contains `elapsed`, clamped to the last slice once
// the plan overruns.
const std::string& active_subtopic(const SliceSchedule& schedule, Millis elapsed);

// For Aqe, "<query> <topic> <active>" with whitespace collapsed; any other
// kind returns the trimmed query. Throws ValidationError on a blank query.
std::string rewrite_query(std::string_view raw_query, std::string_view topic_title,
                          std::string_view active_title, StrategyKind kind);

struct ScaffoldEntry {
  std::string id;
  std::string title;
  int level = 1;
  double fill_fraction = 0.0;

  friend bool operator==(const ScaffoldEntry&, const ScaffoldEntry&) = default;
};

struct ScaffoldView {
  bool visible = false;
  std::string topic_title;
  std::vector<ScaffoldEntry> entries;

  friend bool operator==(const ScaffoldView&, const ScaffoldView&) = default;
};

ScaffoldView scaffold_view(StrategyKind kind, const TopicOutline& outline,
                           const ProgressState& progress);

}  // namespace scaffold
