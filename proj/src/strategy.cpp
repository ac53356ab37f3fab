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

#include "scaffold/strategy.hpp"

#include <algorithm>

#include "scaffold/error.hpp"
#include "scaffold/text.hpp"

namespace scaffold {

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Control: return "control";
    case StrategyKind::Aqe: return "aqe";
    case StrategyKind::Curated: return "curated";
    case StrategyKind::Feedback: return "feedback";
  }
  return "control";
}

std::optional<StrategyKind> parse_strategy(std::string_view name) {
  const std::string key = to_lower_ascii(trim(name));
  for (StrategyKind kind : kAllStrategies) {
    if (to_string(kind) == key) return kind;
  }
  return std::nullopt;
}

SliceSchedule::SliceSchedule(Millis planned_duration,
                             std::vector<std::string> l1_order)
    : planned_(planned_duration), order_(std::move(l1_order)) {
  if (order_.empty()) throw ConfigError("slice schedule needs at least one L1 subtopic");
  if (planned_.count() <= 0) throw ConfigError("planned duration must be positive");
}

SliceSchedule SliceSchedule::for_outline(const TopicOutline& outline,
                                         Millis planned_duration) {
  std::vector<std::string> order;
  order.reserve(outline.l1.size());
  for (const auto& sub : outline.l1) order.push_back(sub.id);
  return SliceSchedule(planned_duration, std::move(order));
}

double SliceSchedule::slice_length_ms() const {
  return static_cast<double>(planned_.count()) / static_cast<double>(order_.size());
}

std::int64_t SliceSchedule::slice_start_ms(std::size_t i) const {
  // ceil(i * planned / n): the first millisecond that belongs to slice i.
  const auto n = static_cast<std::int64_t>(order_.size());
  const std::int64_t num = static_cast<std::int64_t>(i) * planned_.count();
  return (num + n - 1) / n;
}

std::size_t SliceSchedule::active_index(Millis elapsed) const {
  if (elapsed.count() < 0) throw ValidationError("elapsed time must be non-negative");
  // floor(elapsed / (planned / n)) == floor(elapsed * n / planned)
  const auto n = static_cast<std::int64_t>(order_.size());
  const std::int64_t index = elapsed.count() * n / planned_.count();
  return static_cast<std::size_t>(std::min<std::int64_t>(index, n - 1));
}

const std::string& active_subtopic(const SliceSchedule& schedule, Millis elapsed) {
  return schedule.l1_order()[schedule.active_index(elapsed)];
}

std::string rewrite_query(std::string_view raw_query, std::string_view topic_title,
                          std::string_view active_title, StrategyKind kind) {
  std::string query = collapse_whitespace(raw_query);
  if (query.empty()) throw ValidationError("query must not be empty");
  if (kind != StrategyKind::Aqe) return query;
  std::string rewritten = query;
  rewritten += ' ';
  rewritten += topic_title;
  rewritten += ' ';
  rewritten += active_title;
  return collapse_whitespace(rewritten);
}

ScaffoldView scaffold_view(StrategyKind kind, const TopicOutline& outline,
                           const ProgressState& progress) {
  ScaffoldView view;
  if (kind == StrategyKind::Control || kind == StrategyKind::Aqe) return view;
  view.visible = true;
  view.topic_title = outline.title;
  for (const Subtopic* sub : outline.subtopics()) {
    if (!progress.sums.contains(sub->id)) {
      throw ConsistencyError("progress has no entry for subtopic '" + sub->id + "'");
    }
    ScaffoldEntry entry{sub->id, sub->title, sub->level, 0.0};
    if (kind == StrategyKind::Feedback) entry.fill_fraction = fill_fraction(progress, sub->id);
    view.entries.push_back(std::move(entry));
  }
  if (progress.sums.size() != view.entries.size()) {
    throw ConsistencyError("progress tracks subtopics outside the outline");
  }
  return view;
}

}  // namespace scaffold
