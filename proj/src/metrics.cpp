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

#include "scaffold/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "scaffold/error.hpp"

namespace scaffold {

void VksRecord::validate() const {
  if (level < 1 || level > 4) {
    throw ValidationError("VKS level for '" + term + "' must be in 1..4, got " +
                          std::to_string(level));
  }
  const bool has_definition = definition.has_value() && !trim(*definition).empty();
  if (level >= 3 && !has_definition) {
    throw ValidationError("VKS level " + std::to_string(level) + " for '" + term +
                          "' requires a definition");
  }
  if (level <= 2 && definition.has_value()) {
    throw ValidationError("VKS level " + std::to_string(level) + " for '" + term +
                          "' must not carry a definition");
  }
}

int vks_to_score(int level) {
  switch (level) {
    case 1:
    case 2: return 0;
    case 3: return 1;
    case 4: return 2;
    default:
      throw ValidationError("VKS level must be in 1..4, got " + std::to_string(level));
  }
}

LearningReport learning_report(std::span<const VksRecord> pre,
                               std::span<const VksRecord> post,
                               std::string participant_id, std::string topic_id) {
  if (pre.empty()) throw ValidationError("learning report needs at least one concept");
  if (pre.size() != post.size()) {
    throw ValidationError("pre-test has " + std::to_string(pre.size()) +
                          " concepts, post-test " + std::to_string(post.size()));
  }
  std::map<std::string, int> post_scores;
  for (const auto& r : post) {
    if (!post_scores.emplace(r.term, vks_to_score(r.level)).second) {
      throw ValidationError("duplicate post-test concept '" + r.term + "'");
    }
  }
  std::set<std::string> seen;
  int gain = 0;
  int headroom = 0;
  for (const auto& r : pre) {
    if (!seen.insert(r.term).second) {
      throw ValidationError("duplicate pre-test concept '" + r.term + "'");
    }
    auto it = post_scores.find(r.term);
    if (it == post_scores.end()) {
      throw ValidationError("concept '" + r.term + "' missing from post-test");
    }
    const int before = vks_to_score(r.level);
    gain += std::max(0, it->second - before);
    headroom += 2 - before;
  }
  const double n = static_cast<double>(pre.size());
  LearningReport report;
  report.participant_id = std::move(participant_id);
  report.topic_id = std::move(topic_id);
  report.alg = gain / n;
  report.mlg = headroom / n;
  if (report.mlg > 0.0) report.rpl = report.alg / report.mlg;
  return report;
}

OutlineFractions query_outline_fractions(std::span<const std::string> queries,
                                         const TokenSet& outline_terms) {
  TokenSet q;
  for (const auto& query : queries) {
    for (auto& t : normalize(query)) q.insert(std::move(t));
  }
  std::size_t shared = 0;
  for (const auto& t : q) shared += outline_terms.count(t);
  OutlineFractions f;
  if (!q.empty()) f.from_outline = static_cast<double>(shared) / static_cast<double>(q.size());
  if (!outline_terms.empty()) {
    f.outline_covered = static_cast<double>(shared) / static_cast<double>(outline_terms.size());
  }
  return f;
}

OutlineFractions query_outline_fractions(std::span<const std::string> queries,
                                         const TopicOutline& outline) {
  return query_outline_fractions(queries, outline_term_set(outline));
}

namespace {

std::optional<double> mean_of(const std::vector<double>& values) {
  if (values.empty()) return std::nullopt;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

BehaviorReport behavior_report(std::span<const SessionEvent> log,
                               const TopicOutline& outline) {
  BehaviorReport report;
  std::vector<std::string> queries;
  std::vector<std::int64_t> query_ts;
  std::map<std::string, std::int64_t> open;
  std::map<std::string, std::int64_t> dwell;
  std::vector<std::int64_t> pending_closes;
  std::vector<double> gaps;
  std::set<std::string> snippets;
  std::set<std::string> bookmarks;
  std::optional<std::int64_t> last_close;
  std::int64_t last_ts = 0;

  auto close = [&](const std::string& doc, std::int64_t ts) {
    auto it = open.find(doc);
    if (it == open.end()) return;
    dwell[doc] += ts - it->second;
    open.erase(it);
    pending_closes.push_back(ts);
    last_close = last_close ? std::max(*last_close, ts) : ts;
  };

  for (const SessionEvent& e : log) {
    last_ts = std::max(last_ts, e.ts_ms);
    if (auto q = e.as<events::QueryIssued>()) {
      queries.push_back(q->raw);
      query_ts.push_back(e.ts_ms);
    } else if (auto s = e.as<events::SnippetViewed>()) {
      snippets.insert(s->doc_id);
    } else if (auto o = e.as<events::DocumentOpened>()) {
      for (std::int64_t c : pending_closes) gaps.push_back((e.ts_ms - c) / 1000.0);
      pending_closes.clear();
      if (!open.contains(o->doc_id)) open.emplace(o->doc_id, e.ts_ms);
      dwell.try_emplace(o->doc_id, 0);
    } else if (auto c = e.as<events::DocumentClosed>()) {
      close(c->doc_id, e.ts_ms);
    } else if (auto b = e.as<events::Bookmarked>()) {
      bookmarks.insert(b->doc_id);
    } else if (auto h = e.as<events::Hidden>()) {
      bookmarks.erase(h->doc_id);
    }
  }
  while (!open.empty()) close(open.begin()->first, last_ts);

  const OutlineFractions f = query_outline_fractions(queries, outline);
  report.query_count = queries.size();
  report.frac_query_terms_from_outline = f.from_outline;
  report.frac_outline_terms_queried = f.outline_covered;
  std::vector<double> between;
  for (std::size_t i = 1; i < query_ts.size(); ++i) {
    between.push_back((query_ts[i] - query_ts[i - 1]) / 1000.0);
  }
  report.mean_time_between_queries = mean_of(between);
  report.mean_gap_doc_close_to_next_open = mean_of(gaps);
  std::vector<double> dwells;
  for (const auto& [doc, ms] : dwell) dwells.push_back(ms / 1000.0);
  report.mean_doc_dwell = mean_of(dwells);
  report.unique_docs_viewed = dwell.size();
  report.unique_snippets_viewed = snippets.size();
  report.bookmark_count = bookmarks.size();
  if (!query_ts.empty() && last_close && *last_close >= query_ts.front()) {
    report.session_duration = (*last_close - query_ts.front()) / 1000.0;
  }
  return report;
}

TimeBucketSeries time_bucketed(std::span<const SessionEvent> log,
                               const TopicOutline& outline, Millis bucket_length) {
  if (bucket_length.count() <= 0) throw ValidationError("bucket length must be positive");
  TimeBucketSeries series;
  series.bucket_length = bucket_length;
  std::vector<std::pair<std::int64_t, std::string>> queries;
  for (const SessionEvent& e : log) {
    if (auto q = e.as<events::QueryIssued>()) queries.emplace_back(e.ts_ms, q->raw);
  }
  if (queries.empty()) return series;

  const TokenSet terms = outline_term_set(outline);
  const std::int64_t start = queries.front().first;
  std::map<std::size_t, std::vector<std::string>> grouped;
  for (const auto& [ts, raw] : queries) {
    grouped[static_cast<std::size_t>((ts - start) / bucket_length.count())].push_back(raw);
  }
  series.buckets.resize(grouped.rbegin()->first + 1);
  for (const auto& [index, qs] : grouped) {
    TimeBucket bucket;
    bucket.query_count = qs.size();
    bucket.fractions = query_outline_fractions(qs, terms);
    std::size_t tokens = 0;
    for (const auto& q : qs) tokens += tokenize(q).size();
    bucket.mean_query_length = static_cast<double>(tokens) / static_cast<double>(qs.size());
    series.buckets[index] = bucket;
  }
  return series;
}

namespace {

constexpr MetricDef kMetrics[] = {
    {"session_duration_min", "Search session duration (minutes)"},
    {"rpl", "RPL"},
    {"query_count", "Number of queries"},
    {"frac_query_terms_from_outline", "Fraction of query terms coming from topical outline"},
    {"frac_outline_terms_queried", "Fraction of topical outline terms used for querying"},
    {"mean_time_between_queries_min", "Average time between queries (minutes)"},
    {"mean_gap_doc_close_to_next_open_s",
     "Average time between document close and next document load (secs.)"},
    {"mean_doc_dwell_s", "Average document dwell time (secs.)"},
    {"unique_docs_viewed", "Number of unique documents viewed"},
    {"unique_snippets_viewed", "Number of unique document snippets viewed"},
    {"bookmark_count", "Number of bookmarks"},
    {"alg", "ALG"},
    {"mlg", "MLG"},
};

std::optional<double> scaled(const std::optional<double>& v, double factor) {
  if (!v) return std::nullopt;
  return *v * factor;
}

std::optional<double> metric_value(const SessionRecord& r, std::size_t index) {
  const BehaviorReport& b = r.behavior;
  switch (index) {
    case 0: return scaled(b.session_duration, 1.0 / 60.0);
    case 1: return r.learning ? r.learning->rpl : std::nullopt;
    case 2: return static_cast<double>(b.query_count);
    case 3: return b.frac_query_terms_from_outline;
    case 4: return b.frac_outline_terms_queried;
    case 5: return scaled(b.mean_time_between_queries, 1.0 / 60.0);
    case 6: return b.mean_gap_doc_close_to_next_open;
    case 7: return b.mean_doc_dwell;
    case 8: return static_cast<double>(b.unique_docs_viewed);
    case 9: return static_cast<double>(b.unique_snippets_viewed);
    case 10: return static_cast<double>(b.bookmark_count);
    case 11: return r.learning ? std::optional<double>(r.learning->alg) : std::nullopt;
    case 12: return r.learning ? std::optional<double>(r.learning->mlg) : std::nullopt;
    default: return std::nullopt;
  }
}

}  // namespace

std::span<const MetricDef> cohort_metrics() { return kMetrics; }

MetricStats summarize(std::span<const std::optional<double>> values) {
  MetricStats stats;
  std::vector<double> defined;
  for (const auto& v : values) {
    if (v) {
      defined.push_back(*v);
    } else {
      ++stats.excluded;
    }
  }
  stats.n = defined.size();
  if (defined.empty()) return stats;
  double sum = 0.0;
  for (double v : defined) sum += v;
  const double mean = sum / static_cast<double>(defined.size());
  stats.mean = mean;
  if (defined.size() == 1) {
    stats.sd = 0.0;
    stats.single = true;
    return stats;
  }
  double ss = 0.0;
  for (double v : defined) ss += (v - mean) * (v - mean);
  stats.sd = std::sqrt(ss / static_cast<double>(defined.size() - 1));
  return stats;
}

std::vector<CohortCell> cohort_summary(std::span<const SessionRecord> records,
                                       Grouping grouping) {
  std::set<std::string> topics;
  for (const auto& r : records) {
    if (!r.rejected) topics.insert(r.topic_id);
  }
  std::vector<CohortCell> cells;
  auto add_cell = [&](std::string strategy, std::string topic) {
    CohortCell cell;
    cell.strategy = std::move(strategy);
    cell.topic = std::move(topic);
    cells.push_back(std::move(cell));
  };
  if (grouping == Grouping::Strategy) {
    for (StrategyKind k : kAllStrategies) add_cell(std::string(to_string(k)), "");
  } else if (grouping == Grouping::Topic) {
    for (const auto& t : topics) add_cell("", t);
  } else {
    for (StrategyKind k : kAllStrategies) {
      for (const auto& t : topics) add_cell(std::string(to_string(k)), t);
    }
  }

  const std::size_t num_metrics = std::size(kMetrics);
  for (CohortCell& cell : cells) {
    std::vector<const SessionRecord*> members;
    for (const auto& r : records) {
      if (r.rejected) continue;
      if (!cell.strategy.empty() && to_string(r.strategy) != cell.strategy) continue;
      if (!cell.topic.empty() && r.topic_id != cell.topic) continue;
      members.push_back(&r);
    }
    cell.sessions = members.size();
    cell.metrics.resize(num_metrics);
    for (std::size_t m = 0; m < num_metrics; ++m) {
      std::vector<std::optional<double>> values;
      for (const SessionRecord* r : members) values.push_back(metric_value(*r, m));
      cell.metrics[m] = summarize(values);
    }
  }
  return cells;
}

}  // namespace scaffold
