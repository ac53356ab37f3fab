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

#include "scaffold/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "scaffold/error.hpp"
#include "scaffold/event_log.hpp"
#include "scaffold/json_codec.hpp"

namespace scaffold {
namespace {

// Replay needs outlines for the phase checks but never scores documents.
class OutlineEnvironment final : public SessionEnvironment {
 public:
  explicit OutlineEnvironment(std::span<const TopicOutline> outlines) {
    for (const auto& o : outlines) outlines_.emplace(o.topic_id, &o);
  }
  const TopicOutline& outline(const std::string& topic_id) const override {
    auto it = outlines_.find(topic_id);
    if (it == outlines_.end()) throw LookupError("no outline for topic '" + topic_id + "'");
    return *it->second;
  }
  const ScoringConfig& scoring() const override { return scoring_; }
  void record_view(ProgressState&, const std::string&, const std::string&) override {}

 private:
  std::map<std::string, const TopicOutline*> outlines_;
  ScoringConfig scoring_;
};

std::string number(double v) {
  if (std::fabs(v) < 5e-5) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string number(const std::optional<double>& v) { return v ? number(*v) : "NA"; }

std::vector<VksRecord> records_from_json(const nlohmann::json& j) {
  std::vector<VksRecord> out;
  for (const auto& r : j) out.push_back(vks_record_from_json(r));
  return out;
}

Json optional_json(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

VksFile load_vks_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
    VksFile f;
    f.pre = records_from_json(j.at("pre"));
    f.post = records_from_json(j.at("post"));
    for (const auto& r : f.pre) r.validate();
    for (const auto& r : f.post) r.validate();
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what(), 0, 0);
  }
}

std::vector<SessionRecord> records_from_logs(std::span<const std::vector<SessionEvent>> logs,
                                             std::span<const TopicOutline> outlines,
                                             const std::map<std::string, VksFile>& vks) {
  OutlineEnvironment env(outlines);
  std::vector<SessionRecord> records;
  for (const auto& log : logs) {
    if (log.empty()) continue;
    const SessionState state = replay(log, env);
    const TopicOutline* outline = state.topic_id.empty() ? nullptr : &env.outline(state.topic_id);
    SessionRecord record = session_record(state, outline);
    if (auto it = vks.find(state.session_id); it != vks.end()) {
      record.learning = learning_report(it->second.pre, it->second.post, state.participant_id,
                                        state.topic_id);
    }
    records.push_back(std::move(record));
  }
  std::sort(records.begin(), records.end(),
            [](const SessionRecord& a, const SessionRecord& b) {
              return a.session_id < b.session_id;
            });
  return records;
}

std::string summary_tsv(std::span<const SessionRecord> records) {
  const auto cells = cohort_summary(records, Grouping::Strategy);
  std::ostringstream out;
  out << "metric\tlabel";
  for (const auto& c : cells) {
    out << '\t' << c.strategy << "_mean\t" << c.strategy << "_sd\t" << c.strategy << "_n\t"
        << c.strategy << "_excluded";
  }
  out << '\n';
  out << "participants\tNumber of participants";
  for (const auto& c : cells) out << '\t' << c.sessions << "\tNA\t" << c.sessions << "\t0";
  out << '\n';
  const auto defs = cohort_metrics();
  for (std::size_t m = 0; m < defs.size(); ++m) {
    out << defs[m].key << '\t' << defs[m].label;
    for (const auto& c : cells) {
      if (c.empty()) {
        out << "\tempty\tempty\t0\t0";
        continue;
      }
      const MetricStats& s = c.metrics[m];
      out << '\t' << number(s.mean) << '\t' << number(s.sd) << '\t' << s.n << '\t'
          << s.excluded;
    }
    out << '\n';
  }
  return out.str();
}

std::string cells_tsv(std::span<const SessionRecord> records, Grouping grouping) {
  const auto cells = cohort_summary(records, grouping);
  const auto defs = cohort_metrics();
  std::ostringstream out;
  out << "strategy\ttopic\tsessions\tmetric\tn\texcluded\tmean\tsd\tsingle\n";
  for (const auto& c : cells) {
    for (std::size_t m = 0; m < defs.size(); ++m) {
      const MetricStats& s = c.metrics[m];
      out << (c.strategy.empty() ? "*" : c.strategy) << '\t' << (c.topic.empty() ? "*" : c.topic)
          << '\t' << c.sessions << '\t' << defs[m].key << '\t' << s.n << '\t' << s.excluded
          << '\t' << (c.empty() ? "empty" : number(s.mean)) << '\t'
          << (c.empty() ? "empty" : number(s.sd)) << '\t' << (s.single ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

std::string buckets_tsv(std::span<const SessionRecord> records) {
  std::size_t buckets = 0;
  std::int64_t bucket_ms = std::chrono::milliseconds(std::chrono::minutes(5)).count();
  for (const auto& r : records) {
    if (r.rejected) continue;
    buckets = std::max(buckets, r.buckets.buckets.size());
    if (!r.buckets.buckets.empty()) bucket_ms = r.buckets.bucket_length.count();
  }
  std::ostringstream out;
  out << "strategy\tbucket\tstart_min\tsessions\tfrac_query_terms_from_outline"
         "\tfrac_outline_terms_queried\tmean_query_length\n";
  for (StrategyKind kind : kAllStrategies) {
    for (std::size_t b = 0; b < buckets; ++b) {
      std::vector<std::optional<double>> from, covered, length;
      for (const auto& r : records) {
        if (r.rejected || r.strategy != kind || b >= r.buckets.buckets.size()) continue;
        const auto& bucket = r.buckets.buckets[b];
        if (!bucket) continue;
        from.push_back(bucket->fractions.from_outline);
        covered.push_back(bucket->fractions.outline_covered);
        length.push_back(bucket->mean_query_length);
      }
      out << to_string(kind) << '\t' << b << '\t'
          << number(static_cast<double>(b * bucket_ms) / 60000.0) << '\t' << from.size() << '\t'
          << number(summarize(from).mean) << '\t' << number(summarize(covered).mean) << '\t'
          << number(summarize(length).mean) << '\n';
    }
  }
  return out.str();
}

Json session_record_json(const SessionRecord& r) {
  Json j;
  j["session_id"] = r.session_id;
  j["participant_id"] = r.participant_id;
  j["topic_id"] = r.topic_id;
  j["strategy"] = std::string(to_string(r.strategy));
  j["rejected"] = r.rejected;
  if (r.learning) {
    j["learning"] = {{"alg", r.learning->alg},
                     {"mlg", r.learning->mlg},
                     {"rpl", optional_json(r.learning->rpl)}};
  } else {
    j["learning"] = nullptr;
  }
  const BehaviorReport& b = r.behavior;
  j["behavior"] = {
      {"query_count", b.query_count},
      {"frac_query_terms_from_outline", b.frac_query_terms_from_outline},
      {"frac_outline_terms_queried", b.frac_outline_terms_queried},
      {"mean_time_between_queries_s", optional_json(b.mean_time_between_queries)},
      {"mean_gap_doc_close_to_next_open_s", optional_json(b.mean_gap_doc_close_to_next_open)},
      {"mean_doc_dwell_s", optional_json(b.mean_doc_dwell)},
      {"unique_docs_viewed", b.unique_docs_viewed},
      {"unique_snippets_viewed", b.unique_snippets_viewed},
      {"bookmark_count", b.bookmark_count},
      {"session_duration_s", optional_json(b.session_duration)}};
  Json buckets = Json::array();
  for (const auto& bucket : r.buckets.buckets) {
    if (!bucket) {
      buckets.push_back(nullptr);
      continue;
    }
    buckets.push_back({{"query_count", bucket->query_count},
                       {"frac_query_terms_from_outline", bucket->fractions.from_outline},
                       {"frac_outline_terms_queried", bucket->fractions.outline_covered},
                       {"mean_query_length", bucket->mean_query_length}});
  }
  j["buckets"] = buckets;
  return j;
}

std::string sessions_jsonl(std::span<const SessionRecord> records) {
  std::ostringstream out;
  for (const auto& r : records) out << session_record_json(r).dump() << '\n';
  return out.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("write failed for " + path.string());
}

}  // namespace

std::size_t write_report(const ReportPaths& paths) {
  std::vector<std::vector<SessionEvent>> logs;
  for (const auto& p : list_event_logs(paths.logs)) logs.push_back(read_event_log(p));
  const auto outlines = load_outline_set(paths.outlines);
  std::map<std::string, VksFile> vks;
  if (paths.vks) {
    for (const auto& entry : std::filesystem::directory_iterator(*paths.vks)) {
      if (entry.path().extension() == ".json") {
        vks.emplace(entry.path().stem().string(), load_vks_file(entry.path()));
      }
    }
  }
  const auto records = records_from_logs(logs, outlines, vks);
  std::filesystem::create_directories(paths.out);
  write_file(paths.out / "summary.tsv", summary_tsv(records));
  write_file(paths.out / "cells.tsv", cells_tsv(records, Grouping::StrategyTopic));
  write_file(paths.out / "buckets.tsv", buckets_tsv(records));
  write_file(paths.out / "sessions.jsonl", sessions_jsonl(records));
  return records.size();
}

}  // namespace scaffold
