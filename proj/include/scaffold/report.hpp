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

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scaffold/events.hpp"
#include "scaffold/json_codec.hpp"
#include "scaffold/metrics.hpp"
#include "scaffold/outline.hpp"
#include "scaffold/session.hpp"
#include "scaffold/vks.hpp"

namespace scaffold {

// Externally collected tests for one session, overriding the logged ones.
struct VksFile {
  std::vector<VksRecord> pre;
  std::vector<VksRecord> post;
};

// `<session_id>.json` holding {"pre": [...], "post": [...]}.
VksFile load_vks_file(const std::filesystem::path& path);

// Replays each log (outlines only, no corpus needed) and derives its record.
// Records come back sorted by session id.
std::vector<SessionRecord> records_from_logs(
    std::span<const std::vector<SessionEvent>> logs, std::span<const TopicOutline> outlines,
    const std::map<std::string, VksFile>& vks = {});

// Cohort summary: one row per metric, mean/sd/n/excluded per condition.
std::string summary_tsv(std::span<const SessionRecord> records);
// Long form: one row per (cell, metric) for the given grouping.
std::string cells_tsv(std::span<const SessionRecord> records, Grouping grouping);
// Per condition and 5-minute bucket, the mean of each bucket
// series over sessions that have the bucket.
std::string buckets_tsv(std::span<const SessionRecord> records);
// One sessions.jsonl record. Durations in seconds.
Json session_record_json(const SessionRecord& record);
std::string sessions_jsonl(std::span<const SessionRecord> records);

struct ReportPaths {
  std::filesystem::path logs;
  std::filesystem::path outlines;
  std::filesystem::path out;
  std::optional<std::filesystem::path> vks;
};

// Writes summary.tsv, cells.tsv, buckets.tsv and sessions.jsonl into `out`.
// Returns the number of sessions read.
std::size_t write_report(const ReportPaths& paths);

}  // namespace scaffold
