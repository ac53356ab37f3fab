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
#include <mutex>
#include <string>
#include <vector>

#include "scaffold/events.hpp"

namespace scaffold {

// Destination for session events. append() returns only once the record is
// durable, so callers acknowledge after it returns.
class EventSink {
 public:
  virtual ~EventSink() = default;
  virtual void append(const SessionEvent& event) = 0;
};

class NullEventSink final : public EventSink {
 public:
  void append(const SessionEvent&) override {}
};

class MemoryEventSink final : public EventSink {
 public:
  void append(const SessionEvent& event) override;
  std::vector<SessionEvent> events(const std::string& session_id) const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::vector<SessionEvent>> events_;
};

// Append-only `<dir>/<session_id>.log`, one JSON record per line.
class FileEventLog final : public EventSink {
 public:
  // With `sync`, each append is followed by fdatasync.
  explicit FileEventLog(std::filesystem::path dir, bool sync = false);
  ~FileEventLog() override;

  FileEventLog(const FileEventLog&) = delete;
  FileEventLog& operator=(const FileEventLog&) = delete;

  void append(const SessionEvent& event) override;
  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const std::string& session_id) const;

 private:
  int descriptor(const std::string& session_id);

  std::filesystem::path dir_;
  bool sync_;
  std::mutex mutex_;
  std::map<std::string, int> fds_;
};

std::vector<SessionEvent> read_event_log(const std::filesystem::path& path);
std::vector<SessionEvent> parse_event_log(std::string_view text);

// Every *.log file in `dir`, sorted by name.
std::vector<std::filesystem::path> list_event_logs(const std::filesystem::path& dir);

}  // namespace scaffold
