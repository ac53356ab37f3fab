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

#include "scaffold/event_log.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "scaffold/error.hpp"

namespace scaffold {

void MemoryEventSink::append(const SessionEvent& event) {
  std::lock_guard lock(mutex_);
  events_[event.session_id].push_back(event);
}

std::vector<SessionEvent> MemoryEventSink::events(const std::string& session_id) const {
  std::lock_guard lock(mutex_);
  auto it = events_.find(session_id);
  return it == events_.end() ? std::vector<SessionEvent>{} : it->second;
}

FileEventLog::FileEventLog(std::filesystem::path dir, bool sync)
    : dir_(std::move(dir)), sync_(sync) {
  std::filesystem::create_directories(dir_);
}

FileEventLog::~FileEventLog() {
  for (auto& [id, fd] : fds_) ::close(fd);
}

std::filesystem::path FileEventLog::path_for(const std::string& session_id) const {
  return dir_ / (session_id + ".log");
}

int FileEventLog::descriptor(const std::string& session_id) {
  if (auto it = fds_.find(session_id); it != fds_.end()) return it->second;
  if (session_id.empty() || session_id.find('/') != std::string::npos ||
      session_id.find("..") != std::string::npos) {
    throw ValidationError("illegal session id for a log file name");
  }
  const std::string path = path_for(session_id).string();
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) throw Error("cannot open " + path + ": " + std::strerror(errno));
  fds_.emplace(session_id, fd);
  return fd;
}

void FileEventLog::append(const SessionEvent& event) {
  const std::string line = to_log_line(event) + "\n";
  std::lock_guard lock(mutex_);
  const int fd = descriptor(event.session_id);
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(std::string("event log write failed: ") + std::strerror(errno));
    }
    written += static_cast<std::size_t>(n);
  }
  if (sync_ && ::fdatasync(fd) != 0) {
    throw Error(std::string("event log sync failed: ") + std::strerror(errno));
  }
}

std::vector<SessionEvent> parse_event_log(std::string_view text) {
  std::vector<SessionEvent> events;
  std::size_t start = 0;
  int line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) events.push_back(parse_log_line(line, line_no));
    start = end + 1;
  }
  return events;
}

std::vector<SessionEvent> read_event_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open event log " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_event_log(buffer.str());
  } catch (const ParseError& e) {
    throw e.prefixed(path.string());
  }
}

std::vector<std::filesystem::path> list_event_logs(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> logs;
  if (!std::filesystem::is_directory(dir)) return logs;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".log") {
      logs.push_back(entry.path());
    }
  }
  std::sort(logs.begin(), logs.end());
  return logs;
}

}  // namespace scaffold
