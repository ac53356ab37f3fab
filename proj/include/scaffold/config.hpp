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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "scaffold/events.hpp"
#include "scaffold/progress.hpp"
#include "scaffold/remote_backend.hpp"

namespace scaffold {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path topics_dir;
  std::filesystem::path attention;
  // Exactly one of these is set.
  std::optional<std::filesystem::path> corpus;
  std::optional<RemoteSearchConfig> remote;
  std::filesystem::path blacklist;
  std::filesystem::path log_dir;
  bool sync_log = true;
  std::uint64_t seed = 0;
  ScoringConfig scoring;
  SessionConfig session;

  // Throws ConfigError for missing paths or a backend that is not exactly one.
  void validate() const;
};

// YAML config; relative paths resolve against the file's directory.
ServiceConfig parse_service_config(std::string_view yaml,
                                   const std::filesystem::path& base_dir = {});
ServiceConfig load_service_config(const std::filesystem::path& path);

// An explicit path wins, then SCAFFOLD_CONFIG, then ./scaffold.yaml.
std::filesystem::path resolve_config_path(const std::optional<std::filesystem::path>& cli);

}  // namespace scaffold
