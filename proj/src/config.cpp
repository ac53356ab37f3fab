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

#include "scaffold/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "scaffold/error.hpp"

namespace scaffold {
namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) path = base / path;
  return path.lexically_normal();
}

template <typename T>
T get_or(const YAML::Node& node, const char* key, T fallback) {
  const YAML::Node v = node[key];
  if (!v) return fallback;
  try {
    return v.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(std::string("config field '") + key + "' has the wrong type");
  }
}

std::string required(const YAML::Node& node, const char* key) {
  const YAML::Node v = node[key];
  if (!v || !v.IsScalar()) throw ConfigError(std::string("config field '") + key + "' is required");
  return v.as<std::string>();
}

void require_exists(const std::filesystem::path& p, const char* what) {
  if (!std::filesystem::exists(p)) {
    throw ConfigError(std::string(what) + " not found: " + p.string());
  }
}

}  // namespace

void ServiceConfig::validate() const {
  if (port < 0 || port > 65535) throw ConfigError("port out of range");
  if (corpus.has_value() == remote.has_value()) {
    throw ConfigError("configure exactly one backend: local_corpus or remote");
  }
  require_exists(topics_dir, "topics directory");
  require_exists(attention, "attention topic");
  require_exists(blacklist, "blacklist");
  if (corpus) require_exists(*corpus, "corpus");
  if (remote && remote->endpoint.empty()) throw ConfigError("remote.endpoint is required");
  if (log_dir.empty()) throw ConfigError("log_dir is required");
  scoring.validate();
  session.validate();
}

ServiceConfig parse_service_config(std::string_view yaml, const std::filesystem::path& base) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, e.mark.line + 1, e.mark.column + 1);
  }
  if (!root.IsMap()) throw ConfigError("config must be a mapping");

  ServiceConfig c;
  if (const YAML::Node listen = root["listen"]) {
    c.host = get_or<std::string>(listen, "host", c.host);
    c.port = get_or<int>(listen, "port", c.port);
  }
  c.topics_dir = resolve(base, required(root, "topics_dir"));
  c.attention = resolve(base, required(root, "attention"));
  c.blacklist = resolve(base, required(root, "blacklist"));
  c.log_dir = resolve(base, required(root, "log_dir"));
  c.sync_log = get_or<bool>(root, "sync_log", c.sync_log);
  c.seed = get_or<std::uint64_t>(root, "seed", c.seed);
  if (root["local_corpus"]) c.corpus = resolve(base, required(root, "local_corpus"));
  if (const YAML::Node remote = root["remote"]) {
    RemoteSearchConfig r;
    r.endpoint = required(remote, "endpoint");
    r.api_key_header = get_or<std::string>(remote, "api_key_header", r.api_key_header);
    r.market = get_or<std::string>(remote, "market", r.market);
    r.timeout = std::chrono::seconds(get_or<int>(remote, "timeout_seconds", 10));
    c.remote = r;
  }
  if (const YAML::Node s = root["scoring"]) {
    c.scoring.min_tokens = get_or<std::size_t>(s, "min_tokens", c.scoring.min_tokens);
    c.scoring.min_overlap = get_or<double>(s, "min_overlap", c.scoring.min_overlap);
    c.scoring.cap = get_or<double>(s, "cap", c.scoring.cap);
  }
  if (const YAML::Node s = root["session"]) {
    c.session.min_task_time =
        Millis(get_or<std::int64_t>(s, "min_task_seconds", c.session.min_task_time.count() / 1000) *
               1000);
    c.session.planned_duration = Millis(
        get_or<std::int64_t>(s, "planned_seconds", c.session.planned_duration.count() / 1000) *
        1000);
    c.session.max_tab_switches = get_or<int>(s, "max_tab_switches", c.session.max_tab_switches);
    c.session.results_per_page =
        get_or<std::size_t>(s, "results_per_page", c.session.results_per_page);
  }
  return c;
}

ServiceConfig load_service_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_service_config(text.str(), path.parent_path());
  } catch (const ParseError& e) {
    throw e.prefixed(path.string());
  }
}

std::filesystem::path resolve_config_path(const std::optional<std::filesystem::path>& cli) {
  if (cli) return *cli;
  if (const char* env = std::getenv("SCAFFOLD_CONFIG"); env && *env) return env;
  return "scaffold.yaml";
}

}  // namespace scaffold
