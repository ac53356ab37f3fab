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


#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "scaffold/config.hpp"
#include "support.hpp"

namespace scaffold {
namespace {

using testing::fixture;

// A config whose paths all point at the fixtures.
std::string fixture_yaml(const std::string& backend) {
  return "topics_dir: outlines\n"
         "attention: attention/sports.yaml\n"
         "blacklist: blacklist.txt\n"
         "log_dir: var/logs\n" +
         backend;
}

// Sets an environment variable for the lifetime of the guard.
class EnvGuard {
 public:
  EnvGuard(const char* name, const char* value) : name_(name) {
    if (const char* old = std::getenv(name)) old_ = old;
    if (value) {
      ::setenv(name, value, 1);
    } else {
      ::unsetenv(name);
    }
  }
  ~EnvGuard() {
    if (old_) {
      ::setenv(name_, old_->c_str(), 1);
    } else {
      ::unsetenv(name_);
    }
  }

 private:
  const char* name_;
  std::optional<std::string> old_;
};

}  // namespace

TEST_SUITE("config") {

TEST_CASE("the example config parses with the documented defaults") {
  const ServiceConfig c = load_service_config(fixture("../scaffold.example.yaml"));
  const auto root = fixture("..").lexically_normal();
  CHECK(c.host == "127.0.0.1");
  CHECK(c.port == 8080);
  CHECK(c.topics_dir == (root / "fixtures/outlines").lexically_normal());
  CHECK(c.attention == (root / "fixtures/attention/sports.yaml").lexically_normal());
  CHECK(c.blacklist == (root / "fixtures/blacklist.txt").lexically_normal());
  CHECK(c.log_dir == (root / "var/logs").lexically_normal());
  REQUIRE(c.corpus.has_value());
  CHECK(*c.corpus == (root / "var/corpus").lexically_normal());
  CHECK_FALSE(c.remote.has_value());
  CHECK(c.sync_log);
  CHECK(c.seed == 1);
  CHECK(c.scoring.min_tokens == 50);
  CHECK(c.scoring.min_overlap == 0.2);
  CHECK(c.scoring.cap == 10.0);
  CHECK(c.session == SessionConfig{});
}

TEST_CASE("relative paths resolve against the base directory and absolute ones stay") {
  const ServiceConfig c = parse_service_config(
      "topics_dir: t\nattention: /abs/a.yaml\nblacklist: ./b/../bl.txt\nlog_dir: logs\n"
      "local_corpus: c\n",
      "/srv/scaffold");
  CHECK(c.topics_dir == "/srv/scaffold/t");
  CHECK(c.attention == "/abs/a.yaml");
  CHECK(c.blacklist == "/srv/scaffold/bl.txt");
  CHECK(c.log_dir == "/srv/scaffold/logs");
  CHECK(c.corpus == std::filesystem::path("/srv/scaffold/c"));

  const ServiceConfig bare = parse_service_config(
      "topics_dir: t\nattention: a\nblacklist: b\nlog_dir: l\nlocal_corpus: c\n");
  CHECK(bare.topics_dir == "t");
}

TEST_CASE("overrides for listen, scoring, session and remote") {
  const ServiceConfig c = parse_service_config(
      "listen: {host: 0.0.0.0, port: 9000}\n"
      "topics_dir: t\nattention: a\nblacklist: b\nlog_dir: l\n"
      "sync_log: false\nseed: 12345678901234\n"
      "scoring: {min_tokens: 20, min_overlap: 0.5, cap: 3.5}\n"
      "session: {min_task_seconds: 60, planned_seconds: 120, max_tab_switches: 5, "
      "results_per_page: 20}\n"
      "remote: {endpoint: 'https://search.example/v7', market: en-GB, timeout_seconds: 3}\n");
  CHECK(c.host == "0.0.0.0");
  CHECK(c.port == 9000);
  CHECK_FALSE(c.sync_log);
  CHECK(c.seed == 12345678901234ull);
  CHECK(c.scoring.min_tokens == 20);
  CHECK(c.scoring.min_overlap == 0.5);
  CHECK(c.scoring.cap == 3.5);
  CHECK(c.session.min_task_time == std::chrono::seconds(60));
  CHECK(c.session.planned_duration == std::chrono::seconds(120));
  CHECK(c.session.max_tab_switches == 5);
  CHECK(c.session.results_per_page == 20);
  REQUIRE(c.remote.has_value());
  CHECK(c.remote->endpoint == "https://search.example/v7");
  CHECK(c.remote->market == "en-GB");
  CHECK(c.remote->timeout == std::chrono::seconds(3));
  CHECK(c.remote->api_key_header == "Ocp-Apim-Subscription-Key");
  CHECK_FALSE(c.corpus.has_value());
}

TEST_CASE("validation requires exactly one backend and existing paths") {
  testing::TempDir corpus("config-corpus");
  const std::string local = "local_corpus: " + corpus.path().string() + "\n";
  const std::string remote = "remote: {endpoint: 'https://search.example/v7'}\n";

  CHECK_NOTHROW(parse_service_config(fixture_yaml(local), fixture("")).validate());
  CHECK_NOTHROW(parse_service_config(fixture_yaml(remote), fixture("")).validate());
  CHECK_THROWS_AS(parse_service_config(fixture_yaml(""), fixture("")).validate(), ConfigError);
  CHECK_THROWS_AS(parse_service_config(fixture_yaml(local + remote), fixture("")).validate(),
                  ConfigError);
  CHECK_THROWS_AS(parse_service_config(fixture_yaml("local_corpus: nowhere\n"), fixture(""))
                      .validate(),
                  ConfigError);

  ServiceConfig c = parse_service_config(fixture_yaml(local), fixture(""));
  c.topics_dir = fixture("missing");
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = parse_service_config(fixture_yaml(local), fixture(""));
  c.port = 70000;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = parse_service_config(fixture_yaml(local), fixture(""));
  c.scoring.cap = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = parse_service_config(fixture_yaml(local), fixture(""));
  c.session.max_tab_switches = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("malformed configs are reported") {
  CHECK_THROWS_AS(parse_service_config("- a\n- b\n"), ConfigError);
  CHECK_THROWS_AS(parse_service_config("attention: a\nblacklist: b\nlog_dir: l\n"), ConfigError);
  CHECK_THROWS_AS(parse_service_config(fixture_yaml("local_corpus: c\nlisten: {port: high}\n")),
                  ConfigError);
  CHECK_THROWS_AS(parse_service_config(fixture_yaml("remote: {market: en-US}\n")), ConfigError);
  try {
    parse_service_config("topics_dir: [unclosed\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() >= 1);
  }

  testing::TempDir dir("config-bad");
  const auto path = dir.path() / "scaffold.yaml";
  std::ofstream(path) << "topics_dir: [unclosed\n";
  try {
    load_service_config(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("scaffold.yaml") != std::string::npos);
  }
  CHECK_THROWS_AS(load_service_config(dir.path() / "absent.yaml"), ConfigError);
}

TEST_CASE("the config path comes from the flag, then the environment, then the default") {
  {
    EnvGuard env("SCAFFOLD_CONFIG", "/etc/scaffold/env.yaml");
    CHECK(resolve_config_path(std::filesystem::path("/tmp/cli.yaml")) == "/tmp/cli.yaml");
    CHECK(resolve_config_path(std::nullopt) == "/etc/scaffold/env.yaml");
  }
  {
    EnvGuard env("SCAFFOLD_CONFIG", "");
    CHECK(resolve_config_path(std::nullopt) == "scaffold.yaml");
  }
  {
    EnvGuard env("SCAFFOLD_CONFIG", nullptr);
    CHECK(resolve_config_path(std::nullopt) == "scaffold.yaml");
  }
}

}  // TEST_SUITE

}  // namespace scaffold
