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


// Shared fixtures for the test binaries.

#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "scaffold/embedding.hpp"
#include "scaffold/error.hpp"
#include "scaffold/event_log.hpp"
#include "scaffold/local_corpus.hpp"
#include "scaffold/outline.hpp"
#include "scaffold/session.hpp"
#include "scaffold/sim.hpp"
#include "scaffold/study.hpp"

namespace scaffold::testing {

inline std::filesystem::path fixture(const std::string& rel) {
  return std::filesystem::path(SCAFFOLD_FIXTURES_DIR) / rel;
}

inline const std::vector<TopicOutline>& study_outlines() {
  static const std::vector<TopicOutline> outlines = load_outline_set(fixture("outlines"));
  return outlines;
}

inline const TopicOutline& sports() {
  static const TopicOutline outline = load_outline(fixture("attention/sports.yaml"));
  return outline;
}

inline const TopicOutline& study_outline(const std::string& topic_id) {
  for (const auto& o : study_outlines()) {
    if (o.topic_id == topic_id) return o;
  }
  throw LookupError("no fixture outline " + topic_id);
}

// A unique directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("scaffold-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string words(std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += ' ';
    s += "word" + std::to_string(i);
  }
  return s;
}

inline VksRecord vks(const std::string& term, int level) {
  VksRecord r{term, level, std::nullopt};
  if (level >= 3) r.definition = "meaning of " + term;
  return r;
}

// Answers every pre-test item with the level chosen for its topic.
inline std::vector<VksResponse> answer_pretest(const PreTestBundle& bundle,
                                               const std::function<int(const VksItem&)>& level) {
  std::vector<VksResponse> out;
  for (const auto& item : bundle.items) out.push_back({item.topic_id, vks(item.term, level(item))});
  return out;
}

inline std::vector<VksRecord> answer_posttest(std::span<const std::string> concepts, int level) {
  std::vector<VksRecord> out;
  for (const auto& c : concepts) out.push_back(vks(c, level));
  return out;
}

inline const std::vector<CorpusDocument>& synthetic_docs() {
  static const std::vector<CorpusDocument> docs = synthesize_corpus(study_outlines());
  return docs;
}

inline constexpr std::int64_t kEpochMs = 1735689600000;

// An engine over the fixture topics and the synthetic corpus, driven by a
// manual clock and an in-memory sink.
struct EngineRig {
  explicit EngineRig(std::uint64_t seed = 11, SessionConfig session = {})
      : corpus(synthetic_docs()),
        catalog(study_outlines(), sports(), corpus, embedder),
        clock(kEpochMs),
        engine(catalog, corpus, default_blacklist(), sink, clock, options(seed, session)) {}

  SessionEngine::Options options(std::uint64_t seed, SessionConfig session) {
    SessionEngine::Options o;
    o.seed = seed;
    o.session = session;
    o.id_source = [this] { return "s-" + std::to_string(++next_id); };
    return o;
  }

  // Creates a session and passes the pre-test with `topic` as the weaker
  // study topic. Returns the session id.
  std::string start_search(const std::string& participant, StrategyKind strategy) {
    const CreatedSession created = engine.create(participant, strategy);
    const auto responses = answer_pretest(created.pretest, [&](const VksItem& item) {
      if (item.topic_id == created.pretest.attention_topic) return 4;
      return item.topic_id == created.pretest.study_topics[0] ? 1 : 3;
    });
    const PreTestOutcome outcome = engine.submit_pretest(created.session_id, responses);
    if (outcome.rejected()) throw ConsistencyError("test pre-test was rejected");
    return created.session_id;
  }

  int next_id = 0;
  LocalCorpus corpus;
  LexicalEmbedder embedder;
  TopicCatalog catalog;
  MemoryEventSink sink;
  ManualClock clock;
  SessionEngine engine;
};

}  // namespace scaffold::testing
