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

#include "scaffold/study.hpp"

#include <set>
#include <utility>

#include "scaffold/error.hpp"
#include "scaffold/text.hpp"

namespace scaffold {

std::vector<std::string> test_concepts(const TopicOutline& topic) {
  if (topic.concepts.size() < kItemsPerTopic) {
    throw ConfigError("topic '" + topic.topic_id + "' has " +
                      std::to_string(topic.concepts.size()) + " concepts, needs " +
                      std::to_string(kItemsPerTopic));
  }
  return {topic.concepts.begin(), topic.concepts.begin() + kItemsPerTopic};
}

PreTestBundle start_pretest(std::span<const TopicOutline> pool,
                            const TopicOutline& attention, Rng& rng) {
  if (pool.size() < 2) {
    throw ConfigError("the topic pool needs at least 2 topics, has " +
                      std::to_string(pool.size()));
  }
  for (const auto& t : pool) {
    if (t.topic_id == attention.topic_id) {
      throw ConfigError("attention topic '" + attention.topic_id + "' is in the study pool");
    }
  }
  const std::size_t first = uniform_index(rng, pool.size());
  std::size_t second = uniform_index(rng, pool.size() - 1);
  if (second >= first) ++second;

  PreTestBundle bundle;
  bundle.study_topics = {pool[first].topic_id, pool[second].topic_id};
  bundle.attention_topic = attention.topic_id;
  for (const TopicOutline* t : {&pool[first], &pool[second], &attention}) {
    for (auto& c : test_concepts(*t)) bundle.items.push_back({t->topic_id, std::move(c)});
  }
  shuffle(std::span<VksItem>(bundle.items), rng);
  return bundle;
}

std::map<std::string, int> knowledge_sums(std::span<const VksResponse> responses) {
  std::map<std::string, int> sums;
  for (const auto& r : responses) sums[r.topic_id] += vks_to_score(r.record.level);
  return sums;
}

PreTestOutcome assign_topic(const PreTestBundle& bundle,
                            std::span<const VksResponse> responses, Rng& rng) {
  if (bundle.study_topics.size() != 2) {
    throw ValidationError("pre-test bundle must hold two study topics");
  }
  std::set<std::pair<std::string, std::string>> expected;
  for (const auto& item : bundle.items) expected.emplace(item.topic_id, item.term);
  std::set<std::pair<std::string, std::string>> answered;
  for (const auto& r : responses) {
    r.record.validate();
    std::pair<std::string, std::string> key{r.topic_id, r.record.term};
    if (!expected.contains(key)) {
      throw ValidationError("unexpected pre-test item '" + r.record.term + "' for topic '" +
                            r.topic_id + "'");
    }
    if (!answered.insert(key).second) {
      throw ValidationError("pre-test item '" + r.record.term + "' answered twice");
    }
  }
  if (answered.size() != expected.size()) {
    throw ValidationError("pre-test has " + std::to_string(answered.size()) + " of " +
                          std::to_string(expected.size()) + " responses");
  }

  auto sums = knowledge_sums(responses);
  const std::string& a = bundle.study_topics[0];
  const std::string& b = bundle.study_topics[1];
  const int attention = sums[bundle.attention_topic];
  const int sa = sums[a];
  const int sb = sums[b];

  PreTestOutcome outcome;
  if (attention < sa && attention < sb) {
    outcome.rejection_reason = "attention topic '" + bundle.attention_topic + "' scored " +
                               std::to_string(attention) + ", below both study topics (" +
                               std::to_string(sa) + ", " + std::to_string(sb) + ")";
    return outcome;
  }
  if (sa < sb) {
    outcome.assigned_topic = a;
  } else if (sb < sa) {
    outcome.assigned_topic = b;
  } else {
    outcome.assigned_topic = bundle.study_topics[uniform_index(rng, 2)];
  }
  return outcome;
}

void validate_posttest(std::span<const std::string> concepts,
                       std::span<const VksRecord> responses,
                       std::string_view summary) {
  const std::size_t words = word_count(summary);
  if (words < kMinSummaryWords) {
    throw ValidationError("summary has " + std::to_string(words) + " words, needs at least " +
                          std::to_string(kMinSummaryWords));
  }
  std::set<std::string> expected(concepts.begin(), concepts.end());
  std::set<std::string> answered;
  for (const auto& r : responses) {
    r.validate();
    if (!expected.contains(r.term)) {
      throw ValidationError("unexpected post-test item '" + r.term + "'");
    }
    if (!answered.insert(r.term).second) {
      throw ValidationError("post-test item '" + r.term + "' answered twice");
    }
  }
  if (answered.size() != expected.size()) {
    throw ValidationError("post-test has " + std::to_string(answered.size()) + " of " +
                          std::to_string(expected.size()) + " responses");
  }
}

void ParticipantRegistry::enroll(const std::string& participant_id,
                                 const std::string& session_id) {
  if (participant_id.empty()) throw ValidationError("participant id must not be empty");
  std::lock_guard lock(mutex_);
  auto [it, inserted] = sessions_.emplace(participant_id, session_id);
  if (!inserted && it->second != session_id) {
    throw ValidationError("participant '" + participant_id + "' is already enrolled");
  }
}

void ParticipantRegistry::release(const std::string& participant_id,
                                  const std::string& session_id) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(participant_id);
  if (it != sessions_.end() && it->second == session_id) sessions_.erase(it);
}

std::optional<std::string> ParticipantRegistry::session_of(
    const std::string& participant_id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(participant_id);
  if (it == sessions_.end()) return std::nullopt;
  return it->second;
}

std::size_t ParticipantRegistry::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

}  // namespace scaffold
