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

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scaffold/events.hpp"
#include "scaffold/outline.hpp"
#include "scaffold/random.hpp"
#include "scaffold/vks.hpp"

namespace scaffold {

inline constexpr std::size_t kItemsPerTopic = 10;
inline constexpr std::size_t kMinSummaryWords = 100;

// The first kItemsPerTopic concepts of a topic. Throws ConfigError when the
// topic has fewer.
std::vector<std::string> test_concepts(const TopicOutline& topic);

// Two distinct study topics drawn uniformly from `pool`, plus the attention
// topic, ten items each, in shuffled order.
PreTestBundle start_pretest(std::span<const TopicOutline> pool,
                            const TopicOutline& attention, Rng& rng);

// Knowledge sum per topic id over the responses.
std::map<std::string, int> knowledge_sums(std::span<const VksResponse> responses);

// Requires exactly the bundle's items, each answered once. Rejects when the
// attention sum is strictly below both study sums, otherwise picks the study
// topic with the lower sum; ties are broken with `rng`.
PreTestOutcome assign_topic(const PreTestBundle& bundle,
                            std::span<const VksResponse> responses, Rng& rng);

// Checks a post-test against the expected concepts and the summary length.
// Throws ValidationError naming the word count for a short summary.
void validate_posttest(std::span<const std::string> concepts,
                       std::span<const VksRecord> responses,
                       std::string_view summary);

// Participants enrolled so far, shared by all sessions of a service.
class ParticipantRegistry {
 public:
  // Throws ValidationError when the participant already holds a session.
  void enroll(const std::string& participant_id, const std::string& session_id);
  // Undoes an enrollment whose session could not be created.
  void release(const std::string& participant_id, const std::string& session_id);
  std::optional<std::string> session_of(const std::string& participant_id) const;
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::string> sessions_;
};

}  // namespace scaffold
