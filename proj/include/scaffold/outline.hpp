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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "scaffold/text.hpp"

namespace scaffold {

struct Subtopic {
  std::string id;
  int level = 1;  // 1 or 2
  std::string title;
  std::vector<Subtopic> children;  // empty for level 2
  std::string reference_text;
  TokenSet reference_terms;

  friend bool operator==(const Subtopic&, const Subtopic&) = default;
};

// Two-level topical outline. L1 order is the source order and drives the
// query expansion schedule.
struct TopicOutline {
  std::string topic_id;
  std::string title;
  std::vector<Subtopic> l1;
  std::size_t total_l2 = 0;
  // Vocabulary test items for the topic; optional in the file format.
  std::vector<std::string> concepts;

  std::size_t total_l1() const { return l1.size(); }
  std::size_t total_subtopics() const { return l1.size() + total_l2; }

  // Pre-order walk: each L1 followed by its L2 children.
  std::vector<const Subtopic*> subtopics() const;
  const Subtopic* find(std::string_view id) const;

  friend bool operator==(const TopicOutline&, const TopicOutline&) = default;
};

const std::vector<std::string>& default_generic_headings();

struct OutlineParseOptions {
  std::vector<std::string> generic_headings = default_generic_headings();
};

// Parses the YAML outline format (docs/formats.md). Throws ParseError for
// malformed documents and ValidationError for semantic problems.
TopicOutline parse_outline(std::string_view source,
                           const OutlineParseOptions& options = {});

// Accepts either an outline file or a directory holding outline.yaml.
TopicOutline load_outline(const std::filesystem::path& path,
                          const OutlineParseOptions& options = {});

// Loads every outline below `dir` (one per subdirectory or *.yaml file),
// sorted by topic_id.
std::vector<TopicOutline> load_outline_set(const std::filesystem::path& dir,
                                           const OutlineParseOptions& options = {});

std::string serialize_outline(const TopicOutline& outline);

// Normalized vocabulary of the topic title and every subtopic title.
TokenSet outline_term_set(const TopicOutline& outline);

}  // namespace scaffold
