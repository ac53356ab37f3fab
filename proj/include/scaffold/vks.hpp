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

#include <optional>
#include <string>

namespace scaffold {

// One vocabulary-knowledge self assessment. Levels:
//   1 never seen the term, 2 seen but unknown meaning,
//   3 think I know (definition required), 4 know it (definition required).
struct VksRecord {
  std::string term;
  int level = 1;
  std::optional<std::string> definition;

  // Throws ValidationError on a bad level or a definition/level mismatch.
  void validate() const;

  friend bool operator==(const VksRecord&, const VksRecord&) = default;
};

// Levels 1 and 2 score 0, level 3 scores 1, level 4 scores 2.
int vks_to_score(int level);

// A pre-test answer, tagged with the topic its item belongs to.
struct VksResponse {
  std::string topic_id;
  VksRecord record;

  friend bool operator==(const VksResponse&, const VksResponse&) = default;
};

}  // namespace scaffold
