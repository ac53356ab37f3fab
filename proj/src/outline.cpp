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

#include "scaffold/outline.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "scaffold/error.hpp"

namespace scaffold {
namespace {

[[noreturn]] void fail_at(const YAML::Node& node, const std::string& what) {
  const YAML::Mark mark = node.Mark();
  if (mark.is_null()) throw ParseError(what, 0, 0);
  throw ParseError(what, mark.line + 1, mark.column + 1);
}

[[noreturn]] void invalid_at(const YAML::Node& node, const std::string& what) {
  const YAML::Mark mark = node.Mark();
  if (mark.is_null()) throw ValidationError(what);
  throw ValidationError("line " + std::to_string(mark.line + 1) + ": " + what);
}

std::string scalar(const YAML::Node& parent, const char* key, bool required) {
  const YAML::Node node = parent[key];
  if (!node) {
    if (required) fail_at(parent, std::string("missing field '") + key + "'");
    return {};
  }
  if (node.IsNull()) return {};
  if (!node.IsScalar()) fail_at(node, std::string("field '") + key + "' must be a scalar");
  return node.as<std::string>();
}

bool is_generic(const std::string& title, const OutlineParseOptions& options) {
  const std::string key = to_lower_ascii(trim(title));
  return std::any_of(options.generic_headings.begin(),
                     options.generic_headings.end(),
                     [&](const std::string& g) { return to_lower_ascii(trim(g)) == key; });
}

Subtopic make_subtopic(std::string id, int level, std::string title,
                       const std::string& text) {
  Subtopic sub;
  sub.id = std::move(id);
  sub.level = level;
  sub.title = std::move(title);
  sub.reference_text = collapse_whitespace(text);
  const TokenList tokens = normalize(sub.reference_text);
  sub.reference_terms = unique_terms(tokens);
  return sub;
}

}  // namespace

std::vector<const Subtopic*> TopicOutline::subtopics() const {
  std::vector<const Subtopic*> out;
  out.reserve(total_subtopics());
  for (const auto& l1_sub : l1) {
    out.push_back(&l1_sub);
    for (const auto& l2_sub : l1_sub.children) out.push_back(&l2_sub);
  }
  return out;
}

const Subtopic* TopicOutline::find(std::string_view id) const {
  for (const Subtopic* sub : subtopics()) {
    if (sub->id == id) return sub;
  }
  return nullptr;
}

const std::vector<std::string>& default_generic_headings() {
  static const std::vector<std::string> headings = {
      "References", "See also", "External links",
      "Notes",      "Bibliography", "Further reading",
  };
  return headings;
}

TopicOutline parse_outline(std::string_view source,
                           const OutlineParseOptions& options) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(source));
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, e.mark.line + 1, e.mark.column + 1);
  }
  if (!root || !root.IsMap()) throw ParseError("outline must be a mapping", 1, 1);

  TopicOutline outline;
  outline.topic_id = trim(scalar(root, "topic_id", true));
  outline.title = trim(scalar(root, "title", true));
  if (outline.topic_id.empty()) invalid_at(root, "empty topic_id");
  if (outline.title.empty()) invalid_at(root, "empty title");

  if (const YAML::Node concepts = root["concepts"]) {
    if (!concepts.IsSequence()) fail_at(concepts, "'concepts' must be a list");
    for (const auto& c : concepts) {
      if (!c.IsScalar()) fail_at(c, "concept must be a string");
      outline.concepts.push_back(trim(c.as<std::string>()));
    }
  }

  const YAML::Node headings = root["headings"];
  if (!headings || headings.IsNull()) return outline;
  if (!headings.IsSequence()) fail_at(headings, "'headings' must be a list");

  // Every heading seen so far, retained or not, so that children of dropped
  // headings can be dropped too. Keyed by both id and title.
  struct Seen {
    int level;
    bool retained;
    std::size_t l1_index;
    std::string id;
  };
  std::map<std::string, Seen> by_key;
  std::set<std::string> ids;

  for (const auto& heading : headings) {
    if (!heading.IsMap()) fail_at(heading, "heading must be a mapping");
    std::string title = trim(scalar(heading, "title", true));
    const YAML::Node level_node = heading["level"];
    if (!level_node) fail_at(heading, "missing field 'level'");
    int level = 0;
    try {
      level = level_node.as<int>();
    } catch (const YAML::Exception&) {
      fail_at(level_node, "'level' must be an integer");
    }
    const std::string parent = trim(scalar(heading, "parent", false));
    const std::string text = scalar(heading, "text", false);
    std::string id = trim(scalar(heading, "id", false));

    if (title.empty()) invalid_at(heading, "empty heading title");
    if (level < 1) invalid_at(level_node, "level must be >= 1");
    if (level == 1 && !parent.empty()) {
      invalid_at(heading, "level 1 heading '" + title + "' must not have a parent");
    }

    const Seen* parent_seen = nullptr;
    if (level > 1) {
      if (parent.empty()) invalid_at(heading, "heading '" + title + "' needs a parent");
      auto it = by_key.find(parent);
      if (it == by_key.end()) {
        invalid_at(heading, "unknown parent '" + parent + "'");
      }
      if (it->second.level != level - 1) {
        invalid_at(heading, "parent '" + parent + "' is not one level up");
      }
      parent_seen = &it->second;
    }

    bool retained = level <= 2 && !is_generic(title, options) &&
                    (parent_seen == nullptr || parent_seen->retained);
    if (id.empty()) {
      id = parent_seen ? parent_seen->id + "/" + slugify(title) : slugify(title);
    }

    Seen seen{level, retained, 0, id};
    if (retained) {
      if (!ids.insert(id).second) invalid_at(heading, "duplicate subtopic id '" + id + "'");
      if (level == 1) {
        seen.l1_index = outline.l1.size();
        outline.l1.push_back(make_subtopic(id, 1, title, text));
      } else {
        seen.l1_index = parent_seen->l1_index;
        outline.l1[seen.l1_index].children.push_back(
            make_subtopic(id, 2, title, text));
        ++outline.total_l2;
      }
    }
    by_key[id] = seen;
    by_key.try_emplace(title, seen);
  }
  return outline;
}

TopicOutline load_outline(const std::filesystem::path& path,
                          const OutlineParseOptions& options) {
  std::filesystem::path file = path;
  if (std::filesystem::is_directory(file)) file /= "outline.yaml";
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot open outline " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_outline(buffer.str(), options);
  } catch (const ParseError& e) {
    throw e.prefixed(file.string());
  } catch (const ValidationError& e) {
    throw ValidationError(file.string() + ": " + e.what());
  }
}

std::vector<TopicOutline> load_outline_set(const std::filesystem::path& dir,
                                           const OutlineParseOptions& options) {
  if (!std::filesystem::is_directory(dir)) {
    throw ConfigError("outline directory not found: " + dir.string());
  }
  std::vector<TopicOutline> outlines;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_directory() &&
        std::filesystem::exists(entry.path() / "outline.yaml")) {
      outlines.push_back(load_outline(entry.path(), options));
    } else if (entry.is_regular_file() && entry.path().extension() == ".yaml") {
      outlines.push_back(load_outline(entry.path(), options));
    }
  }
  std::sort(outlines.begin(), outlines.end(),
            [](const auto& a, const auto& b) { return a.topic_id < b.topic_id; });
  return outlines;
}

std::string serialize_outline(const TopicOutline& outline) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "topic_id" << YAML::Value << outline.topic_id;
  out << YAML::Key << "title" << YAML::Value << outline.title;
  if (!outline.concepts.empty()) {
    out << YAML::Key << "concepts" << YAML::Value << YAML::BeginSeq;
    for (const auto& c : outline.concepts) out << c;
    out << YAML::EndSeq;
  }
  out << YAML::Key << "headings" << YAML::Value << YAML::BeginSeq;
  auto emit = [&](const Subtopic& sub, const std::string& parent) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << sub.id;
    out << YAML::Key << "title" << YAML::Value << sub.title;
    out << YAML::Key << "level" << YAML::Value << sub.level;
    out << YAML::Key << "parent" << YAML::Value << parent;
    out << YAML::Key << "text" << YAML::Value << sub.reference_text;
    out << YAML::EndMap;
  };
  for (const auto& l1_sub : outline.l1) {
    emit(l1_sub, "");
    for (const auto& l2_sub : l1_sub.children) emit(l2_sub, l1_sub.id);
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

TokenSet outline_term_set(const TopicOutline& outline) {
  TokenSet terms;
  auto add = [&](const std::string& text) {
    for (auto& token : normalize(text)) terms.insert(std::move(token));
  };
  add(outline.title);
  for (const Subtopic* sub : outline.subtopics()) add(sub->title);
  return terms;
}

}  // namespace scaffold
