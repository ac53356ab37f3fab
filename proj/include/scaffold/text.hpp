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

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scaffold {

using TokenList = std::vector<std::string>;
using TokenSet = std::set<std::string>;

// Lowercases, removes apostrophes, treats every other non-alphanumeric code
// point as a separator, splits, and drops stopwords. Input is UTF-8.
TokenList normalize(std::string_view text);

// Same as normalize() but keeps stopwords.
TokenList tokenize(std::string_view text);

TokenSet unique_terms(std::span<const std::string> tokens);

// The shipped English stopword list, stored in normalized form.
const TokenSet& stopwords();
bool is_stopword(std::string_view token);

// Number of whitespace-delimited words.
std::size_t word_count(std::string_view text);

std::string trim(std::string_view text);

// Trims and collapses runs of whitespace into a single space.
std::string collapse_whitespace(std::string_view text);

// Lowercase ASCII slug; runs of non-alphanumerics become '-'.
std::string slugify(std::string_view text);

std::string to_lower_ascii(std::string_view text);

}  // namespace scaffold
