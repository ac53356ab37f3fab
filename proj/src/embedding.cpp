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

#include "scaffold/embedding.hpp"

#include "scaffold/error.hpp"

namespace scaffold {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

LexicalEmbedder::LexicalEmbedder(Eigen::Index dim) : dim_(dim) {
  if (dim_ <= 0) throw ConfigError("embedding dimension must be positive");
}

Eigen::Index LexicalEmbedder::bucket(std::string_view token) const {
  return static_cast<Eigen::Index>(fnv1a64(token) %
                                   static_cast<std::uint64_t>(dim_));
}

Embedding LexicalEmbedder::embed(std::span<const std::string> tokens) const {
  Embedding v = Embedding::Zero(dim_);
  for (const auto& t : tokens) v[bucket(t)] += 1.0;
  return v;
}

}  // namespace scaffold
