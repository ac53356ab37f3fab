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

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace scaffold {

template <typename Scalar>
using EmbeddingT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Embedding = EmbeddingT<double>;

// Maps a token list to a fixed-length dense vector. Implementations must be
// deterministic and return the zero vector only for an empty token list.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual Eigen::Index dim() const = 0;
  virtual Embedding embed(std::span<const std::string> tokens) const = 0;
};

std::uint64_t fnv1a64(std::string_view bytes);

// Feature-hashed term frequencies: token t adds 1 to bucket fnv1a64(t) % dim.
class LexicalEmbedder final : public EmbeddingProvider {
 public:
  static constexpr Eigen::Index kDefaultDim = 256;

  explicit LexicalEmbedder(Eigen::Index dim = kDefaultDim);

  Eigen::Index dim() const override { return dim_; }
  Embedding embed(std::span<const std::string> tokens) const override;

  Eigen::Index bucket(std::string_view token) const;

 private:
  Eigen::Index dim_;
};

// Cosine of two vectors; 0 when either has zero norm.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine(const Eigen::MatrixBase<DerivedA>& a,
                                 const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  const Scalar denom = a.norm() * b.norm();
  if (denom == Scalar(0)) return Scalar(0);
  return a.dot(b) / denom;
}

}  // namespace scaffold
