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

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "scaffold/error.hpp"
#include "scaffold/progress.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace scaffold;

using oracle::collision_free_vocabulary;
using oracle::join;
using oracle::make_subtopic;

TEST_SUITE("progress") {

TEST_CASE("randomized pairs: positive similarity implies both filters and matches TF cosine") {
  const LexicalEmbedder emb;
  const ScoringConfig cfg;
  const auto vocab = collision_free_vocabulary(emb, 120);
  std::mt19937_64 rng(2024);
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  int positive = 0, gated = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    // Subtopic over a random slice of the vocabulary.
    std::vector<std::string> title{vocab[pick(0, 119)]};
    std::vector<std::string> text;
    const std::size_t text_len = pick(5, 40);
    for (std::size_t i = 0; i < text_len; ++i) text.push_back(vocab[pick(0, 59)]);
    // Document: length around the token threshold, mixing subtopic terms
    // with others.
    std::vector<std::string> doc;
    const std::size_t doc_len = pick(30, 90);
    const double mix = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
    for (std::size_t i = 0; i < doc_len; ++i) {
      doc.push_back(std::uniform_real_distribution<double>()(rng) < mix
                        ? text[pick(0, text.size() - 1)]
                        : vocab[pick(60, 119)]);
    }
    const Subtopic sub = make_subtopic(title, text);
    const DocumentText d = DocumentText::from_text("d" + std::to_string(trial), join(doc));
    const double sim = similarity(d, sub, cfg, emb);
    const bool pass = oracle::gate(doc, text, cfg);
    INFO("trial " << trial);
    CHECK(passes_filters(d, sub, cfg) == pass);
    if (sim > 0.0) {
      CHECK(pass);
      ++positive;
    }
    if (pass) {
      ++gated;
      std::vector<std::string> sub_tokens = title;
      sub_tokens.insert(sub_tokens.end(), text.begin(), text.end());
      CHECK(std::abs(sim - oracle::tf_cosine(doc, sub_tokens)) <= 1e-9);
      CHECK(sim > 0.0);
    } else {
      CHECK(sim == 0.0);
    }
  }
  // Both branches were exercised.
  CHECK(positive > 100);
  CHECK(gated < 1000);
}

TEST_CASE("exactly 50 tokens scores zero, 51 may score") {
  const LexicalEmbedder emb;
  const ScoringConfig cfg;
  const auto vocab = collision_free_vocabulary(emb, 10);
  const std::vector<std::string> text(vocab.begin(), vocab.begin() + 5);
  const Subtopic sub = make_subtopic({vocab[9]}, text);
  std::vector<std::string> doc;
  for (int i = 0; i < 50; ++i) doc.push_back(text[i % 5]);
  CHECK(similarity(DocumentText::from_text("a", join(doc)), sub, cfg, emb) == 0.0);
  doc.push_back(text[0]);
  CHECK(similarity(DocumentText::from_text("b", join(doc)), sub, cfg, emb) > 0.0);
}

TEST_CASE("exactly 20 percent overlap scores zero, more may score") {
  const LexicalEmbedder emb;
  const ScoringConfig cfg;
  const auto vocab = collision_free_vocabulary(emb, 20);
  const std::vector<std::string> text(vocab.begin(), vocab.begin() + 10);
  const Subtopic sub = make_subtopic({vocab[19]}, text);
  REQUIRE(sub.reference_terms.size() == 10);
  auto doc_with_shared = [&](std::size_t shared) {
    std::vector<std::string> doc;
    for (int i = 0; i < 80; ++i) {
      doc.push_back(static_cast<std::size_t>(i) < shared ? text[i] : vocab[10 + i % 9]);
    }
    return DocumentText::from_text("d", join(doc));
  };
  CHECK(similarity(doc_with_shared(2), sub, cfg, emb) == 0.0);
  CHECK(similarity(doc_with_shared(3), sub, cfg, emb) > 0.0);
}

TEST_CASE("filters need reference terms and valid config") {
  const LexicalEmbedder emb;
  const Subtopic empty = parse_outline("topic_id: t\ntitle: T\nheadings:\n"
                                       "  - {title: Heading, level: 1}\n").l1.at(0);
  CHECK_THROWS_AS(passes_filters(DocumentText::from_text("d", "text"), empty, {}), ConfigError);
  ScoringConfig bad;
  bad.cap = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = {};
  bad.min_overlap = 1.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("fill fraction is min(1, sum / cap)") {
  const TopicOutline& o = testing::study_outline("business-cycle");
  ProgressState p = ProgressState::for_outline(o);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const double sum = std::uniform_real_distribution<double>(0.0, 20.0)(rng);
    p.sums[o.l1[0].id] = sum;
    CHECK(fill_fraction(p, o.l1[0].id) == std::min(1.0, sum / 10.0));
  }
  CHECK_THROWS_AS(fill_fraction(p, "nope"), LookupError);
}

TEST_CASE("progress is monotone and repeat views add nothing") {
  const TopicOutline& o = testing::study_outline("subprime-mortgage-crisis");
  const LexicalEmbedder emb;
  const OutlineScorer scorer(o, emb, {});
  ProgressState p = ProgressState::for_outline(o);
  const auto& docs = testing::synthetic_docs();
  std::mt19937_64 rng(3);
  double any = 0.0;
  for (int step = 0; step < 300; ++step) {
    const auto& cd = docs[std::uniform_int_distribution<std::size_t>(0, docs.size() - 1)(rng)];
    const DocumentText d = DocumentText::from_text(cd.doc_id, cd.body);
    const ProgressState before = p;
    const ProgressDeltas deltas = record_view(p, d, scorer);
    for (const auto& [id, sum] : p.sums) {
      CHECK(sum >= before.sums.at(id));
      CHECK(fill_fraction(p, id) >= fill_fraction(before, id));
      CHECK(deltas.at(id) >= 0.0);
      CHECK(sum == before.sums.at(id) + deltas.at(id));
      any += deltas.at(id);
    }
    // Viewing the same document again changes nothing.
    const ProgressState after = p;
    const ProgressDeltas again = record_view(p, d, scorer);
    CHECK(p == after);
    for (const auto& [id, delta] : again) CHECK(delta == 0.0);
  }
  CHECK(any > 0.0);
}

TEST_CASE("batch scoring matches per-document scoring") {
  const TopicOutline& o = testing::study_outline("ethics");
  const LexicalEmbedder emb;
  const OutlineScorer scorer(o, emb, {});
  std::vector<DocumentText> docs;
  for (const auto& cd : testing::synthetic_docs()) {
    if (docs.size() == 40) break;
    docs.push_back(DocumentText::from_text(cd.doc_id, cd.body));
  }
  const Eigen::MatrixXd batch = scorer.score_batch(docs);
  REQUIRE(batch.rows() == 40);
  REQUIRE(batch.cols() == static_cast<Eigen::Index>(o.total_subtopics()));
  const auto subs = o.subtopics();
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto row = scorer.score_document(docs[i]);
    for (std::size_t j = 0; j < row.size(); ++j) {
      CHECK(batch(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) == row[j]);
      CHECK(row[j] == similarity(docs[i], *subs[j], {}, emb));
    }
  }
  CHECK(batch.minCoeff() >= 0.0);
  CHECK(batch.maxCoeff() <= 1.0);
}

TEST_CASE("documents are embedded only when a pair passes the filters") {
  const TopicOutline& o = testing::study_outline("ethics");
  const LexicalEmbedder emb;
  const OutlineScorer scorer(o, emb, {});
  const DocumentText thin = DocumentText::from_text("thin", "ethics morality virtue");
  scorer.score_document(thin);
  CHECK(scorer.filter_checks() == o.total_subtopics());
  CHECK(scorer.embedded_pairs() == 0);
}

TEST_CASE("cosine is zero for a zero vector") {
  const Embedding a = Embedding::Zero(4);
  Embedding b(4);
  b << 1, 0, 0, 0;
  CHECK(cosine(a, b) == 0.0);
  CHECK(cosine(b, b) == doctest::Approx(1.0));
}

TEST_CASE("progress rejects a scorer with another config") {
  const TopicOutline& o = testing::study_outline("ethics");
  const LexicalEmbedder emb;
  ScoringConfig other;
  other.cap = 5.0;
  const OutlineScorer scorer(o, emb, other);
  ProgressState p = ProgressState::for_outline(o);
  CHECK_THROWS_AS(record_view(p, DocumentText::from_text("d", "x"), scorer), ConsistencyError);
}

}
