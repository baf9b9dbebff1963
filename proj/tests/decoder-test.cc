// tests/decoder-test.cc

// Copyright 2026  The lingstruct Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <random>

#include "base/parallel.h"
#include "decoder/lexicon-decoder.h"
#include "oracles.h"
#include "test-util.h"

namespace lingstruct {
namespace {

FeatureSequence Seq(const FeatureMatrix &f) {
  FeatureSequence s;
  s.utterance_id = "x";
  s.frames = f;
  return s;
}

// Random lexicon: `entries` distinct sequences of 1-2 subwords over `models`.
Lexicon RandomLexicon(std::mt19937_64 &rng, int models, int entries) {
  Lexicon lex(models);
  while (lex.Size() < entries) {
    std::vector<int32> seq;
    for (int k = testing::UniformInt(rng, 1, 2); k > 0; --k)
      seq.push_back(testing::UniformInt(rng, 0, models - 1));
    if (!lex.Find(seq)) lex.Add(seq, 1);
  }
  return lex;
}

void CheckTiles(const UtteranceLabels &u, int T) {
  int32 t = 0;
  for (const auto &tok : u.tokens) {
    CHECK(tok.start_frame == t);
    CHECK(tok.end_frame > tok.start_frame);
    t = tok.end_frame;
  }
  CHECK(t == T);
}

TEST_CASE("a sampled two-unit word is decoded as one token") {
  std::mt19937_64 rng(1);
  HmmSet set(2, 3);
  for (int m = 0; m < 2; ++m) {
    SubwordHmm h;
    h.id = m;
    h.log_self.resize(3);
    h.log_next.resize(3);
    for (int s = 0; s < 3; ++s) {
      h.states.emplace_back(Vector::Constant(2, 6.0 * (m * 3 + s)), Vector::Constant(2, 0.5));
      h.SetSelfLoopProb(s, 0.5);
    }
    set.AddModel(h);
  }
  Lexicon lex(2);
  lex.Add({0}, 1);
  lex.Add({1}, 1);
  lex.Add({0, 1}, 10);
  CorpusLabels train;
  for (int i = 0; i < 10; ++i) {
    UtteranceLabels u;
    u.utterance_id = "t" + std::to_string(i);
    WordToken t;
    t.word_id = 2;
    t.end_frame = 1;
    u.tokens.push_back(t);
    train.utterances.push_back(u);
  }
  NGramLM lm = EstimateNgram(train, 2, {0, 1, 2});
  DecodeConfig cfg;
  cfg.use_lm = true;
  cfg.beam = 0;
  for (int trial = 0; trial < 5; ++trial) {
    FeatureMatrix f = testing::SampleChain(rng, set, {0, 1}, 2);
    DecodeResult r = DecodeUtterance(Seq(f), set, lex, &lm, cfg);
    REQUIRE(r.labels.tokens.size() == 1);
    CHECK(r.labels.tokens[0].word_id == 2);
    CHECK(r.labels.tokens[0].subwords == std::vector<int32>{0, 1});
    // The split alternative loses by the LM and penalty terms.
    UtteranceLabels split;
    WordToken a, b;
    a.word_id = 0;
    a.end_frame = 6;
    b.word_id = 1;
    b.start_frame = 6;
    b.end_frame = 12;
    split.tokens = {a, b};
    double s_ab = oracle::TokenSequenceScore(f, set, lex, &lm, cfg.lm_scale,
                                             cfg.word_insertion_penalty, r.labels);
    double s_split = oracle::TokenSequenceScore(f, set, lex, &lm, cfg.lm_scale,
                                                cfg.word_insertion_penalty, split);
    CHECK(s_ab > s_split);
    CHECK(std::abs(r.total_log_score - s_ab) < 1e-9);
  }
}

TEST_CASE("beam-0 decoding matches exhaustive segmentation") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    const int states = testing::UniformInt(rng, 2, 3);
    HmmSet set = testing::RandomHmmSet(rng, 3, states, 2);
    Lexicon lex = RandomLexicon(rng, 3, testing::UniformInt(rng, 1, 3));
    const int T = testing::UniformInt(rng, states, 14);
    FeatureMatrix f = testing::RandomFrames(rng, T, 2);
    const bool with_lm = trial % 2 == 1;
    std::vector<std::vector<int32>> utts;
    for (int u = 0; u < 6; ++u) {
      utts.emplace_back();
      for (int k = testing::UniformInt(rng, 1, 3); k > 0; --k)
        utts.back().push_back(testing::UniformInt(rng, 0, lex.Size() - 1));
    }
    NGramLM lm = EstimateNgram(testing::WordIdLabels(utts), 2);
    DecodeConfig cfg;
    cfg.beam = 0;
    cfg.use_lm = with_lm;
    cfg.lm_scale = testing::Uniform(rng, 0, 3);
    cfg.word_insertion_penalty = testing::Uniform(rng, -3, 1);
    const NGramLM *lmp = with_lm ? &lm : nullptr;
    double expected = oracle::DecodeScore(f, set, lex, lmp, cfg.lm_scale,
                                          cfg.word_insertion_penalty);
    if (expected == kLogZero) {
      CHECK_THROWS_AS(DecodeUtterance(Seq(f), set, lex, lmp, cfg), InfeasibleAlignment);
      continue;
    }
    DecodeResult r = DecodeUtterance(Seq(f), set, lex, lmp, cfg);
    CHECK(std::abs(r.total_log_score - expected) < 1e-9);
    CheckTiles(r.labels, T);
    double own = oracle::TokenSequenceScore(f, set, lex, lmp, cfg.lm_scale,
                                            cfg.word_insertion_penalty, r.labels);
    CHECK(std::abs(own - expected) < 1e-9);
    for (const auto &tok : r.labels.tokens)
      CHECK(lex.Entry(tok.word_id).subwords == tok.subwords);
    DecodeResult again = DecodeUtterance(Seq(f), set, lex, lmp, cfg);
    CHECK(again.labels == r.labels);
    CHECK(again.total_log_score == r.total_log_score);
  }
}

TEST_CASE("LM scale zero reduces to acoustic decoding") {
  std::mt19937_64 rng(3);
  HmmSet set = testing::RandomHmmSet(rng, 3, 2, 2);
  Lexicon lex = RandomLexicon(rng, 3, 3);
  NGramLM lm = EstimateNgram(testing::WordIdLabels({{0, 1, 2}}), 2);
  FeatureMatrix f = testing::RandomFrames(rng, 12, 2);
  DecodeConfig plain;
  plain.beam = 0;
  DecodeConfig scaled = plain;
  scaled.use_lm = true;
  scaled.lm_scale = 0;
  scaled.word_insertion_penalty = 0;
  DecodeResult a = DecodeUtterance(Seq(f), set, lex, nullptr, plain);
  DecodeResult b = DecodeUtterance(Seq(f), set, lex, &lm, scaled);
  CHECK(a.labels == b.labels);
  CHECK(a.total_log_score == b.total_log_score);
}

TEST_CASE("widening the beam never lowers the score") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    HmmSet set = testing::RandomHmmSet(rng, 3, 2, 2);
    Lexicon lex = RandomLexicon(rng, 3, 3);
    for (int32 s = 0; s < 3; ++s)
      if (!lex.Find({s})) lex.Add({s}, 1);
    FeatureMatrix f = testing::RandomFrames(rng, testing::UniformInt(rng, 2, 30), 2);
    double prev = kLogZero;
    for (double beam : {0.5, 2.0, 8.0, 50.0, 0.0}) {
      DecodeConfig cfg;
      cfg.beam = beam;
      // A narrow beam may prune every complete path.
      double score = kLogZero;
      try {
        score = DecodeUtterance(Seq(f), set, lex, nullptr, cfg).total_log_score;
      } catch (const InfeasibleAlignment &) {
        CHECK(beam > 0);
      }
      CHECK(score >= prev);
      prev = score;
    }
  }
}

TEST_CASE("singleton lexicon without LM is subword recognition") {
  std::mt19937_64 rng(7);
  HmmSet set = testing::RandomHmmSet(rng, 4, 2, 2);
  Lexicon lex(4);
  for (int32 s = 0; s < 4; ++s) lex.Add({s}, 1);
  for (int trial = 0; trial < 20; ++trial) {
    FeatureMatrix f = testing::RandomFrames(rng, testing::UniformInt(rng, 2, 20), 2);
    DecodeConfig cfg;
    cfg.beam = 0;
    DecodeResult r = DecodeUtterance(Seq(f), set, lex, nullptr, cfg);
    CHECK(r.labels.tokens.size() == SubwordStream(r.labels).size());
    for (const auto &tok : r.labels.tokens)
      CHECK(lex.Entry(tok.word_id).subwords == tok.subwords);
    CheckTiles(r.labels, static_cast<int>(f.rows()));
  }
}

TEST_CASE("infeasible utterances and bad configs") {
  std::mt19937_64 rng(4);
  HmmSet set = testing::RandomHmmSet(rng, 2, 4, 2);
  Lexicon lex(2);
  lex.Add({0}, 1);
  lex.Add({1}, 1);
  DecodeConfig cfg;
  CHECK_THROWS_AS(DecodeUtterance(Seq(testing::RandomFrames(rng, 3, 2)), set, lex, nullptr, cfg),
                  InfeasibleAlignment);
  cfg.beam = -1;
  CHECK_THROWS_AS(cfg.Validate(), Error);
  cfg.beam = 0;
  cfg.use_lm = true;
  CHECK_THROWS_AS(DecodeUtterance(Seq(testing::RandomFrames(rng, 8, 2)), set, lex, nullptr, cfg),
                  Error);
}

TEST_CASE("corpus decoding is order preserving and worker independent") {
  std::mt19937_64 rng(5);
  HmmSet set = testing::RandomHmmSet(rng, 3, 2, 2);
  Lexicon lex = RandomLexicon(rng, 3, 3);
  for (int32 s = 0; s < 3; ++s)
    if (!lex.Find({s})) lex.Add({s}, 1);
  std::vector<FeatureMatrix> mats;
  for (int u = 0; u < 12; ++u)
    mats.push_back(testing::RandomFrames(rng, testing::UniformInt(rng, 1, 30), 2));
  FeatureCorpus c = testing::MakeCorpus(mats);
  DecodeConfig cfg;
  SetNumWorkers(1);
  CorpusDecodeResult serial = DecodeCorpus(c, set, lex, nullptr, cfg);
  SetNumWorkers(4);
  CorpusDecodeResult parallel = DecodeCorpus(c, set, lex, nullptr, cfg);
  SetNumWorkers(0);
  CHECK(serial.labels == parallel.labels);
  CHECK(serial.failed == parallel.failed);
  CHECK(serial.total_log_score == parallel.total_log_score);
  for (std::size_t u = 0; u < c.Size(); ++u) {
    CHECK(serial.labels.utterances[u].utterance_id == c[u].utterance_id);
    bool failed = std::find(serial.failed.begin(), serial.failed.end(), u) != serial.failed.end();
    CHECK(failed == (c[u].NumFrames() < 2));
    if (!failed) {
      DecodeResult one = DecodeUtterance(c[u], set, lex, nullptr, cfg);
      CHECK(one.labels == serial.labels.utterances[u]);
    }
  }
  CHECK(DecodeCorpus(FeatureCorpus(), set, lex, nullptr, cfg).labels.Size() == 0);
}

}  // namespace
}  // namespace lingstruct
