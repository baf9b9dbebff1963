// tests/initializer-test.cc

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

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>

#include "init/dotplot.h"
#include "init/initial-labels.h"
#include "init/kmeans.h"
#include "init/word-segment.h"
#include "synth/synth-corpus.h"
#include "test-util.h"

namespace lingstruct {
namespace {

FeatureSequence Blocks(const std::vector<std::pair<int, float>> &blocks, double noise,
                       uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0, noise);
  int total = 0;
  for (const auto &b : blocks) total += b.first;
  FeatureSequence f;
  f.utterance_id = "b";
  f.frames.resize(total, 39);
  int t = 0;
  int k = 0;
  for (const auto &[len, level] : blocks) {
    for (int i = 0; i < len; ++i, ++t)
      for (int d = 0; d < 39; ++d)
        f.frames(t, d) = static_cast<float>((d % 3 == k % 3 ? level : -level) + n(rng));
    ++k;
  }
  return f;
}

TEST_CASE("word segmentation of constant and short utterances") {
  FeatureSequence flat;
  flat.utterance_id = "flat";
  flat.frames = FeatureMatrix::Constant(80, 39, 0.5f);
  auto segs = DetectWordSegments(flat, WordSegmentConfig());
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].start_frame == 0);
  CHECK(segs[0].end_frame == 80);

  FeatureSequence shorter = Blocks({{8, 1.0f}, {8, -1.0f}}, 0.01, 1);
  CHECK(DetectWordSegments(shorter, WordSegmentConfig()).size() == 1);
}

TEST_CASE("word segmentation finds a sharp jump") {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    FeatureSequence f = Blocks({{30, 1.0f}, {30, 2.0f}}, 0.05, seed);
    WordSegmentConfig cfg;
    std::vector<double> score = DiscontinuityScores(f.frames, cfg);
    int peak = static_cast<int>(std::max_element(score.begin(), score.end()) - score.begin());
    CHECK(std::abs(peak - 30) <= 3);
    auto segs = DetectWordSegments(f, cfg);
    REQUIRE(segs.size() == 2);
    CHECK(std::abs(segs[0].end_frame - 30) <= 3);
    CHECK(segs[1].start_frame == segs[0].end_frame);
    CHECK(segs[1].end_frame == 60);
  }
}

TEST_CASE("dotplot of identical frames is all ones before filtering") {
  FeatureMatrix f = FeatureMatrix::Constant(6, 13, 0.3f);
  SimilarityMatrix m = CosineDotplot(f);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(m(i, j) == doctest::Approx(1.0));
}

TEST_CASE("dotplot of orthogonal groups is block diagonal and symmetric") {
  FeatureMatrix f = FeatureMatrix::Zero(10, 13);
  for (int i = 0; i < 5; ++i) f(i, 1) = 1.0f + 0.1f * i;
  for (int i = 5; i < 10; ++i) f(i, 2) = 2.0f - 0.1f * i;
  SimilarityMatrix raw = CosineDotplot(f);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) CHECK(raw(i, j) == doctest::Approx((i < 5) == (j < 5) ? 1 : 0));
  std::mt19937_64 rng(2);
  SimilarityMatrix m = BuildDotplot(testing::RandomFrames(rng, 17, 39), 1.0);
  CHECK(m == m.transpose());
  CHECK_THROWS_AS(BuildDotplot(testing::RandomFrames(rng, 1, 39)), Error);
  FeatureMatrix zero = FeatureMatrix::Zero(3, 13);
  zero(0, 0) = 1;
  SimilarityMatrix z = CosineDotplot(zero);
  CHECK(z(1, 2) == 0);
  CHECK(z(0, 1) == 0);
}

SimilarityMatrix BlockMatrix(const std::vector<int> &sizes) {
  int n = 0;
  for (int s : sizes) n += s;
  SimilarityMatrix m = SimilarityMatrix::Constant(n, n, 0.1);
  int off = 0;
  for (int s : sizes) {
    m.block(off, off, s, s).setConstant(0.9);
    off += s;
  }
  return GaussianFilter(m, 1.0);
}

// Independent immersion oracle (level by level, Vincent-Soille style): at
// each similarity level, pixels next to existing basins are absorbed
// breadth-first, a pixel touching two basins becomes a ridge, and untouched
// connected groups start new basins. Boundaries are where the basin changes
// along the diagonal (midpoint of any ridge gap).
std::vector<int32> FloodBoundaries(const SimilarityMatrix &m) {
  const int n = static_cast<int>(m.rows());
  constexpr int kNone = -1, kRidge = -2;
  auto value = [&](int p) { return m(p / n, p % n); };
  std::vector<int> order(n * n);
  for (int i = 0; i < n * n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return value(a) > value(b); });
  auto neighbours = [n](int p) {
    std::vector<int> out;
    for (int dr = -1; dr <= 1; ++dr)
      for (int dc = -1; dc <= 1; ++dc) {
        int rr = p / n + dr, cc = p % n + dc;
        if ((dr || dc) && rr >= 0 && rr < n && cc >= 0 && cc < n) out.push_back(rr * n + cc);
      }
    return out;
  };
  std::vector<int> label(n * n, kNone);
  int basins = 0;
  for (std::size_t start = 0; start < order.size();) {
    std::size_t end = start;
    while (end < order.size() && value(order[start]) - value(order[end]) <= 1e-9) ++end;
    std::set<int> level(order.begin() + start, order.begin() + end);
    std::deque<int> queue;
    std::set<int> queued;
    for (int p : level)
      for (int q : neighbours(p))
        if (label[q] >= 0 && !queued.count(p)) {
          queue.push_back(p);
          queued.insert(p);
        }
    while (!queue.empty()) {
      int p = queue.front();
      queue.pop_front();
      std::set<int> seen;
      for (int q : neighbours(p))
        if (label[q] >= 0) seen.insert(label[q]);
      label[p] = seen.size() == 1 ? *seen.begin() : kRidge;
      if (label[p] == kRidge) continue;
      for (int q : neighbours(p))
        if (level.count(q) && label[q] == kNone && !queued.count(q)) {
          queue.push_back(q);
          queued.insert(q);
        }
    }
    for (int p : level) {
      if (label[p] != kNone) continue;
      std::vector<int> stack{p};
      label[p] = basins;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int q : neighbours(x))
          if (level.count(q) && label[q] == kNone) {
            label[q] = basins;
            stack.push_back(q);
          }
      }
      ++basins;
    }
    start = end;
  }
  std::vector<int32> out;
  int last = -1, last_pos = -1;
  for (int i = 0; i < n; ++i) {
    int b = label[i * n + i];
    if (b < 0) continue;
    if (last >= 0 && b != last) out.push_back((last_pos + 1 + i) / 2);
    last = b;
    last_pos = i;
  }
  return out;
}

TEST_CASE("watershed boundaries on block matrices") {
  SimilarityMatrix two = BlockMatrix({10, 10});
  auto b2 = WatershedSubwordBoundaries(two);
  auto o2 = FloodBoundaries(two);
  REQUIRE(b2.size() == 1);
  REQUIRE(o2.size() == 1);
  CHECK(std::abs(b2[0] - 10) <= 1);
  CHECK(std::abs(b2[0] - o2[0]) <= 1);

  SimilarityMatrix three = BlockMatrix({8, 12, 9});
  auto b3 = WatershedSubwordBoundaries(three);
  auto o3 = FloodBoundaries(three);
  REQUIRE(b3.size() == 2);
  REQUIRE(o3.size() == 2);
  CHECK(b3[0] < b3[1]);
  for (int k = 0; k < 2; ++k) CHECK(std::abs(b3[k] - o3[k]) <= 1);

  CHECK(WatershedSubwordBoundaries(SimilarityMatrix::Ones(12, 12)).empty());
  CHECK_THROWS_AS(WatershedSubwordBoundaries(SimilarityMatrix::Ones(1, 1)), Error);
}

TEST_CASE("watershed matches flooding on random block layouts") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<int> sizes;
    int n = 0;
    for (int b = testing::UniformInt(rng, 1, 5); b > 0 && n + 4 <= 40; --b) {
      sizes.push_back(testing::UniformInt(rng, 4, std::min(12, 40 - n)));
      n += sizes.back();
    }
    SimilarityMatrix m = BlockMatrix(sizes);
    auto got = WatershedSubwordBoundaries(m);
    auto want = FloodBoundaries(m);
    REQUIRE(got.size() == sizes.size() - 1);
    REQUIRE(want.size() == got.size());
    int edge = 0;
    for (std::size_t k = 0; k < got.size(); ++k) {
      edge += sizes[k];
      CHECK(std::abs(got[k] - want[k]) <= 1);
      CHECK(std::abs(got[k] - edge) <= 1);
    }
  }
}

TEST_CASE("watershed labels every pixel") {
  std::mt19937_64 rng(4);
  SimilarityMatrix m = BuildDotplot(testing::RandomFrames(rng, 15, 39), 1.0);
  WatershedLabels ws = Watershed(m);
  CHECK(ws.num_basins >= 1);
  for (int32 l : ws.labels) CHECK((l == WatershedLabels::kRidge || (l >= 1 && l <= ws.num_basins)));
}

TEST_CASE("representative vector is the mean") {
  std::mt19937_64 rng(9);
  FeatureMatrix one = testing::RandomFrames(rng, 1, 5);
  CHECK((RepresentativeVector(one) - one.row(0).transpose().cast<double>()).norm() < 1e-12);
  FeatureMatrix pm(2, 3);
  pm << 1, -2, 3, -1, 2, -3;
  CHECK(RepresentativeVector(pm).norm() == 0);
  FeatureMatrix three = testing::RandomFrames(rng, 3, 4);
  Vector rep = RepresentativeVector(three);
  for (int d = 0; d < 4; ++d) {
    double sum = 0;
    for (int t = 0; t < 3; ++t) sum += three(t, d);
    CHECK(rep[d] == doctest::Approx(sum / 3).epsilon(1e-12));
  }
}

TEST_CASE("k selection on well separated clouds") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> noise(0, 0.01);
  // Equilateral centers: merging any two gives within/between = 1 at k = 2.
  std::vector<Vector> centers = {Vector::Zero(3), (Vector(3) << 10, 0, 0).finished(),
                                 (Vector(3) << 5, 10 * std::sqrt(0.75), 0).finished()};
  std::vector<Vector> data;
  std::vector<int> truth;
  for (int i = 0; i < 60; ++i) {
    int c = i % 3;
    Vector x = centers[c];
    for (int d = 0; d < 3; ++d) x[d] += noise(rng);
    data.push_back(x);
    truth.push_back(c);
  }
  ClusteringResult r = SelectKAndCluster(data, 2, 10, 7);
  REQUIRE(r.k == 3);
  // Nearest-center oracle: points share a cluster exactly when they share a center.
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t j = 0; j < data.size(); ++j)
      CHECK((r.assignments[i] == r.assignments[j]) == (truth[i] == truth[j]));
  for (int32 a : r.assignments) CHECK((a >= 0 && a < r.k));

  ClusteringResult again = SelectKAndCluster(data, 2, 10, 7);
  CHECK(again.assignments == r.assignments);
  CHECK(again.scatter_ratio_curve == r.scatter_ratio_curve);

  std::vector<Vector> same(12, Vector::Constant(3, 1.5));
  ClusteringResult s = SelectKAndCluster(same, 2, 5, 1);
  CHECK(s.k == 2);
  for (int32 a : s.assignments) CHECK(a == s.assignments[0]);

  CHECK_THROWS_AS(SelectKAndCluster(same, 2, 20, 1), Error);
}

TEST_CASE("k-means never increases within scatter") {
  std::mt19937_64 rng(8);
  std::vector<Vector> data;
  for (int i = 0; i < 200; ++i) data.push_back(Vector::Random(4) * 3);
  for (int k = 1; k <= 6; ++k) {
    KMeansResult r = RunKMeans(data, k, 3);
    for (std::size_t i = 1; i < r.within_history.size(); ++i)
      CHECK(r.within_history[i] <= r.within_history[i - 1] + 1e-9);
  }
}

TEST_CASE("converged centroids are cluster means") {
  std::mt19937_64 rng(10);
  std::vector<Vector> data;
  for (int i = 0; i < 150; ++i) data.push_back(Vector::Random(3) * 5);
  for (int k = 2; k <= 5; ++k) {
    KMeansResult r = RunKMeans(data, k, 4, 500, 0);
    for (int c = 0; c < k; ++c) {
      Vector sum = Vector::Zero(3);
      int n = 0;
      for (std::size_t i = 0; i < data.size(); ++i)
        if (r.assignments[i] == c) {
          sum += data[i];
          ++n;
        }
      if (n > 0) CHECK((r.centroids[c] - sum / n).norm() < 1e-9);
    }
  }
}

TEST_CASE("single flat utterance initializes to one pattern") {
  FeatureSequence f;
  f.utterance_id = "flat";
  f.frames = FeatureMatrix::Constant(40, 39, 0.2f);
  FeatureCorpus c;
  c.Add(f);
  InitialLabels init = BuildInitialLabels(c, InitConfig());
  CHECK(init.n_subword_patterns == 1);
  CHECK(init.initial_lexicon.Size() == 1);
  CheckTiling(init.labels, c);
}

TEST_CASE("initialization on a synthetic corpus") {
  SynthSpec spec;
  SynthCorpus sc = GenerateSynthCorpus(spec);
  InitConfig cfg;
  cfg.seed = 1;
  InitialLabels init = BuildInitialLabels(sc.corpus, cfg);
  CheckTiling(init.labels, sc.corpus);
  CHECK(init.n_subword_patterns >= 4);
  CHECK(init.n_subword_patterns <= 8);
  std::set<std::vector<int32>> words;
  for (const auto &u : init.labels.utterances)
    for (const auto &t : u.tokens) {
      words.insert(t.subwords);
      for (int32 s : t.subwords) CHECK(s < init.n_subword_patterns);
      CHECK(init.initial_lexicon.Find(t.subwords) == std::optional<int32>(t.word_id));
    }
  CHECK(words.size() >= 8);

  for (InitMethod m : {InitMethod::kOneLevel, InitMethod::kRandom}) {
    cfg.method = m;
    InitialLabels other = BuildInitialLabels(sc.corpus, cfg);
    CheckTiling(other.labels, sc.corpus);
    if (m == InitMethod::kOneLevel)
      for (const auto &u : other.labels.utterances)
        for (const auto &t : u.tokens) CHECK(t.subwords.size() == 1);
  }
}

TEST_CASE("subword segments respect the minimum length") {
  SynthSpec spec;
  spec.n_utterances = 10;
  SynthCorpus sc = GenerateSynthCorpus(spec);
  for (const auto &u : sc.corpus.Utterances()) {
    auto cuts = SubwordSegments(u.frames, 1.0, 13);
    int32 prev = 0;
    for (int32 c : cuts) {
      CHECK(c - prev >= 13);
      prev = c;
    }
    CHECK(u.NumFrames() - prev >= 13);
  }
}

TEST_CASE("init method names") {
  for (InitMethod m : {InitMethod::kTwoLevel, InitMethod::kOneLevel, InitMethod::kRandom})
    CHECK(ParseInitMethod(InitMethodName(m)) == m);
  CHECK_THROWS_AS(ParseInitMethod("three-level"), Error);
}

}  // namespace
}  // namespace lingstruct
