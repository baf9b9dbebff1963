// src/init/initial-labels.cc

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

#include "init/initial-labels.h"

#include <algorithm>
#include <random>

#include "base/parallel.h"
#include "init/dotplot.h"

namespace lingstruct {

InitMethod ParseInitMethod(const std::string &name) {
  if (name == "two-level") return InitMethod::kTwoLevel;
  if (name == "one-level") return InitMethod::kOneLevel;
  if (name == "random") return InitMethod::kRandom;
  throw Error("unknown init method '" + name + "'");
}

std::string InitMethodName(InitMethod m) {
  switch (m) {
    case InitMethod::kTwoLevel: return "two-level";
    case InitMethod::kOneLevel: return "one-level";
    case InitMethod::kRandom: return "random";
  }
  return "";
}

Vector RepresentativeVector(const FeatureMatrix &seg_frames) {
  if (seg_frames.rows() == 0) throw Error("representative vector of an empty segment");
  Vector sum = Vector::Zero(seg_frames.cols());
  for (Eigen::Index t = 0; t < seg_frames.rows(); ++t)
    sum += seg_frames.row(t).transpose().cast<double>();
  return sum / static_cast<double>(seg_frames.rows());
}

std::vector<int32> SubwordSegments(const FeatureMatrix &seg_frames, double sigma,
                                   int min_frames) {
  const int32 n = static_cast<int32>(seg_frames.rows());
  std::vector<int32> cuts;
  if (n >= 2) cuts = WatershedSubwordBoundaries(BuildDotplot(seg_frames, sigma));
  // Segment edges: 0, cuts..., n.
  std::vector<int32> edges{0};
  edges.insert(edges.end(), cuts.begin(), cuts.end());
  edges.push_back(n);
  auto mean_of = [&](std::size_t s) {
    return RepresentativeVector(seg_frames.middleRows(edges[s], edges[s + 1] - edges[s]));
  };
  while (edges.size() > 2) {
    std::size_t shortest = 0;
    int32 best_len = n + 1;
    for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
      int32 len = edges[s + 1] - edges[s];
      if (len < best_len) {
        best_len = len;
        shortest = s;
      }
    }
    if (best_len >= min_frames) break;
    const std::size_t num_segs = edges.size() - 1;
    bool merge_left;
    if (shortest == 0) {
      merge_left = false;
    } else if (shortest + 1 == num_segs) {
      merge_left = true;
    } else {
      Vector mine = mean_of(shortest);
      double dl = (mean_of(shortest - 1) - mine).squaredNorm();
      double dr = (mean_of(shortest + 1) - mine).squaredNorm();
      merge_left = dl <= dr;
    }
    // Dropping an edge merges the two segments it separates.
    edges.erase(edges.begin() + (merge_left ? shortest : shortest + 1));
  }
  return std::vector<int32>(edges.begin() + 1, edges.end() - 1);
}

InitialLabels BuildInitialLabels(const FeatureCorpus &corpus, const InitConfig &cfg) {
  if (corpus.Empty()) throw Error("cannot initialize from an empty corpus");
  const std::size_t num_utts = corpus.Size();
  // words[u][w] = subword segment edges (absolute frames) of word w.
  std::vector<std::vector<std::vector<int32>>> words(num_utts);
  ParallelFor(num_utts, [&](std::size_t u) {
    const FeatureSequence &f = corpus[u];
    std::vector<SegmentBoundary> segs;
    if (cfg.method == InitMethod::kOneLevel)
      segs.push_back({f.utterance_id, 0, f.NumFrames()});
    else
      segs = DetectWordSegments(f, cfg.word);
    for (const auto &seg : segs) {
      std::vector<int32> rel = SubwordSegments(
          f.frames.middleRows(seg.start_frame, seg.end_frame - seg.start_frame),
          cfg.dotplot_sigma, cfg.min_subword_frames);
      std::vector<int32> edges{seg.start_frame};
      for (int32 c : rel) edges.push_back(seg.start_frame + c);
      edges.push_back(seg.end_frame);
      words[u].push_back(std::move(edges));
    }
  });

  std::vector<Vector> reps;
  for (std::size_t u = 0; u < num_utts; ++u)
    for (const auto &edges : words[u])
      for (std::size_t s = 0; s + 1 < edges.size(); ++s)
        reps.push_back(RepresentativeVector(
            corpus[u].frames.middleRows(edges[s], edges[s + 1] - edges[s])));

  int k_max = cfg.k_max > 0
                  ? cfg.k_max
                  : std::max(1, std::min<int>(300, static_cast<int>(reps.size() / 10)));
  int k_min = std::min(cfg.k_min, k_max);
  InitialLabels out;
  out.clustering = SelectKAndCluster(reps, k_min, k_max, cfg.seed, cfg.scatter_threshold,
                                     cfg.kmeans_restarts);
  const int32 k = out.clustering.k;
  std::vector<int32> ids = out.clustering.assignments;
  if (cfg.method == InitMethod::kRandom) {
    std::seed_seq seq{static_cast<uint32_t>(cfg.seed), static_cast<uint32_t>(cfg.seed >> 32),
                      0x5eedu};
    std::mt19937_64 rng(seq);
    for (auto &id : ids) id = static_cast<int32>((rng() >> 11) % static_cast<uint64_t>(k));
  }

  std::size_t next = 0;
  out.labels.utterances.resize(num_utts);
  for (std::size_t u = 0; u < num_utts; ++u) {
    UtteranceLabels &utt = out.labels.utterances[u];
    utt.utterance_id = corpus[u].utterance_id;
    for (const auto &edges : words[u]) {
      std::vector<SubwordSpan> spans;
      for (std::size_t s = 0; s + 1 < edges.size(); ++s)
        spans.push_back({ids[next++], edges[s], edges[s + 1]});
      if (cfg.method == InitMethod::kOneLevel) {
        for (std::size_t s = 0; s < spans.size(); ++s)
          utt.tokens.push_back(MakeToken(-1, spans, s, s + 1));
      } else {
        utt.tokens.push_back(MakeToken(-1, spans, 0, spans.size()));
      }
    }
  }
  out.n_subword_patterns = k;
  out.initial_lexicon = HarvestLexicon(out.labels, 1, k);
  out.labels = RewriteLabels(out.labels, out.initial_lexicon);
  return out;
}

}  // namespace lingstruct
