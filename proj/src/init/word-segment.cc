// src/init/word-segment.cc

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

#include "init/word-segment.h"

#include <algorithm>
#include <cmath>

namespace lingstruct {

std::vector<double> DiscontinuityScores(const FeatureMatrix &frames,
                                        const WordSegmentConfig &cfg) {
  const int T = static_cast<int>(frames.rows());
  const int num_static = std::min<int>(kNumStaticCeps, static_cast<int>(frames.cols()));
  std::vector<double> score(T, 0.0);
  if (T < 2) return score;

  // Prefix sums over the static cepstra c1.. for windowed means.
  const int first = num_static > 1 ? 1 : 0;
  const int width = num_static - first;
  Matrix prefix = Matrix::Zero(T + 1, width);
  for (int t = 0; t < T; ++t)
    for (int d = 0; d < width; ++d)
      prefix(t + 1, d) = prefix(t, d) + frames(t, first + d);

  for (int t = 1; t < T; ++t) {
    double energy = std::abs(static_cast<double>(frames(t, 0)) - frames(t - 1, 0));
    int lb = std::max(0, t - cfg.mean_window), re = std::min(T, t + cfg.mean_window);
    double dist2 = 0;
    for (int d = 0; d < width; ++d) {
      double left = (prefix(t, d) - prefix(lb, d)) / (t - lb);
      double right = (prefix(re, d) - prefix(t, d)) / (re - t);
      dist2 += (left - right) * (left - right);
    }
    score[t] = cfg.energy_weight * energy + cfg.spectral_weight * std::sqrt(dist2);
  }
  return score;
}

std::vector<SegmentBoundary> DetectWordSegments(const FeatureSequence &f,
                                                const WordSegmentConfig &cfg) {
  const int T = f.NumFrames();
  if (T == 0) throw Error("utterance " + f.utterance_id + " has no frames");
  std::vector<int32> cuts;
  if (T >= 2 * cfg.min_word_frames) {
    std::vector<double> score = DiscontinuityScores(f.frames, cfg);
    double mean = 0, sq = 0;
    for (int t = 1; t < T; ++t) {
      mean += score[t];
      sq += score[t] * score[t];
    }
    mean /= (T - 1);
    double sd = std::sqrt(std::max(0.0, sq / (T - 1) - mean * mean));
    double threshold = mean + cfg.peak_sigma * sd;

    std::vector<int32> peaks;
    for (int t = 1; t < T; ++t) {
      bool left_ok = t == 1 || score[t] >= score[t - 1];
      bool right_ok = t == T - 1 || score[t] > score[t + 1];
      if (left_ok && right_ok && score[t] > threshold && score[t] > 0) peaks.push_back(t);
    }
    std::stable_sort(peaks.begin(), peaks.end(),
                     [&](int32 a, int32 b) { return score[a] > score[b]; });
    const int gap = std::max(cfg.min_peak_gap, cfg.min_word_frames);
    for (int32 p : peaks) {
      if (p < cfg.min_word_frames || T - p < cfg.min_word_frames) continue;
      bool ok = true;
      for (int32 c : cuts) ok = ok && std::abs(p - c) >= gap;
      if (ok) cuts.push_back(p);
    }
    std::sort(cuts.begin(), cuts.end());
  }
  std::vector<SegmentBoundary> out;
  int32 start = 0;
  for (int32 c : cuts) {
    out.push_back({f.utterance_id, start, c});
    start = c;
  }
  out.push_back({f.utterance_id, start, T});
  return out;
}

}  // namespace lingstruct
