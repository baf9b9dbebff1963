// src/init/word-segment.h

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

#ifndef LINGSTRUCT_INIT_WORD_SEGMENT_H_
#define LINGSTRUCT_INIT_WORD_SEGMENT_H_

#include <string>
#include <vector>

#include "feat/features.h"

namespace lingstruct {

struct SegmentBoundary {
  std::string utterance_id;
  int32 start_frame = 0;
  int32 end_frame = 0;  // exclusive

  bool operator==(const SegmentBoundary &) const = default;
};

struct WordSegmentConfig {
  int min_word_frames = 20;
  int min_peak_gap = 10;
  double energy_weight = 0.5;
  double spectral_weight = 0.5;
  /// Frames averaged on each side when comparing spectral means.
  int mean_window = 5;
  /// Peaks must exceed mean + peak_sigma * stddev of the utterance's scores.
  double peak_sigma = 1.0;
};

/// Discontinuity score for the boundary before every frame (score[0] = 0):
/// energy_weight * |delta log-energy| + spectral_weight * distance between
/// the mean static cepstra (c1..c12) of the mean_window frames on each side.
std::vector<double> DiscontinuityScores(const FeatureMatrix &frames,
                                        const WordSegmentConfig &cfg);

/// Splits an utterance into word-like segments at peaks of the discontinuity
/// score. Segments tile the utterance and are never shorter than
/// min_word_frames (a shorter utterance yields one segment).
std::vector<SegmentBoundary> DetectWordSegments(const FeatureSequence &f,
                                                const WordSegmentConfig &cfg);

}  // namespace lingstruct

#endif  // LINGSTRUCT_INIT_WORD_SEGMENT_H_
