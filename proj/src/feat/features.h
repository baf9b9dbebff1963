// src/feat/features.h

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

#ifndef LINGSTRUCT_FEAT_FEATURES_H_
#define LINGSTRUCT_FEAT_FEATURES_H_

#include <string>
#include <vector>

#include "base/common.h"
#include "feat/wave-io.h"

namespace lingstruct {

/// Number of static cepstra (c0 = log energy) in every feature frame; the
/// remaining columns are first and second order deltas.
constexpr int kNumStaticCeps = 13;

struct FeatureSequence {
  std::string utterance_id;
  double frame_shift_ms = 10.0;
  FeatureMatrix frames;  // one frame per row

  int NumFrames() const { return static_cast<int>(frames.rows()); }
  int Dim() const { return static_cast<int>(frames.cols()); }

  bool operator==(const FeatureSequence &other) const {
    return utterance_id == other.utterance_id &&
           frame_shift_ms == other.frame_shift_ms &&
           frames.rows() == other.frames.rows() &&
           frames.cols() == other.frames.cols() && frames == other.frames;
  }
};

/// Ordered utterances with unique ids.
class FeatureCorpus {
 public:
  FeatureCorpus() = default;

  /// Throws if the id is already present or the dimension disagrees with
  /// earlier utterances.
  void Add(FeatureSequence seq);

  const std::vector<FeatureSequence> &Utterances() const { return utts_; }
  std::vector<FeatureSequence> &MutableUtterances() { return utts_; }
  const FeatureSequence &operator[](std::size_t i) const { return utts_[i]; }
  std::size_t Size() const { return utts_.size(); }
  bool Empty() const { return utts_.empty(); }
  int Dim() const { return utts_.empty() ? 0 : utts_[0].Dim(); }
  int64 TotalFrames() const;

  bool operator==(const FeatureCorpus &other) const { return utts_ == other.utts_; }

 private:
  std::vector<FeatureSequence> utts_;
};

struct FeatureConfig {
  double window_ms = 25.0;
  double shift_ms = 10.0;
  int num_mel_bins = 40;
  int num_ceps = kNumStaticCeps;
  double preemph = 0.97;
  double low_freq = 20.0;
  double high_freq = 0.0;  // <= 0 means relative to Nyquist
  int delta_window = 2;
  bool apply_cmvn = true;
};

/// 13 MFCC (c0 replaced by log frame energy) plus deltas and delta-deltas.
/// Frame count = floor((num_samples - window) / shift) + 1. CMVN is a corpus
/// level operation and is not applied here.
FeatureSequence ComputeFeatures(const Waveform &wave, const FeatureConfig &cfg);

/// Appends delta and delta-delta columns, each a +-window linear regression
/// with edge frames replicated.
FeatureMatrix AddDeltas(const FeatureMatrix &statics, int window);

/// Normalizes every dimension to zero mean and unit variance over all frames
/// of the corpus. Dimensions with zero variance are only mean-shifted.
void ApplyCorpusCmvn(FeatureCorpus *corpus);

/// Extracts features for every waveform (in parallel) and applies CMVN when
/// cfg.apply_cmvn is set.
FeatureCorpus ComputeCorpusFeatures(const std::vector<Waveform> &waves,
                                    const FeatureConfig &cfg);

}  // namespace lingstruct

#endif  // LINGSTRUCT_FEAT_FEATURES_H_
