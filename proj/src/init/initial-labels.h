// src/init/initial-labels.h

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

#ifndef LINGSTRUCT_INIT_INITIAL_LABELS_H_
#define LINGSTRUCT_INIT_INITIAL_LABELS_H_

#include <vector>

#include "feat/features.h"
#include "init/kmeans.h"
#include "init/word-segment.h"
#include "lex/lexicon.h"

namespace lingstruct {

enum class InitMethod {
  kTwoLevel,  // word segments, then watershed subword segments inside each
  kOneLevel,  // watershed over the whole utterance; every subword is a word
  kRandom,    // two-level segmentation with uniformly random subword ids
};

/// Parses "two-level", "one-level" or "random"; throws otherwise.
InitMethod ParseInitMethod(const std::string &name);
std::string InitMethodName(InitMethod m);

struct InitConfig {
  WordSegmentConfig word;
  double dotplot_sigma = 1.0;
  int min_subword_frames = 13;
  int k_min = 2;
  int k_max = 0;  // <= 0: min(300, #segments / 10)
  double scatter_threshold = 0.5;
  int kmeans_restarts = 10;
  uint64_t seed = 0;
  InitMethod method = InitMethod::kTwoLevel;
};

struct InitialLabels {
  CorpusLabels labels;
  int32 n_subword_patterns = 0;
  Lexicon initial_lexicon;
  ClusteringResult clustering;
};

/// Mean of the rows.
Vector RepresentativeVector(const FeatureMatrix &seg_frames);

/// Subword segment boundaries (relative, sorted, interior) of one word-like
/// segment: watershed on its dotplot, after which segments shorter than
/// min_frames are merged into the neighbour with the nearer mean.
std::vector<int32> SubwordSegments(const FeatureMatrix &seg_frames, double sigma,
                                   int min_frames);

/// Full initialization chain. Every word-like segment's subword id sequence
/// becomes a word-like pattern and the initial lexicon holds all of them.
InitialLabels BuildInitialLabels(const FeatureCorpus &corpus, const InitConfig &cfg);

}  // namespace lingstruct

#endif  // LINGSTRUCT_INIT_INITIAL_LABELS_H_
