// src/synth/pattern-eval.h

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

#ifndef LINGSTRUCT_SYNTH_PATTERN_EVAL_H_
#define LINGSTRUCT_SYNTH_PATTERN_EVAL_H_

#include <vector>

#include <json.hpp>

#include "synth/synth-corpus.h"

namespace lingstruct {

enum class CoOccurrence {
  kPerFrame,      // every frame of a discovered segment counts once
  kCentralFrame,  // a segment counts once, for the unit under its central frame
};

/// Co-occurrence counts of discovered subword patterns (rows) and true units
/// (columns), with the most probable unit per pattern (ties and empty rows go
/// to the lowest unit id).
struct MappingMatrix {
  std::vector<std::vector<int64>> counts;
  std::vector<int32> assignment;

  int64 Total() const;
};

/// Throws if the labels do not cover the truth's utterances frame for frame.
MappingMatrix MapPatterns(const CorpusLabels &labels, const GroundTruth &truth,
                          CoOccurrence mode = CoOccurrence::kPerFrame);

struct PatternAccuracy {
  double frame_purity = 0;
  double unit_accuracy = 0;
};

/// frame_purity: fraction of frames whose discovered pattern maps to the true
/// unit. unit_accuracy: 1 - sum of edit distances between the mapped
/// discovered subword strings and the true unit strings, divided by the sum
/// of the longer string lengths.
PatternAccuracy EvaluatePatterns(const CorpusLabels &labels, const GroundTruth &truth,
                                 const MappingMatrix &mapping);

/// Levenshtein distance with unit costs.
int64 EditDistance(const std::vector<int32> &a, const std::vector<int32> &b);

nlohmann::json MappingToJson(const MappingMatrix &m);

}  // namespace lingstruct

#endif  // LINGSTRUCT_SYNTH_PATTERN_EVAL_H_
