// src/hmm/viterbi-align.h

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

#ifndef LINGSTRUCT_HMM_VITERBI_ALIGN_H_
#define LINGSTRUCT_HMM_VITERBI_ALIGN_H_

#include <vector>

#include "feat/features.h"
#include "hmm/hmm-set.h"
#include "lex/lexicon.h"

namespace lingstruct {

struct FrameAlignment {
  int32 token_index = 0;  // position of the word token in the utterance
  int32 subword = 0;      // subword pattern id
  int32 state = 0;        // state within the subword HMM

  bool operator==(const FrameAlignment &) const = default;
};

typedef std::vector<FrameAlignment> Alignment;

struct AlignResult {
  Alignment alignment;
  double log_likelihood = kLogZero;
  /// Exclusive end frame of every subword in the aligned chain, in order.
  std::vector<int32> subword_ends;
};

/// Viterbi best path through the concatenation of the given words' subword
/// HMMs. The path starts in the first state at frame 0, ends in the last
/// state at the final frame, and pays the exit transition of the last state.
/// Throws InfeasibleAlignment if the chain has more states than frames.
AlignResult ForceAlign(const FeatureMatrix &frames,
                       const std::vector<std::vector<int32>> &word_subwords,
                       const HmmSet &hmms);

/// Same, with words given as lexicon ids.
AlignResult ForceAlignWords(const FeatureSequence &features,
                            const std::vector<int32> &word_ids, const HmmSet &hmms,
                            const Lexicon &lexicon);

}  // namespace lingstruct

#endif  // LINGSTRUCT_HMM_VITERBI_ALIGN_H_
