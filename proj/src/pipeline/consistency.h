// src/pipeline/consistency.h

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

#ifndef LINGSTRUCT_PIPELINE_CONSISTENCY_H_
#define LINGSTRUCT_PIPELINE_CONSISTENCY_H_

#include "lex/labels.h"

namespace lingstruct {

struct Consistency {
  double word_level = 0;
  double utterance_level = 0;
};

/// Agreement between two labelings of the same utterances. Tokens are
/// compared by subword sequence, so lexicon renumbering between iterations
/// does not count as a change; tokens without subwords fall back to word id.
/// utterance_level is the fraction of utterances with identical token
/// sequences. word_level averages, over utterances, the number of matched
/// tokens in a minimum edit distance alignment (the alignment with most
/// matches among the optimal ones) divided by the larger token count; two
/// empty utterances agree fully. Throws if the utterance ids differ.
Consistency ComputeConsistency(const CorpusLabels &prev, const CorpusLabels &next);

}  // namespace lingstruct

#endif  // LINGSTRUCT_PIPELINE_CONSISTENCY_H_
