// src/decoder/lexicon-decoder.h

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

#ifndef LINGSTRUCT_DECODER_LEXICON_DECODER_H_
#define LINGSTRUCT_DECODER_LEXICON_DECODER_H_

#include <string>
#include <vector>

#include "feat/features.h"
#include "hmm/hmm-set.h"
#include "hmm/viterbi-align.h"
#include "lex/lexicon.h"
#include "lex/ngram-lm.h"

namespace lingstruct {

struct DecodeConfig {
  double lm_scale = 5.0;
  /// Log-domain penalty added per word; only applied together with the LM.
  double word_insertion_penalty = -2.0;
  /// Cells scoring below the frame's best minus beam are dropped. 0 = exact.
  double beam = 200.0;
  bool use_lm = false;

  void Validate() const;
};

struct DecodeResult {
  UtteranceLabels labels;
  double total_log_score = kLogZero;
  Alignment alignment;
};

/// Free-word Viterbi decoding: any sequence of lexicon words, each word the
/// concatenation of its subword HMMs. The score is the acoustic
/// log-likelihood plus, when cfg.use_lm is set, lm_scale * log P(word|prev)
/// and the insertion penalty for every word (and the end-of-sentence term).
/// Equal scores are resolved toward fewer tokens, then the lower word id.
/// The LM is applied through its bigram view. Throws InfeasibleAlignment
/// when no word sequence fits the utterance.
DecodeResult DecodeUtterance(const FeatureSequence &features, const HmmSet &hmms,
                             const Lexicon &lexicon, const NGramLM *lm,
                             const DecodeConfig &cfg);

struct CorpusDecodeResult {
  /// Failed utterances are present with an empty token list.
  CorpusLabels labels;
  std::vector<std::size_t> failed;
  double total_log_score = 0;
};

/// Decodes every utterance in parallel; order is preserved and failures are
/// collected rather than thrown.
CorpusDecodeResult DecodeCorpus(const FeatureCorpus &corpus, const HmmSet &hmms,
                                const Lexicon &lexicon, const NGramLM *lm,
                                const DecodeConfig &cfg);

}  // namespace lingstruct

#endif  // LINGSTRUCT_DECODER_LEXICON_DECODER_H_
