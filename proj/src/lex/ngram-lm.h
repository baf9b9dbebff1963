// src/lex/ngram-lm.h

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

#ifndef LINGSTRUCT_LEX_NGRAM_LM_H_
#define LINGSTRUCT_LEX_NGRAM_LM_H_

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "lex/labels.h"

namespace lingstruct {

/// Sentence markers share the word-id space with lexicon entries.
constexpr int32 kBos = -1;
constexpr int32 kEos = -2;

/// Backoff N-gram model over word-pattern ids. Probabilities are natural
/// logs internally; ARPA output uses log10.
class NGramLM {
 public:
  NGramLM() = default;

  int Order() const { return order_; }

  /// Words that can be predicted: the vocabulary plus kEos.
  const std::vector<int32> &PredictedWords() const { return predicted_; }
  bool InVocabulary(int32 word) const;

  /// log P(word | context). Only the last Order()-1 context items are used.
  /// Words outside the vocabulary get the unseen-word unigram mass.
  double LogProb(const std::vector<int32> &context, int32 word) const;

  /// log backoff weight of a context (0 when the context was never seen).
  double LogBackoff(const std::vector<int32> &context) const;

  /// Contexts with explicit entries; the empty context is the unigram table.
  const std::map<std::vector<int32>, std::map<int32, double>> &Table() const {
    return probs_;
  }

  bool operator==(const NGramLM &o) const {
    return order_ == o.order_ && predicted_ == o.predicted_ && probs_ == o.probs_ &&
           backoff_ == o.backoff_ && unk_log_prob_ == o.unk_log_prob_;
  }

  friend NGramLM EstimateNgram(const CorpusLabels &, int, const std::vector<int32> &);
  friend NGramLM ReadArpa(const std::string &);
  friend NGramLM LmFromJson(const nlohmann::json &);
  friend nlohmann::json LmToJson(const NGramLM &);

 private:
  int order_ = 0;
  std::vector<int32> predicted_;  // sorted
  std::map<std::vector<int32>, std::map<int32, double>> probs_;
  std::map<std::vector<int32>, double> backoff_;
  double unk_log_prob_ = kLogZero;
};

/// Witten-Bell smoothed model of the given order, written in backoff form.
/// Each utterance is wrapped in sentence markers. `vocabulary` lists words
/// that must receive probability mass even if unseen; every word occurring
/// in the labels is added to it. Throws on empty labels or order < 1.
NGramLM EstimateNgram(const CorpusLabels &labels, int order,
                      const std::vector<int32> &vocabulary = {});

/// Sum of conditional log probabilities of the sequence, including the
/// end-of-sentence marker.
double LmLogProb(const NGramLM &lm, const std::vector<int32> &sequence);

std::string WriteArpa(const NGramLM &lm);
NGramLM ReadArpa(const std::string &text);

/// Exact (bit-preserving) serialization, used for checkpoints.
nlohmann::json LmToJson(const NGramLM &lm);
NGramLM LmFromJson(const nlohmann::json &j);

}  // namespace lingstruct

#endif  // LINGSTRUCT_LEX_NGRAM_LM_H_
