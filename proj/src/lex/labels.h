// src/lex/labels.h

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

#ifndef LINGSTRUCT_LEX_LABELS_H_
#define LINGSTRUCT_LEX_LABELS_H_

#include <string>
#include <vector>

#include <json.hpp>

#include "base/common.h"

namespace lingstruct {

class FeatureCorpus;

/// One word-like token: a lexicon entry id, its frame span and the subword
/// pattern ids it is made of. subword_ends[k] is the exclusive end frame of
/// subwords[k]; the last one equals end_frame.
struct WordToken {
  int32 word_id = -1;
  int32 start_frame = 0;
  int32 end_frame = 0;
  std::vector<int32> subwords;
  std::vector<int32> subword_ends;

  int32 SubwordStart(std::size_t k) const {
    return k == 0 ? start_frame : subword_ends[k - 1];
  }

  bool operator==(const WordToken &) const = default;
};

struct UtteranceLabels {
  std::string utterance_id;
  std::vector<WordToken> tokens;

  int32 NumFrames() const { return tokens.empty() ? 0 : tokens.back().end_frame; }
  bool operator==(const UtteranceLabels &) const = default;
};

/// A subword-level view of one utterance.
struct SubwordSpan {
  int32 subword = -1;
  int32 start_frame = 0;
  int32 end_frame = 0;
  bool operator==(const SubwordSpan &) const = default;
};

/// Per-utterance word-like token sequences with time alignments.
struct CorpusLabels {
  std::vector<UtteranceLabels> utterances;

  std::size_t Size() const { return utterances.size(); }
  bool operator==(const CorpusLabels &) const = default;
};

std::vector<SubwordSpan> SubwordStream(const UtteranceLabels &utt);
std::vector<int32> SubwordIds(const UtteranceLabels &utt);

/// Builds a single token from consecutive subword spans; the word id is left
/// for the caller.
WordToken MakeToken(int32 word_id, const std::vector<SubwordSpan> &spans,
                    std::size_t begin, std::size_t end);

/// Throws unless tokens tile [0, num_frames) of each utterance without gaps,
/// overlaps, or empty spans, and the utterance ids line up with the corpus.
void CheckTiling(const CorpusLabels &labels, const FeatureCorpus &corpus);

/// Largest subword id used plus one.
int32 SubwordInventoryBound(const CorpusLabels &labels);

nlohmann::json LabelsToJson(const CorpusLabels &labels);
CorpusLabels LabelsFromJson(const nlohmann::json &j);
void SaveLabels(const CorpusLabels &labels, const std::string &path);
CorpusLabels LoadLabels(const std::string &path);

}  // namespace lingstruct

#endif  // LINGSTRUCT_LEX_LABELS_H_
