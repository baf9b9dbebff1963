// src/synth/synth-corpus.h

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

#ifndef LINGSTRUCT_SYNTH_SYNTH_CORPUS_H_
#define LINGSTRUCT_SYNTH_SYNTH_CORPUS_H_

#include <string>
#include <vector>

#include <json.hpp>

#include "feat/features.h"
#include "hmm/hmm-set.h"
#include "lex/labels.h"

namespace lingstruct {

struct SynthSpec {
  int n_units = 5;
  int n_words = 8;
  int n_utterances = 200;
  int unit_state_count = 13;
  int min_word_units = 3;
  int max_word_units = 5;
  int min_utt_words = 2;
  int max_utt_words = 4;
  /// Mean state duration in frames (1 + geometric).
  double mean_state_duration = 1.5;
  double noise_sigma = 0.1;
  /// Scale of the random start and end points of each unit's mean trajectory.
  double separation = 3.0;
  /// Zipf exponent of the word distribution.
  double zipf_exponent = 1.0;
  /// When > 0, word 0 (the most frequent) has exactly this many units.
  int planted_word_units = 3;
  uint64_t seed = 1;

  void Validate() const;
};

SynthSpec ParseSynthSpec(const std::string &text);
SynthSpec LoadSynthSpec(const std::string &path);
std::string SynthSpecToString(const SynthSpec &spec);

struct GroundTruth {
  /// True words and unit spans; word_id is the true word, subwords the units.
  CorpusLabels labels;
  /// True HMM state of every frame.
  std::vector<std::vector<int32>> states;
  /// Unit sequence of every word.
  std::vector<std::vector<int32>> words;
  int n_units = 0;
  /// Models estimated by maximum likelihood from the true state alignment of
  /// the final (delta + CMVN) features.
  HmmSet hmms;

  /// True unit of a frame.
  int32 UnitAt(std::size_t utt, int32 frame) const;
};

struct SynthCorpus {
  FeatureCorpus corpus;
  GroundTruth truth;
};

/// Unit u is a left-to-right trajectory through unit_state_count means
/// interpolated between two random points in the static cepstral space;
/// every state emits 1 + geometric frames around its mean with noise_sigma.
/// Words are fixed unit sequences and utterances draw Zipf-distributed
/// words. Deltas and corpus CMVN are applied as for real features. Each
/// utterance has its own sub-seed, so the output is independent of the
/// number of workers.
SynthCorpus GenerateSynthCorpus(const SynthSpec &spec);

nlohmann::json TruthToJson(const GroundTruth &truth);
GroundTruth TruthFromJson(const nlohmann::json &j);
void SaveTruth(const GroundTruth &truth, const std::string &path);
GroundTruth LoadTruth(const std::string &path);

}  // namespace lingstruct

#endif  // LINGSTRUCT_SYNTH_SYNTH_CORPUS_H_
