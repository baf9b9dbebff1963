// src/hmm/hmm-train.h

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

#ifndef LINGSTRUCT_HMM_HMM_TRAIN_H_
#define LINGSTRUCT_HMM_HMM_TRAIN_H_

#include <string>
#include <vector>

#include "feat/features.h"
#include "hmm/hmm-set.h"
#include "hmm/viterbi-align.h"
#include "lex/labels.h"

namespace lingstruct {

struct HmmTrainConfig {
  int states_per_model = 13;
  int em_iters = 5;
  /// Variance floor as a fraction of the corpus-wide per-dimension variance.
  double var_floor_scale = 1e-3;
  /// Self-loop probabilities are kept inside [min_self_prob, 1 - min_self_prob].
  double min_self_prob = 1e-3;
};

struct HmmTrainStats {
  /// Corpus Viterbi log-likelihood under the model entering each EM round,
  /// followed by the value under the final model (em_iters + 1 entries).
  std::vector<double> corpus_log_likelihood;
  /// Utterances whose label chain did not fit their frame count.
  std::vector<std::string> skipped;
  /// Patterns with no occurrences at initialization (global statistics used).
  std::vector<int32> flagged;
};

/// Per-dimension variance floor for a corpus.
Vector VarianceFloor(const FeatureCorpus &corpus, double scale);

/// Flat start: every occurrence of a pattern is split uniformly over the
/// states (each state sees at least one frame), state Gaussians are ML
/// estimates over their frames, and self-loop probabilities follow the
/// average state duration. num_models may exceed the ids used in labels;
/// unseen patterns get the global statistics and are reported in
/// stats->flagged.
HmmSet InitHmmsFromLabels(const FeatureCorpus &corpus, const CorpusLabels &labels,
                          int32 num_models, const HmmTrainConfig &cfg,
                          HmmTrainStats *stats = nullptr);

/// cfg.em_iters rounds of Viterbi EM, warm-started from `hmms`. Each round
/// force-aligns every utterance to its label chain and re-estimates means,
/// variances and transitions from the aligned frames. Models without aligned
/// frames keep their parameters. When stats is given, the final model is
/// also scored so the log-likelihood trace has em_iters + 1 entries.
HmmSet TrainHmms(const FeatureCorpus &corpus, const CorpusLabels &labels,
                 const HmmSet &hmms, const HmmTrainConfig &cfg,
                 HmmTrainStats *stats = nullptr);

/// Maximum-likelihood models from fixed per-frame state alignments (one per
/// utterance, in corpus order). Models without frames get the global
/// statistics.
HmmSet EstimateHmmsFromAlignment(const FeatureCorpus &corpus,
                                 const std::vector<AlignResult> &alignments,
                                 int32 num_models, const HmmTrainConfig &cfg);

/// Total Viterbi log-likelihood of the corpus under its labels; utterances
/// that cannot be aligned are skipped.
double CorpusLogLikelihood(const FeatureCorpus &corpus, const CorpusLabels &labels,
                           const HmmSet &hmms);

}  // namespace lingstruct

#endif  // LINGSTRUCT_HMM_HMM_TRAIN_H_
