// src/pipeline/pipeline.h

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

#ifndef LINGSTRUCT_PIPELINE_PIPELINE_H_
#define LINGSTRUCT_PIPELINE_PIPELINE_H_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "feat/features.h"
#include "hmm/hmm-set.h"
#include "lex/lexicon.h"
#include "lex/ngram-lm.h"
#include "pipeline/consistency.h"
#include "pipeline/stage-config.h"

namespace lingstruct {

struct LedgerEntry {
  int iteration = 0;  // 1-based, counted across stages
  int stage = 0;      // 1, 2 or 3
  int32 lexicon_size = 0;
  int32 subword_count = 0;  // distinct subword patterns used by the labels
  double word_consistency = 0;
  double utt_consistency = 0;

  bool operator==(const LedgerEntry &) const = default;
};

struct PipelineState {
  CorpusLabels labels;
  HmmSet hmms;
  Lexicon lexicon;
  std::optional<NGramLM> lm;
  std::vector<LedgerEntry> ledger;
  /// Resume position: the stage to run next (4 = finished) and the number of
  /// its iterations already done.
  int stage = 1;
  int stage_iteration = 0;

  bool operator==(const PipelineState &) const = default;
};

/// Throws unless every token's subword sequence is its lexicon entry and
/// every subword id has a model.
void CheckState(const PipelineState &state);

/// Initializer output with flat-start HMMs.
PipelineState InitializeState(const FeatureCorpus &corpus, const StageConfig &cfg);

/// Each stage runs at most its cap of iterations and stops early once
/// utterance-level consistency reaches cfg.consistency_stop. A state already
/// past the stage is left alone. When `checkpoint` is non-empty the state is
/// written there (atomically) before every iteration.
void RunStageI(const FeatureCorpus &corpus, const StageConfig &cfg, PipelineState *state,
               const std::string &checkpoint = "");
void RunStageII(const FeatureCorpus &corpus, const StageConfig &cfg, PipelineState *state,
                const std::string &checkpoint = "");
void RunStageIII(const FeatureCorpus &corpus, const StageConfig &cfg, PipelineState *state,
                 const std::string &checkpoint = "");

/// Initializer and stages I, II, III. With a workdir, the checkpoint, the
/// ledger CSV and the final labels, lexicon, models and LM are written there;
/// with resume set, an existing checkpoint in the workdir is continued.
PipelineState RunFull(const FeatureCorpus &corpus, const StageConfig &cfg,
                      const std::string &workdir = "", bool resume = false);

std::string LedgerToCsv(const std::vector<LedgerEntry> &ledger);

nlohmann::json StateToJson(const PipelineState &state);
PipelineState StateFromJson(const nlohmann::json &j);

}  // namespace lingstruct

#endif  // LINGSTRUCT_PIPELINE_PIPELINE_H_
