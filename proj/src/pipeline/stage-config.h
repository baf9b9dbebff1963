// src/pipeline/stage-config.h

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

#ifndef LINGSTRUCT_PIPELINE_STAGE_CONFIG_H_
#define LINGSTRUCT_PIPELINE_STAGE_CONFIG_H_

#include <string>

#include "decoder/lexicon-decoder.h"
#include "hmm/hmm-train.h"
#include "init/initial-labels.h"
#include "pattree/lexical-mining.h"

namespace lingstruct {

struct StageConfig {
  /// Iteration caps of stages I, II and III.
  int I_a = 30;
  int I_l = 30;
  int I_x = 30;
  double consistency_stop = 0.995;
  uint64_t seed = 0;
  int64 min_count = 5;
  int lm_order = 2;
  InitConfig init;
  HmmTrainConfig train;
  DecodeConfig decode;
  MineConfig mine;

  void Validate() const;
};

/// Parses a flat "key = value" file; '#' starts a comment, string values may
/// be quoted. Unknown keys and malformed values throw. Keys not present keep
/// their defaults.
StageConfig ParseStageConfig(const std::string &text);
StageConfig LoadStageConfig(const std::string &path);

/// Every key with its current value, in the format ParseStageConfig reads.
std::string StageConfigToString(const StageConfig &cfg);

}  // namespace lingstruct

#endif  // LINGSTRUCT_PIPELINE_STAGE_CONFIG_H_
