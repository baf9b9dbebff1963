// src/feat/feature-archive.h

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

#ifndef LINGSTRUCT_FEAT_FEATURE_ARCHIVE_H_
#define LINGSTRUCT_FEAT_FEATURE_ARCHIVE_H_

#include <string>

#include "feat/features.h"

namespace lingstruct {

// Little-endian layout:
//   "PFF1" | version u32 (=1) | n_utts u32
//   per utterance: id_len u32 | id bytes (UTF-8) | n_frames u32 | dim u32 |
//                  n_frames * dim f32, row-major
// The frame shift is not stored; loaded sequences carry the 10 ms default.

constexpr uint32 kArchiveVersion = 1;

std::string SerializeCorpus(const FeatureCorpus &corpus);
FeatureCorpus DeserializeCorpus(const std::string &bytes);

void SaveCorpus(const FeatureCorpus &corpus, const std::string &path);
FeatureCorpus LoadCorpus(const std::string &path);

}  // namespace lingstruct

#endif  // LINGSTRUCT_FEAT_FEATURE_ARCHIVE_H_
