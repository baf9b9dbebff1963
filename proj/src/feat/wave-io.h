// src/feat/wave-io.h

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

#ifndef LINGSTRUCT_FEAT_WAVE_IO_H_
#define LINGSTRUCT_FEAT_WAVE_IO_H_

#include <string>
#include <vector>

namespace lingstruct {

struct Waveform {
  std::vector<float> samples;  // normalized to [-1, 1]
  double sample_rate = 0;
  std::string id;
};

/// Reads a RIFF/WAVE file holding 16-bit PCM mono audio. The waveform id is
/// the file stem.
Waveform LoadWav(const std::string &path);

/// Writes 16-bit PCM mono; samples are clipped to [-1, 1].
void SaveWav(const Waveform &wave, const std::string &path);

/// Same as SaveWav but with an arbitrary channel count (samples interleaved).
/// Only used to produce fixtures for rejection tests.
void SaveWavInterleaved(const std::vector<float> &samples, int channels,
                        int sample_rate, const std::string &path);

}  // namespace lingstruct

#endif  // LINGSTRUCT_FEAT_WAVE_IO_H_
