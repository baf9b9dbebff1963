// src/synth/pattern-eval.cc

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

#include "synth/pattern-eval.h"

#include <algorithm>

namespace lingstruct {

int64 MappingMatrix::Total() const {
  int64 t = 0;
  for (const auto &row : counts)
    for (int64 c : row) t += c;
  return t;
}

namespace {

void CheckCover(const CorpusLabels &labels, const GroundTruth &truth) {
  if (labels.Size() != truth.labels.Size())
    throw Error("labels cover " + std::to_string(labels.Size()) + " utterances, truth " +
                std::to_string(truth.labels.Size()));
  for (std::size_t u = 0; u < labels.Size(); ++u) {
    const auto &a = labels.utterances[u], &b = truth.labels.utterances[u];
    if (a.utterance_id != b.utterance_id || a.NumFrames() != b.NumFrames())
      throw Error("labels of " + a.utterance_id + " do not match the truth");
  }
}

// Per-frame true units of an utterance.
std::vector<int32> TrueUnits(const UtteranceLabels &utt) {
  std::vector<int32> out;
  for (const auto &span : SubwordStream(utt))
    out.insert(out.end(), span.end_frame - span.start_frame, span.subword);
  return out;
}

}  // namespace

MappingMatrix MapPatterns(const CorpusLabels &labels, const GroundTruth &truth,
                          CoOccurrence mode) {
  CheckCover(labels, truth);
  MappingMatrix m;
  const int32 rows = SubwordInventoryBound(labels);
  m.counts.assign(rows, std::vector<int64>(truth.n_units, 0));
  for (std::size_t u = 0; u < labels.Size(); ++u) {
    std::vector<int32> units = TrueUnits(truth.labels.utterances[u]);
    for (const auto &span : SubwordStream(labels.utterances[u])) {
      if (mode == CoOccurrence::kPerFrame) {
        for (int32 t = span.start_frame; t < span.end_frame; ++t)
          ++m.counts[span.subword][units[t]];
      } else {
        int32 centre = span.start_frame + (span.end_frame - span.start_frame - 1) / 2;
        ++m.counts[span.subword][units[centre]];
      }
    }
  }
  for (const auto &row : m.counts)
    m.assignment.push_back(
        static_cast<int32>(std::max_element(row.begin(), row.end()) - row.begin()));
  return m;
}

int64 EditDistance(const std::vector<int32> &a, const std::vector<int32> &b) {
  std::vector<int64> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int64>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int64>(i);
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1])});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

PatternAccuracy EvaluatePatterns(const CorpusLabels &labels, const GroundTruth &truth,
                                 const MappingMatrix &mapping) {
  CheckCover(labels, truth);
  int64 frames = 0, correct = 0, errors = 0, longest = 0;
  for (std::size_t u = 0; u < labels.Size(); ++u) {
    std::vector<int32> units = TrueUnits(truth.labels.utterances[u]);
    std::vector<int32> hyp;
    for (const auto &span : SubwordStream(labels.utterances[u])) {
      int32 mapped = span.subword < static_cast<int32>(mapping.assignment.size())
                         ? mapping.assignment[span.subword]
                         : -1;
      hyp.push_back(mapped);
      for (int32 t = span.start_frame; t < span.end_frame; ++t) {
        ++frames;
        if (units[t] == mapped) ++correct;
      }
    }
    std::vector<int32> ref = SubwordIds(truth.labels.utterances[u]);
    errors += EditDistance(ref, hyp);
    longest += static_cast<int64>(std::max(ref.size(), hyp.size()));
  }
  if (frames == 0) throw Error("no frames to evaluate");
  PatternAccuracy acc;
  acc.frame_purity = static_cast<double>(correct) / static_cast<double>(frames);
  acc.unit_accuracy =
      longest == 0 ? 1.0 : 1.0 - static_cast<double>(errors) / static_cast<double>(longest);
  return acc;
}

nlohmann::json MappingToJson(const MappingMatrix &m) {
  return {{"counts", m.counts}, {"assignment", m.assignment}};
}

}  // namespace lingstruct
