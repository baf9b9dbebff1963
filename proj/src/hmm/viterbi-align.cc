// src/hmm/viterbi-align.cc

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

#include "hmm/viterbi-align.h"

#include <algorithm>

namespace lingstruct {

AlignResult ForceAlign(const FeatureMatrix &frames,
                       const std::vector<std::vector<int32>> &word_subwords,
                       const HmmSet &hmms) {
  // Flatten the chain: (model, state) per chain position.
  std::vector<int32> chain_model, chain_state, chain_token, chain_subword_index;
  int32 subword_index = 0;
  for (std::size_t w = 0; w < word_subwords.size(); ++w) {
    for (int32 sub : word_subwords[w]) {
      const SubwordHmm &m = hmms.Model(sub);
      for (int s = 0; s < m.NumStates(); ++s) {
        chain_model.push_back(sub);
        chain_state.push_back(s);
        chain_token.push_back(static_cast<int32>(w));
        chain_subword_index.push_back(subword_index);
      }
      ++subword_index;
    }
  }
  const int num_chain = static_cast<int>(chain_model.size());
  const int num_frames = static_cast<int>(frames.rows());
  if (num_chain == 0) throw InfeasibleAlignment("empty state chain");
  if (num_chain > num_frames)
    throw InfeasibleAlignment("state chain of " + std::to_string(num_chain) +
                              " states is longer than " + std::to_string(num_frames) +
                              " frames");

  std::vector<double> self(num_chain), next(num_chain);
  for (int j = 0; j < num_chain; ++j) {
    const SubwordHmm &m = hmms.Model(chain_model[j]);
    self[j] = m.log_self[chain_state[j]];
    next[j] = m.log_next[chain_state[j]];
  }

  // Position j is reachable at frame t iff j <= t and num_chain-1-j <= T-1-t.
  std::vector<double> prev(num_chain, kLogZero), cur(num_chain, kLogZero);
  std::vector<uint8_t> from_prev(static_cast<std::size_t>(num_frames) * num_chain, 0);
  for (int t = 0; t < num_frames; ++t) {
    int lo = std::max(0, num_chain - (num_frames - t));
    int hi = std::min(num_chain - 1, t);
    std::fill(cur.begin(), cur.end(), kLogZero);
    auto row = frames.row(t);
    for (int j = lo; j <= hi; ++j) {
      double best;
      uint8_t bp = 0;
      if (t == 0) {
        best = 0;
      } else {
        best = prev[j] + self[j];
        if (j > 0) {
          double adv = prev[j - 1] + next[j - 1];
          if (adv > best) {
            best = adv;
            bp = 1;
          }
        }
      }
      if (best == kLogZero) continue;
      const SubwordHmm &m = hmms.Model(chain_model[j]);
      cur[j] = best + m.states[chain_state[j]].LogLikelihood(row);
      from_prev[static_cast<std::size_t>(t) * num_chain + j] = bp;
    }
    std::swap(prev, cur);
  }

  AlignResult result;
  result.log_likelihood = prev[num_chain - 1] + next[num_chain - 1];
  if (result.log_likelihood == kLogZero)
    throw InfeasibleAlignment("no path with non-zero probability");
  result.alignment.resize(num_frames);
  result.subword_ends.assign(subword_index, 0);
  int j = num_chain - 1;
  for (int t = num_frames - 1; t >= 0; --t) {
    result.alignment[t] = {chain_token[j], chain_model[j], chain_state[j]};
    if (result.subword_ends[chain_subword_index[j]] == 0)
      result.subword_ends[chain_subword_index[j]] = t + 1;
    if (from_prev[static_cast<std::size_t>(t) * num_chain + j]) --j;
  }
  return result;
}

AlignResult ForceAlignWords(const FeatureSequence &features,
                            const std::vector<int32> &word_ids, const HmmSet &hmms,
                            const Lexicon &lexicon) {
  std::vector<std::vector<int32>> words;
  for (int32 w : word_ids) words.push_back(lexicon.Entry(w).subwords);
  return ForceAlign(features.frames, words, hmms);
}

}  // namespace lingstruct
