// src/pattree/lexical-mining.h

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

#ifndef LINGSTRUCT_PATTREE_LEXICAL_MINING_H_
#define LINGSTRUCT_PATTREE_LEXICAL_MINING_H_

#include <map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lex/labels.h"
#include "lex/lexicon.h"
#include "pattree/pat-tree.h"

namespace lingstruct {

struct WordCandidate {
  std::vector<int32> subwords;
  int64 count = 0;
  double left_entropy = 0;   // bits
  double right_entropy = 0;  // bits

  bool operator==(const WordCandidate &) const = default;
};

struct MineConfig {
  int64 min_count = 5;
  double min_entropy = 1.0;
  int min_len = 2;
  int max_len = 8;

  void Validate() const;
};

/// Shannon entropy (bits) of a count distribution.
double BranchingEntropy(const std::map<int32, int64> &counts);

/// Frequent strings of min_len..max_len subwords whose left and right
/// branching entropies both reach min_entropy. Sorted by count (desc), then
/// length (desc), then sequence.
std::vector<WordCandidate> MineCandidates(const PatTree &tree, const MineConfig &cfg);

/// Flattens every utterance to its subword stream and re-tokenizes it by
/// greedy longest match over the candidates (earlier candidates win between
/// equal lengths); unmatched subwords become singleton tokens. Returns the
/// new labels and a canonical lexicon of the used candidates plus all
/// singletons.
std::pair<CorpusLabels, Lexicon> RelabelWithCandidates(
    const CorpusLabels &labels, const std::vector<WordCandidate> &candidates,
    int32 inventory_size);

/// Subword streams of every utterance, the PAT-tree input.
std::vector<std::vector<int32>> SubwordSequences(const CorpusLabels &labels);

nlohmann::json CandidatesToJson(const std::vector<WordCandidate> &cands);
std::vector<WordCandidate> CandidatesFromJson(const nlohmann::json &j);

}  // namespace lingstruct

#endif  // LINGSTRUCT_PATTREE_LEXICAL_MINING_H_
