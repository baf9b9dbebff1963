// src/pipeline/consistency.cc

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

#include "pipeline/consistency.h"

#include <algorithm>
#include <utility>

namespace lingstruct {

namespace {

bool SameToken(const WordToken &a, const WordToken &b) {
  if (a.subwords.empty() || b.subwords.empty()) return a.word_id == b.word_id;
  return a.subwords == b.subwords;
}

// Matches in the best minimum edit distance alignment.
int64 AlignedMatches(const std::vector<WordToken> &a, const std::vector<WordToken> &b) {
  const std::size_t n = a.size(), m = b.size();
  // (cost, -matches), compared lexicographically.
  typedef std::pair<int64, int64> Cell;
  std::vector<Cell> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = {static_cast<int64>(j), 0};
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = {static_cast<int64>(i), 0};
    for (std::size_t j = 1; j <= m; ++j) {
      bool same = SameToken(a[i - 1], b[j - 1]);
      Cell diag = {prev[j - 1].first + (same ? 0 : 1), prev[j - 1].second - (same ? 1 : 0)};
      Cell del = {prev[j].first + 1, prev[j].second};
      Cell ins = {cur[j - 1].first + 1, cur[j - 1].second};
      cur[j] = std::min({diag, del, ins});
    }
    std::swap(prev, cur);
  }
  return -prev[m].second;
}

}  // namespace

Consistency ComputeConsistency(const CorpusLabels &prev, const CorpusLabels &next) {
  if (prev.Size() != next.Size())
    throw Error("consistency: labelings cover " + std::to_string(prev.Size()) + " and " +
                std::to_string(next.Size()) + " utterances");
  Consistency c;
  if (prev.Size() == 0) {
    c.word_level = c.utterance_level = 1.0;
    return c;
  }
  double word_sum = 0;
  int64 same_utts = 0;
  for (std::size_t u = 0; u < prev.Size(); ++u) {
    const auto &a = prev.utterances[u], &b = next.utterances[u];
    if (a.utterance_id != b.utterance_id)
      throw Error("consistency: utterance " + a.utterance_id + " paired with " +
                  b.utterance_id);
    std::size_t longest = std::max(a.tokens.size(), b.tokens.size());
    if (longest == 0) {
      word_sum += 1.0;
      ++same_utts;
      continue;
    }
    int64 matches = AlignedMatches(a.tokens, b.tokens);
    word_sum += static_cast<double>(matches) / static_cast<double>(longest);
    if (a.tokens.size() == b.tokens.size() && matches == static_cast<int64>(longest))
      ++same_utts;
  }
  c.word_level = word_sum / static_cast<double>(prev.Size());
  c.utterance_level = static_cast<double>(same_utts) / static_cast<double>(prev.Size());
  return c;
}

}  // namespace lingstruct
