// src/pattree/lexical-mining.cc

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

#include "pattree/lexical-mining.h"

#include <algorithm>
#include <cmath>

namespace lingstruct {

void MineConfig::Validate() const {
  if (min_count < 0 || min_entropy < 0) throw Error("mining thresholds must be >= 0");
  if (min_len < 2 || max_len < min_len) throw Error("mining needs 2 <= min_len <= max_len");
}

double BranchingEntropy(const std::map<int32, int64> &counts) {
  double total = 0;
  for (const auto &[s, c] : counts) total += c;
  if (total <= 0) return 0;
  double h = 0;
  for (const auto &[s, c] : counts) {
    if (c <= 0) continue;
    double p = c / total;
    h -= p * std::log2(p);
  }
  return h;
}

std::vector<WordCandidate> MineCandidates(const PatTree &tree, const MineConfig &cfg) {
  cfg.Validate();
  std::vector<WordCandidate> out;
  tree.ForEachPattern(cfg.min_len, cfg.max_len, std::max<int64>(cfg.min_count, 1),
                      [&](const std::vector<int32> &pattern, int64 count,
                          const std::map<int32, int64> &left,
                          const std::map<int32, int64> &right) {
                        double hl = BranchingEntropy(left), hr = BranchingEntropy(right);
                        if (std::min(hl, hr) < cfg.min_entropy) return;
                        out.push_back({pattern, count, hl, hr});
                      });
  std::sort(out.begin(), out.end(), [](const WordCandidate &a, const WordCandidate &b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.subwords.size() != b.subwords.size()) return a.subwords.size() > b.subwords.size();
    return a.subwords < b.subwords;
  });
  return out;
}

std::vector<std::vector<int32>> SubwordSequences(const CorpusLabels &labels) {
  std::vector<std::vector<int32>> out;
  for (const auto &utt : labels.utterances) out.push_back(SubwordIds(utt));
  return out;
}

std::pair<CorpusLabels, Lexicon> RelabelWithCandidates(
    const CorpusLabels &labels, const std::vector<WordCandidate> &candidates,
    int32 inventory_size) {
  // Per first symbol, candidate indices ordered by length desc then input order.
  std::map<int32, std::vector<std::size_t>> by_first;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (candidates[c].subwords.empty()) continue;
    by_first[candidates[c].subwords[0]].push_back(c);
  }
  for (auto &[sym, list] : by_first) {
    std::stable_sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      return candidates[a].subwords.size() > candidates[b].subwords.size();
    });
  }

  std::vector<std::vector<int32>> used;
  CorpusLabels tokenized;
  for (const auto &utt : labels.utterances) {
    std::vector<SubwordSpan> spans = SubwordStream(utt);
    UtteranceLabels nu;
    nu.utterance_id = utt.utterance_id;
    std::size_t i = 0;
    while (i < spans.size()) {
      std::size_t take = 1;
      auto it = by_first.find(spans[i].subword);
      if (it != by_first.end()) {
        for (std::size_t c : it->second) {
          const auto &seq = candidates[c].subwords;
          if (i + seq.size() > spans.size()) continue;
          bool match = true;
          for (std::size_t k = 0; k < seq.size() && match; ++k)
            match = spans[i + k].subword == seq[k];
          if (match) {
            take = seq.size();
            if (take > 1) used.push_back(seq);
            break;
          }
        }
      }
      nu.tokens.push_back(MakeToken(-1, spans, i, i + take));
      i += take;
    }
    tokenized.utterances.push_back(std::move(nu));
  }
  Lexicon lex = CanonicalLexicon(used, tokenized, inventory_size);
  return {RewriteLabels(tokenized, lex), std::move(lex)};
}

nlohmann::json CandidatesToJson(const std::vector<WordCandidate> &cands) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &c : cands)
    arr.push_back({{"subwords", c.subwords},
                   {"count", c.count},
                   {"left_entropy", c.left_entropy},
                   {"right_entropy", c.right_entropy}});
  return {{"candidates", arr}};
}

std::vector<WordCandidate> CandidatesFromJson(const nlohmann::json &j) {
  std::vector<WordCandidate> out;
  for (const auto &jc : j.at("candidates"))
    out.push_back({jc.at("subwords").get<std::vector<int32>>(), jc.at("count").get<int64>(),
                   jc.value("left_entropy", 0.0), jc.value("right_entropy", 0.0)});
  return out;
}

}  // namespace lingstruct
