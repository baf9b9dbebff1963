// tests/oracles.cc

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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

namespace lingstruct {
namespace oracle {

namespace {

struct Position {
  const GaussianState *state;
  double self, next;
};

std::vector<Position> Chain(const std::vector<int32> &models, const HmmSet &hmms) {
  std::vector<Position> chain;
  for (int32 m : models) {
    const SubwordHmm &h = hmms.Model(m);
    for (int s = 0; s < h.NumStates(); ++s)
      chain.push_back({&h.states[s], h.log_self[s], h.log_next[s]});
  }
  return chain;
}

double Entropy(const std::map<int32, int64> &counts) {
  double total = 0, h = 0;
  for (const auto &kv : counts) total += static_cast<double>(kv.second);
  for (const auto &kv : counts) {
    double p = static_cast<double>(kv.second) / total;
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

double AlignScore(const FeatureMatrix &frames, const std::vector<int32> &models,
                  const HmmSet &hmms) {
  const std::vector<Position> chain = Chain(models, hmms);
  const int T = static_cast<int>(frames.rows());
  const int P = static_cast<int>(chain.size());
  if (P == 0 || P > T) return kLogZero;
  double best = kLogZero;
  std::vector<int> dur(P);
  // Enumerate every composition of T into P positive durations.
  std::function<void(int, int)> rec = [&](int p, int left) {
    if (p == P - 1) {
      dur[p] = left;
      double score = 0;
      int t = 0;
      for (int q = 0; q < P; ++q) {
        for (int k = 0; k < dur[q]; ++k, ++t) score += chain[q].state->LogLikelihood(frames.row(t));
        score += (dur[q] - 1) * chain[q].self + chain[q].next;
      }
      best = std::max(best, score);
      return;
    }
    for (int d = 1; d <= left - (P - 1 - p); ++d) {
      dur[p] = d;
      rec(p + 1, left - d);
    }
  };
  rec(0, T);
  return best;
}

double NumPaths(int frames, int states) {
  if (states < 1 || states > frames) return 0;
  double c = 1;
  for (int k = 1; k <= states - 1; ++k) c = c * (frames - k) / k;
  return c;
}

double DecodeScore(const FeatureMatrix &frames, const HmmSet &hmms, const Lexicon &lex,
                   const NGramLM *lm, double scale, double wip) {
  const int T = static_cast<int>(frames.rows());
  const int W = lex.Size();
  std::map<std::tuple<int, int, int>, double> memo;
  auto segment = [&](int start, int end, int w) {
    auto key = std::make_tuple(start, end, w);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    FeatureMatrix block = frames.middleRows(start, end - start);
    double s = AlignScore(block, lex.Entry(w).subwords, hmms);
    memo[key] = s;
    return s;
  };
  double best = kLogZero;
  std::vector<int32> history{kBos};
  std::function<void(int, double)> rec = [&](int t, double acc) {
    if (t == T) {
      double total = acc + (lm ? scale * lm->LogProb(history, kEos) : 0.0);
      best = std::max(best, total);
      return;
    }
    for (int w = 0; w < W; ++w) {
      for (int end = t + 1; end <= T; ++end) {
        double s = segment(t, end, w);
        if (s == kLogZero) continue;
        double add = s + (lm ? scale * lm->LogProb(history, w) + wip : 0.0);
        history.push_back(w);
        rec(end, acc + add);
        history.pop_back();
      }
    }
  };
  rec(0, 0.0);
  return best;
}

double TokenSequenceScore(const FeatureMatrix &frames, const HmmSet &hmms,
                          const Lexicon &lex, const NGramLM *lm, double scale, double wip,
                          const UtteranceLabels &utt) {
  double total = 0;
  std::vector<int32> history{kBos};
  for (const auto &tok : utt.tokens) {
    FeatureMatrix block = frames.middleRows(tok.start_frame, tok.end_frame - tok.start_frame);
    total += AlignScore(block, lex.Entry(tok.word_id).subwords, hmms);
    if (lm) total += scale * lm->LogProb(history, tok.word_id) + wip;
    history.push_back(tok.word_id);
  }
  if (lm) total += scale * lm->LogProb(history, kEos);
  return total;
}

double HmmDistance(const SubwordHmm &a, const SubwordHmm &b) {
  const int n = a.NumStates(), m = b.NumStates();
  double best_cost = std::numeric_limits<double>::infinity();
  int best_len = 0;
  std::function<void(int, int, double, int)> rec = [&](int i, int j, double cost, int len) {
    cost += KlGaussian(a.states[i], b.states[j]);
    ++len;
    if (i == n - 1 && j == m - 1) {
      if (cost < best_cost || (cost == best_cost && len < best_len)) {
        best_cost = cost;
        best_len = len;
      }
      return;
    }
    if (i + 1 < n && j + 1 < m) rec(i + 1, j + 1, cost, len);
    if (i + 1 < n) rec(i + 1, j, cost, len);
    if (j + 1 < m) rec(i, j + 1, cost, len);
  };
  rec(0, 0, 0.0, 0);
  return best_cost / best_len;
}

double SequenceDistance(const std::vector<int32> &q, const std::vector<int32> &u,
                        const ModelDistanceTable &table) {
  const int n = static_cast<int>(q.size()), m = static_cast<int>(u.size());
  double best = std::numeric_limits<double>::infinity();
  std::function<void(int, int, double)> rec = [&](int i, int j, double cost) {
    cost += table(q[i], u[j]);
    if (i == n - 1) best = std::min(best, cost);
    if (i + 1 < n && j + 1 < m) rec(i + 1, j + 1, cost);
    if (i + 1 < n) rec(i + 1, j, cost);
    if (j + 1 < m) rec(i, j + 1, cost);
  };
  for (int s = 0; s < m; ++s) rec(0, s, 0.0);
  return best;
}

int64 Count(const std::vector<std::vector<int32>> &seqs, const std::vector<int32> &pattern) {
  int64 c = 0;
  for (const auto &s : seqs) {
    if (pattern.empty() || s.size() < pattern.size()) continue;
    for (std::size_t i = 0; i + pattern.size() <= s.size(); ++i)
      if (std::equal(pattern.begin(), pattern.end(), s.begin() + i)) ++c;
  }
  return c;
}

std::vector<WordCandidate> Mine(const std::vector<std::vector<int32>> &seqs,
                                const MineConfig &cfg) {
  struct Stats {
    int64 count = 0;
    std::map<int32, int64> left, right;
  };
  std::map<std::vector<int32>, Stats> all;
  for (const auto &s : seqs) {
    const int len = static_cast<int>(s.size());
    for (int n = cfg.min_len; n <= cfg.max_len; ++n) {
      for (int i = 0; i + n <= len; ++i) {
        Stats &st = all[std::vector<int32>(s.begin() + i, s.begin() + i + n)];
        ++st.count;
        ++st.left[i == 0 ? PatTree::kSeqBegin : s[i - 1]];
        ++st.right[i + n == len ? PatTree::kSeqEnd : s[i + n]];
      }
    }
  }
  std::vector<WordCandidate> out;
  for (const auto &[pat, st] : all) {
    if (st.count < cfg.min_count) continue;
    double hl = Entropy(st.left), hr = Entropy(st.right);
    if (hl < cfg.min_entropy || hr < cfg.min_entropy) continue;
    out.push_back({pat, st.count, hl, hr});
  }
  std::sort(out.begin(), out.end(), [](const WordCandidate &a, const WordCandidate &b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.subwords.size() != b.subwords.size()) return a.subwords.size() > b.subwords.size();
    return a.subwords < b.subwords;
  });
  return out;
}

std::vector<std::vector<int32>> Tokenize(const std::vector<int32> &stream,
                                         const std::vector<std::vector<int32>> &candidates) {
  const std::size_t n = stream.size();
  const int inf = std::numeric_limits<int>::max();
  std::vector<int> best(n + 1, inf);
  std::vector<std::vector<int32>> choice(n + 1);
  best[0] = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (const auto &c : candidates) {
      if (c.size() > i || best[i - c.size()] == inf) continue;
      if (!std::equal(c.begin(), c.end(), stream.begin() + (i - c.size()))) continue;
      if (best[i - c.size()] + 1 < best[i]) {
        best[i] = best[i - c.size()] + 1;
        choice[i] = c;
      }
    }
    if (best[i - 1] != inf && best[i - 1] + 1 < best[i]) {
      best[i] = best[i - 1] + 1;
      choice[i] = {stream[i - 1]};
    }
  }
  std::vector<std::vector<int32>> out;
  for (std::size_t i = n; i > 0; i -= choice[i].size()) out.push_back(choice[i]);
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace oracle
}  // namespace lingstruct
