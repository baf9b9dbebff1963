// src/decoder/lexicon-decoder.cc

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

#include "decoder/lexicon-decoder.h"

#include <algorithm>
#include <tuple>

#include "base/parallel.h"

namespace lingstruct {

void DecodeConfig::Validate() const {
  if (beam < 0) throw Error("decode beam must be >= 0");
  if (lm_scale < 0) throw Error("lm scale must be >= 0");
}

namespace {

struct Hyp {
  double score = kLogZero;
  int32 ntok = 0;
  int32 pred = -1;  // predecessor word (-1 = sentence start)
};

// True if a beats b: higher score, then fewer tokens, then lower word id.
inline bool Better(double sa, int32 na, int32 ia, double sb, int32 nb, int32 ib) {
  if (sa != sb) return sa > sb;
  if (na != nb) return na < nb;
  return ia < ib;
}

// Word graph for one lexicon: every word is a flat run of (model, state)
// positions.
struct WordGraph {
  int32 num_words = 0;
  int states = 0;
  std::vector<int32> offset, length;
  std::vector<int32> pos_model, pos_emission;
  std::vector<double> pos_self, pos_next;
};

WordGraph BuildGraph(const Lexicon &lex, const HmmSet &hmms) {
  WordGraph g;
  g.num_words = lex.Size();
  g.states = hmms.StatesPerModel();
  for (const auto &e : lex.Entries()) {
    g.offset.push_back(static_cast<int32>(g.pos_model.size()));
    for (int32 sub : e.subwords) {
      if (sub >= hmms.NumModels())
        throw Error("lexicon entry " + std::to_string(e.id) + " uses subword " +
                    std::to_string(sub) + " without a model");
      const SubwordHmm &m = hmms.Model(sub);
      for (int s = 0; s < m.NumStates(); ++s) {
        g.pos_model.push_back(sub);
        g.pos_emission.push_back(sub * g.states + s);
        g.pos_self.push_back(m.log_self[s]);
        g.pos_next.push_back(m.log_next[s]);
      }
    }
    g.length.push_back(static_cast<int32>(g.pos_model.size()) - g.offset.back());
  }
  return g;
}

// Bigram view of the LM, pre-scaled.
struct LmView {
  std::vector<double> backoff;  // index u+1, u = -1 is sentence start
  std::vector<double> unigram;  // per word
  std::vector<std::vector<std::pair<int32, double>>> explicit_preds;  // per word
  std::vector<double> end;      // index u+1
};

LmView BuildLmView(const NGramLM &lm, const Lexicon &lex, double scale) {
  LmView v;
  const int32 n = lex.Size();
  v.backoff.assign(n + 1, 0);
  v.end.assign(n + 1, 0);
  v.unigram.assign(n, 0);
  v.explicit_preds.assign(n, {});
  for (int32 u = -1; u < n; ++u) {
    int32 sym = u < 0 ? kBos : u;
    v.backoff[u + 1] = scale * lm.LogBackoff({sym});
    v.end[u + 1] = scale * lm.LogProb({sym}, kEos);
  }
  for (int32 w = 0; w < n; ++w) v.unigram[w] = scale * lm.LogProb({}, w);
  if (lm.Order() >= 2) {
    for (int32 u = -1; u < n; ++u) {
      auto it = lm.Table().find({u < 0 ? kBos : u});
      if (it == lm.Table().end()) continue;
      for (const auto &[w, lp] : it->second)
        if (w >= 0 && w < n) v.explicit_preds[w].push_back({u, scale * lp});
    }
  }
  return v;
}

}  // namespace

DecodeResult DecodeUtterance(const FeatureSequence &features, const HmmSet &hmms,
                             const Lexicon &lexicon, const NGramLM *lm,
                             const DecodeConfig &cfg) {
  cfg.Validate();
  const bool use_lm = cfg.use_lm && lm != nullptr;
  if (cfg.use_lm && lm == nullptr) throw Error("use_lm set but no language model given");
  if (lexicon.Size() == 0) throw Error("empty lexicon");
  if (features.Dim() != hmms.FeatureDim())
    throw Error("feature dimension " + std::to_string(features.Dim()) +
                " does not match models (" + std::to_string(hmms.FeatureDim()) + ")");

  const WordGraph g = BuildGraph(lexicon, hmms);
  const int32 W = g.num_words;
  const int32 P = static_cast<int32>(g.pos_model.size());
  const int T = features.NumFrames();
  LmView lmv;
  if (use_lm) lmv = BuildLmView(*lm, lexicon, cfg.lm_scale);
  const double wip = use_lm ? cfg.word_insertion_penalty : 0.0;

  const int num_emissions = hmms.NumModels() * g.states;
  std::vector<double> emission(num_emissions);

  std::vector<double> prev(P, kLogZero), cur(P, kLogZero);
  std::vector<int32> prev_ntok(P, 0), cur_ntok(P, 0);
  std::vector<uint8_t> from_prev(static_cast<std::size_t>(T) * P, 0);
  std::vector<int32> entry_pred(static_cast<std::size_t>(T) * W, -1);
  std::vector<Hyp> entry(W);

  for (int t = 0; t < T; ++t) {
    auto row = features.frames.row(t);
    for (int32 m = 0; m < hmms.NumModels(); ++m)
      for (int s = 0; s < g.states; ++s)
        emission[m * g.states + s] = hmms.Model(m).states[s].LogLikelihood(row);

    // Word entries at frame t.
    if (t == 0) {
      for (int32 w = 0; w < W; ++w) {
        double lmw = use_lm ? lmv.unigram[w] + lmv.backoff[0] : 0.0;
        entry[w] = {0.0 + lmw + wip, 1, -1};
      }
      if (use_lm) {
        for (int32 w = 0; w < W; ++w)
          for (const auto &[u, lp] : lmv.explicit_preds[w])
            if (u == -1) entry[w].score = lp + wip;
      }
    } else {
      // Best exit of every word at t-1, combined with the backoff weight.
      Hyp best_bo;
      std::vector<double> exit_score(W);
      std::vector<int32> exit_ntok(W);
      for (int32 u = 0; u < W; ++u) {
        int32 last = g.offset[u] + g.length[u] - 1;
        exit_score[u] = prev[last] == kLogZero ? kLogZero : prev[last] + g.pos_next[last];
        exit_ntok[u] = prev_ntok[last];
        if (exit_score[u] == kLogZero) continue;
        double s = exit_score[u] + (use_lm ? lmv.backoff[u + 1] : 0.0);
        if (best_bo.score == kLogZero ||
            Better(s, exit_ntok[u], u, best_bo.score, best_bo.ntok, best_bo.pred))
          best_bo = {s, exit_ntok[u], u};
      }
      for (int32 w = 0; w < W; ++w) {
        Hyp h = best_bo;
        if (h.score != kLogZero && use_lm) h.score += lmv.unigram[w];
        if (use_lm) {
          for (const auto &[u, lp] : lmv.explicit_preds[w]) {
            if (u < 0 || exit_score[u] == kLogZero) continue;
            double s = exit_score[u] + lp;
            if (h.score == kLogZero || Better(s, exit_ntok[u], u, h.score, h.ntok, h.pred))
              h = {s, exit_ntok[u], u};
          }
        }
        if (h.score != kLogZero) {
          h.score += wip;
          h.ntok += 1;
        }
        entry[w] = h;
      }
    }

    double frame_best = kLogZero;
    for (int32 w = 0; w < W; ++w) {
      entry_pred[static_cast<std::size_t>(t) * W + w] = entry[w].pred;
      const int32 base = g.offset[w];
      for (int32 p = 0; p < g.length[w]; ++p) {
        const int32 gi = base + p;
        double stay = t > 0 && prev[gi] != kLogZero ? prev[gi] + g.pos_self[gi] : kLogZero;
        int32 stay_ntok = prev_ntok[gi];
        double adv;
        int32 adv_ntok;
        if (p == 0) {
          adv = entry[w].score;
          adv_ntok = entry[w].ntok;
        } else {
          adv = t > 0 && prev[gi - 1] != kLogZero ? prev[gi - 1] + g.pos_next[gi - 1] : kLogZero;
          adv_ntok = prev_ntok[gi - 1];
        }
        uint8_t bp = 0;
        double best = stay;
        int32 best_ntok = stay_ntok;
        if (adv != kLogZero &&
            (stay == kLogZero || adv > stay || (adv == stay && adv_ntok < stay_ntok))) {
          best = adv;
          best_ntok = adv_ntok;
          bp = 1;
        }
        from_prev[static_cast<std::size_t>(t) * P + gi] = bp;
        if (best == kLogZero) {
          cur[gi] = kLogZero;
          cur_ntok[gi] = 0;
          continue;
        }
        cur[gi] = best + emission[g.pos_emission[gi]];
        cur_ntok[gi] = best_ntok;
        frame_best = std::max(frame_best, cur[gi]);
      }
    }
    if (cfg.beam > 0 && frame_best != kLogZero) {
      for (int32 gi = 0; gi < P; ++gi)
        if (cur[gi] < frame_best - cfg.beam) cur[gi] = kLogZero;
    }
    std::swap(prev, cur);
    std::swap(prev_ntok, cur_ntok);
  }

  // Best final word.
  int32 best_word = -1;
  double best_score = kLogZero;
  int32 best_ntok = 0;
  for (int32 u = 0; u < W; ++u) {
    int32 last = g.offset[u] + g.length[u] - 1;
    if (prev[last] == kLogZero) continue;
    double s = prev[last] + g.pos_next[last] + (use_lm ? lmv.end[u + 1] : 0.0);
    if (best_word < 0 || Better(s, prev_ntok[last], u, best_score, best_ntok, best_word)) {
      best_word = u;
      best_score = s;
      best_ntok = prev_ntok[last];
    }
  }
  if (best_word < 0)
    throw InfeasibleAlignment("utterance " + features.utterance_id +
                              ": no lexicon word sequence fits " + std::to_string(T) +
                              " frames");

  // Backtrace into per-frame (word, position) and word start flags.
  std::vector<int32> frame_word(T), frame_pos(T);
  std::vector<uint8_t> word_start(T, 0);
  int32 w = best_word, p = g.length[w] - 1;
  for (int t = T - 1; t >= 0; --t) {
    frame_word[t] = w;
    frame_pos[t] = p;
    bool moved = from_prev[static_cast<std::size_t>(t) * P + g.offset[w] + p];
    if (!moved) continue;
    if (p > 0) {
      --p;
      continue;
    }
    word_start[t] = 1;
    int32 pred = entry_pred[static_cast<std::size_t>(t) * W + w];
    if (pred < 0) {
      if (t != 0) throw Error("decoder backtrace reached sentence start early");
      break;
    }
    w = pred;
    p = g.length[w] - 1;
  }

  DecodeResult result;
  result.total_log_score = best_score;
  result.labels.utterance_id = features.utterance_id;
  result.alignment.resize(T);
  for (int t = 0; t < T; ++t) {
    const int32 word = frame_word[t];
    const int32 sub_index = frame_pos[t] / g.states;
    if (word_start[t]) {
      WordToken tok;
      tok.word_id = word;
      tok.start_frame = t;
      result.labels.tokens.push_back(std::move(tok));
    }
    WordToken &tok = result.labels.tokens.back();
    if (static_cast<int32>(tok.subwords.size()) <= sub_index) {
      tok.subwords.push_back(lexicon.Entry(word).subwords[sub_index]);
      tok.subword_ends.push_back(t + 1);
    }
    tok.subword_ends.back() = t + 1;
    tok.end_frame = t + 1;
    result.alignment[t] = {static_cast<int32>(result.labels.tokens.size()) - 1,
                           tok.subwords.back(), frame_pos[t] % g.states};
  }
  return result;
}

CorpusDecodeResult DecodeCorpus(const FeatureCorpus &corpus, const HmmSet &hmms,
                                const Lexicon &lexicon, const NGramLM *lm,
                                const DecodeConfig &cfg) {
  std::vector<DecodeResult> results(corpus.Size());
  std::vector<uint8_t> ok(corpus.Size(), 0);
  ParallelFor(corpus.Size(), [&](std::size_t u) {
    try {
      results[u] = DecodeUtterance(corpus[u], hmms, lexicon, lm, cfg);
      ok[u] = 1;
    } catch (const InfeasibleAlignment &) {
      results[u].labels.utterance_id = corpus[u].utterance_id;
    }
  });
  CorpusDecodeResult out;
  for (std::size_t u = 0; u < corpus.Size(); ++u) {
    if (ok[u]) out.total_log_score += results[u].total_log_score;
    else out.failed.push_back(u);
    out.labels.utterances.push_back(std::move(results[u].labels));
  }
  return out;
}

}  // namespace lingstruct
