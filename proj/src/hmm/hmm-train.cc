// src/hmm/hmm-train.cc

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

#include "hmm/hmm-train.h"

#include <algorithm>
#include <cmath>
#include <optional>

#include "base/parallel.h"
#include "hmm/viterbi-align.h"

namespace lingstruct {

namespace {

struct StateAccum {
  double count = 0;
  Vector sum, sumsq;
  double self = 0, next = 0;
};

class Accumulators {
 public:
  Accumulators(int32 num_models, int states, int dim)
      : states_(states), acc_(static_cast<std::size_t>(num_models) * states) {
    for (auto &a : acc_) {
      a.sum = Vector::Zero(dim);
      a.sumsq = Vector::Zero(dim);
    }
  }

  StateAccum &At(int32 model, int state) { return acc_[model * states_ + state]; }

  void AddFrame(int32 model, int state, const Vector &x) {
    StateAccum &a = At(model, state);
    a.count += 1;
    a.sum += x;
    a.sumsq += x.cwiseProduct(x);
  }

 private:
  int states_;
  std::vector<StateAccum> acc_;
};

std::vector<std::vector<int32>> TokenSubwords(const UtteranceLabels &utt) {
  std::vector<std::vector<int32>> out;
  for (const auto &t : utt.tokens) out.push_back(t.subwords);
  return out;
}

double ClampSelf(double p, double min_self) {
  return std::clamp(p, min_self, 1.0 - min_self);
}

GaussianState EstimateGaussian(const StateAccum &a, const Vector &floor) {
  Vector mean = a.sum / a.count;
  Vector var = a.sumsq / a.count - mean.cwiseProduct(mean);
  var = var.cwiseMax(floor);
  return GaussianState(mean, var);
}

struct GlobalStats {
  Vector mean, var;
};

GlobalStats ComputeGlobalStats(const FeatureCorpus &corpus) {
  const int dim = corpus.Dim();
  Vector sum = Vector::Zero(dim), sumsq = Vector::Zero(dim);
  double n = 0;
  for (const auto &u : corpus.Utterances()) {
    for (int t = 0; t < u.NumFrames(); ++t) {
      Vector x = u.frames.row(t).cast<double>().transpose();
      sum += x;
      sumsq += x.cwiseProduct(x);
    }
    n += u.NumFrames();
  }
  if (n == 0) throw Error("empty corpus");
  GlobalStats g;
  g.mean = sum / n;
  g.var = (sumsq / n - g.mean.cwiseProduct(g.mean)).cwiseMax(1e-10);
  return g;
}

}  // namespace

Vector VarianceFloor(const FeatureCorpus &corpus, double scale) {
  return ComputeGlobalStats(corpus).var * scale;
}

HmmSet InitHmmsFromLabels(const FeatureCorpus &corpus, const CorpusLabels &labels,
                          int32 num_models, const HmmTrainConfig &cfg,
                          HmmTrainStats *stats) {
  CheckTiling(labels, corpus);
  const int states = cfg.states_per_model;
  const int dim = corpus.Dim();
  if (states < 1) throw Error("states_per_model must be >= 1");
  num_models = std::max(num_models, SubwordInventoryBound(labels));
  GlobalStats global = ComputeGlobalStats(corpus);
  Vector floor = global.var * cfg.var_floor_scale;

  Accumulators acc(num_models, states, dim);
  std::vector<double> frames_per_model(num_models, 0), occurrences(num_models, 0);
  for (std::size_t u = 0; u < labels.Size(); ++u) {
    const FeatureMatrix &f = corpus[u].frames;
    for (const SubwordSpan &span : SubwordStream(labels.utterances[u])) {
      int len = span.end_frame - span.start_frame;
      frames_per_model[span.subword] += len;
      occurrences[span.subword] += 1;
      for (int s = 0; s < states; ++s) {
        int begin = span.start_frame + s * len / states;
        int end = span.start_frame + (s + 1) * len / states;
        if (end <= begin) end = begin + 1;  // short segment: share frames
        for (int t = begin; t < end; ++t)
          acc.AddFrame(span.subword, s, f.row(t).cast<double>().transpose());
      }
    }
  }

  HmmSet set(dim, states);
  for (int32 id = 0; id < num_models; ++id) {
    SubwordHmm m;
    m.id = id;
    m.log_self.assign(states, 0);
    m.log_next.assign(states, 0);
    double p_self;
    if (occurrences[id] == 0) {
      if (stats) stats->flagged.push_back(id);
      for (int s = 0; s < states; ++s) m.states.emplace_back(global.mean, global.var);
      p_self = ClampSelf(0.5, cfg.min_self_prob);
    } else {
      for (int s = 0; s < states; ++s) m.states.push_back(EstimateGaussian(acc.At(id, s), floor));
      double avg_dur = std::max(1.0, frames_per_model[id] / (occurrences[id] * states));
      p_self = ClampSelf(1.0 - 1.0 / avg_dur, cfg.min_self_prob);
    }
    for (int s = 0; s < states; ++s) m.SetSelfLoopProb(s, p_self);
    set.AddModel(std::move(m));
  }
  return set;
}

namespace {

// Aligns every utterance in parallel; returns per-utterance results (nullopt
// when infeasible) in corpus order.
std::vector<std::optional<AlignResult>> AlignAll(const FeatureCorpus &corpus,
                                                 const CorpusLabels &labels,
                                                 const HmmSet &hmms) {
  std::vector<std::optional<AlignResult>> out(labels.Size());
  ParallelFor(labels.Size(), [&](std::size_t u) {
    try {
      out[u] = ForceAlign(corpus[u].frames, TokenSubwords(labels.utterances[u]), hmms);
    } catch (const InfeasibleAlignment &) {
      out[u] = std::nullopt;
    }
  });
  return out;
}


void AccumulateAlignment(const FeatureMatrix &f, const AlignResult &r, Accumulators *acc) {
  const Alignment &ali = r.alignment;
  const std::vector<int32> &ends = r.subword_ends;
  std::size_t k = 0;
  for (std::size_t t = 0; t < ali.size(); ++t) {
    while (static_cast<int32>(t) >= ends[k]) ++k;
    acc->AddFrame(ali[t].subword, ali[t].state, f.row(t).cast<double>().transpose());
    bool stays = static_cast<int32>(t) + 1 < ends[k] && ali[t + 1].state == ali[t].state;
    StateAccum &a = acc->At(ali[t].subword, ali[t].state);
    if (stays) a.self += 1; else a.next += 1;
  }
}

// States without frames keep their parameters.
void UpdateModels(Accumulators &acc, const Vector &floor, const HmmTrainConfig &cfg,
                  HmmSet *set) {
  for (int32 id = 0; id < set->NumModels(); ++id) {
    SubwordHmm &m = set->MutableModel(id);
    for (int s = 0; s < set->StatesPerModel(); ++s) {
      const StateAccum &a = acc.At(id, s);
      if (a.count <= 0) continue;
      m.states[s] = EstimateGaussian(a, floor);
      m.SetSelfLoopProb(s, ClampSelf(a.self / (a.self + a.next), cfg.min_self_prob));
    }
  }
}

}  // namespace

double CorpusLogLikelihood(const FeatureCorpus &corpus, const CorpusLabels &labels,
                           const HmmSet &hmms) {
  double total = 0;
  for (const auto &r : AlignAll(corpus, labels, hmms))
    if (r) total += r->log_likelihood;
  return total;
}

HmmSet TrainHmms(const FeatureCorpus &corpus, const CorpusLabels &labels,
                 const HmmSet &hmms, const HmmTrainConfig &cfg, HmmTrainStats *stats) {
  CheckTiling(labels, corpus);
  if (SubwordInventoryBound(labels) > hmms.NumModels())
    throw Error("labels use subword ids without a model");
  Vector floor = VarianceFloor(corpus, cfg.var_floor_scale);
  const int states = hmms.StatesPerModel();
  HmmSet current = hmms;

  for (int iter = 0; iter < cfg.em_iters; ++iter) {
    auto aligned = AlignAll(corpus, labels, current);
    Accumulators acc(current.NumModels(), states, current.FeatureDim());
    double total = 0;
    for (std::size_t u = 0; u < aligned.size(); ++u) {
      if (!aligned[u]) {
        if (stats && iter == 0) stats->skipped.push_back(labels.utterances[u].utterance_id);
        continue;
      }
      total += aligned[u]->log_likelihood;
      AccumulateAlignment(corpus[u].frames, *aligned[u], &acc);
    }
    if (stats) stats->corpus_log_likelihood.push_back(total);
    UpdateModels(acc, floor, cfg, &current);
  }
  if (stats) stats->corpus_log_likelihood.push_back(CorpusLogLikelihood(corpus, labels, current));
  return current;
}

HmmSet EstimateHmmsFromAlignment(const FeatureCorpus &corpus,
                                 const std::vector<AlignResult> &alignments,
                                 int32 num_models, const HmmTrainConfig &cfg) {
  if (alignments.size() != corpus.Size())
    throw Error("need one alignment per utterance");
  GlobalStats global = ComputeGlobalStats(corpus);
  Vector floor = global.var * cfg.var_floor_scale;
  const int states = cfg.states_per_model;
  HmmSet set(corpus.Dim(), states);
  for (int32 id = 0; id < num_models; ++id) {
    SubwordHmm m;
    m.id = id;
    m.log_self.assign(states, 0);
    m.log_next.assign(states, 0);
    for (int s = 0; s < states; ++s) {
      m.states.emplace_back(global.mean, global.var);
      m.SetSelfLoopProb(s, 0.5);
    }
    set.AddModel(std::move(m));
  }
  Accumulators acc(num_models, states, corpus.Dim());
  for (std::size_t u = 0; u < corpus.Size(); ++u) {
    const AlignResult &r = alignments[u];
    if (static_cast<int>(r.alignment.size()) != corpus[u].NumFrames())
      throw Error("alignment of " + corpus[u].utterance_id + " does not cover its frames");
    for (const auto &fa : r.alignment)
      if (fa.subword < 0 || fa.subword >= num_models || fa.state < 0 || fa.state >= states)
        throw Error("alignment of " + corpus[u].utterance_id + " is out of range");
    AccumulateAlignment(corpus[u].frames, r, &acc);
  }
  UpdateModels(acc, floor, cfg, &set);
  return set;
}

}  // namespace lingstruct
