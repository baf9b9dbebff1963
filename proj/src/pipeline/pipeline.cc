// src/pipeline/pipeline.cc

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

#include "pipeline/pipeline.h"

#include <cstdio>
#include <filesystem>
#include <set>

#include "base/io-util.h"
#include "decoder/lexicon-decoder.h"
#include "hmm/hmm-train.h"
#include "init/initial-labels.h"
#include "pattree/lexical-mining.h"
#include "pattree/pat-tree.h"

namespace lingstruct {

void CheckState(const PipelineState &state) {
  for (const auto &utt : state.labels.utterances) {
    for (const auto &tok : utt.tokens) {
      if (tok.word_id < 0 || tok.word_id >= state.lexicon.Size() ||
          state.lexicon.Entry(tok.word_id).subwords != tok.subwords)
        throw Error("state: token of " + utt.utterance_id + " does not match the lexicon");
      for (int32 s : tok.subwords)
        if (s < 0 || s >= state.hmms.NumModels())
          throw Error("state: subword " + std::to_string(s) + " has no model");
    }
  }
  if (state.lexicon.InventorySize() > state.hmms.NumModels())
    throw Error("state: lexicon inventory exceeds the model set");
}

PipelineState InitializeState(const FeatureCorpus &corpus, const StageConfig &cfg) {
  InitConfig icfg = cfg.init;
  icfg.seed = cfg.seed;
  InitialLabels init = BuildInitialLabels(corpus, icfg);
  PipelineState state;
  state.labels = std::move(init.labels);
  state.lexicon = std::move(init.initial_lexicon);
  state.hmms = InitHmmsFromLabels(corpus, state.labels, init.n_subword_patterns, cfg.train);
  return state;
}

namespace {

std::vector<int32> AllWordIds(const Lexicon &lex) {
  std::vector<int32> ids(lex.Size());
  for (int32 i = 0; i < lex.Size(); ++i) ids[i] = i;
  return ids;
}

int32 DistinctSubwords(const CorpusLabels &labels) {
  std::set<int32> seen;
  for (const auto &utt : labels.utterances)
    for (const auto &tok : utt.tokens) seen.insert(tok.subwords.begin(), tok.subwords.end());
  return static_cast<int32>(seen.size());
}

void WriteCheckpoint(const std::string &path, const StageConfig &cfg,
                     const PipelineState &state) {
  if (path.empty()) return;
  nlohmann::json j = StateToJson(state);
  j["config"] = StageConfigToString(cfg);
  WriteFileAtomic(path, j.dump());
}

// Decodes with `lexicon`, replaces failed utterances by `prev` mapped onto the
// lexicon, and records consistency against `prev`. Returns true when the
// early-stopping rule fires.
bool DecodeAndTrack(const FeatureCorpus &corpus, const StageConfig &cfg, int stage,
                    const CorpusLabels &prev, const NGramLM *lm, PipelineState *state) {
  DecodeConfig dcfg = cfg.decode;
  dcfg.use_lm = lm != nullptr;
  CorpusDecodeResult dec = DecodeCorpus(corpus, state->hmms, state->lexicon, lm, dcfg);
  if (!dec.failed.empty()) {
    CorpusLabels fallback = RewriteLabels(prev, state->lexicon);
    for (std::size_t u : dec.failed) dec.labels.utterances[u] = fallback.utterances[u];
  }
  Consistency c = ComputeConsistency(prev, dec.labels);
  state->labels = std::move(dec.labels);
  LedgerEntry e;
  e.iteration = static_cast<int>(state->ledger.size()) + 1;
  e.stage = stage;
  e.lexicon_size = state->lexicon.Size();
  e.subword_count = DistinctSubwords(state->labels);
  e.word_consistency = c.word_level;
  e.utt_consistency = c.utterance_level;
  state->ledger.push_back(e);
  ++state->stage_iteration;
  return c.utterance_level >= cfg.consistency_stop;
}

// Shared loop of stages I and II.
void RunHarvestStage(const FeatureCorpus &corpus, const StageConfig &cfg, int stage,
                     int cap, PipelineState *state, const std::string &checkpoint) {
  if (state->stage > stage) return;
  if (state->stage < stage) {
    state->stage = stage;
    state->stage_iteration = 0;
  }
  while (state->stage_iteration < cap) {
    WriteCheckpoint(checkpoint, cfg, *state);
    CorpusLabels prev = state->labels;
    state->hmms = TrainHmms(corpus, prev, state->hmms, cfg.train);
    state->lexicon = HarvestLexicon(prev, cfg.min_count, state->hmms.NumModels());
    const NGramLM *lm = nullptr;
    if (stage == 2) {
      state->lm = EstimateNgram(RewriteLabels(prev, state->lexicon), cfg.lm_order,
                                AllWordIds(state->lexicon));
      lm = &*state->lm;
    }
    if (DecodeAndTrack(corpus, cfg, stage, prev, lm, state)) break;
  }
  state->stage = stage + 1;
  state->stage_iteration = 0;
}

}  // namespace

void RunStageI(const FeatureCorpus &corpus, const StageConfig &cfg, PipelineState *state,
               const std::string &checkpoint) {
  RunHarvestStage(corpus, cfg, 1, cfg.I_a, state, checkpoint);
}

void RunStageII(const FeatureCorpus &corpus, const StageConfig &cfg, PipelineState *state,
                const std::string &checkpoint) {
  RunHarvestStage(corpus, cfg, 2, cfg.I_l, state, checkpoint);
}

void RunStageIII(const FeatureCorpus &corpus, const StageConfig &cfg, PipelineState *state,
                 const std::string &checkpoint) {
  if (state->stage > 3) return;
  if (state->stage < 3) {
    state->stage = 3;
    state->stage_iteration = 0;
  }
  while (state->stage_iteration < cfg.I_x) {
    WriteCheckpoint(checkpoint, cfg, *state);
    CorpusLabels prev = state->labels;
    const int32 inventory = state->hmms.NumModels();
    PatTree tree(SubwordSequences(prev));
    auto [relabeled, lexicon] =
        RelabelWithCandidates(prev, MineCandidates(tree, cfg.mine), inventory);
    state->lexicon = std::move(lexicon);
    state->hmms = TrainHmms(corpus, relabeled, state->hmms, cfg.train);
    state->lm = EstimateNgram(relabeled, cfg.lm_order, AllWordIds(state->lexicon));
    if (DecodeAndTrack(corpus, cfg, 3, prev, &*state->lm, state)) break;
  }
  if (cfg.I_x > 0)
    state->lm = EstimateNgram(state->labels, cfg.lm_order, AllWordIds(state->lexicon));
  state->stage = 4;
  state->stage_iteration = 0;
}

PipelineState RunFull(const FeatureCorpus &corpus, const StageConfig &cfg,
                      const std::string &workdir, bool resume) {
  cfg.Validate();
  std::string checkpoint;
  if (!workdir.empty()) {
    std::filesystem::create_directories(workdir);
    checkpoint = workdir + "/checkpoint.json";
  }
  PipelineState state;
  if (resume && !checkpoint.empty() && std::filesystem::exists(checkpoint)) {
    nlohmann::json j = nlohmann::json::parse(ReadFileToString(checkpoint));
    if (j.value("config", std::string()) != StageConfigToString(cfg))
      throw Error("checkpoint " + checkpoint + " was written with a different config");
    state = StateFromJson(j);
  } else {
    state = InitializeState(corpus, cfg);
  }
  RunStageI(corpus, cfg, &state, checkpoint);
  RunStageII(corpus, cfg, &state, checkpoint);
  RunStageIII(corpus, cfg, &state, checkpoint);
  CheckState(state);
  if (!workdir.empty()) {
    WriteCheckpoint(checkpoint, cfg, state);
    WriteFileAtomic(workdir + "/ledger.csv", LedgerToCsv(state.ledger));
    SaveLabels(state.labels, workdir + "/labels.json");
    SaveLexicon(state.lexicon, workdir + "/lexicon.json");
    SaveHmmSet(state.hmms, workdir + "/models.json");
    if (state.lm) WriteFileAtomic(workdir + "/lm.arpa", WriteArpa(*state.lm));
  }
  return state;
}

std::string LedgerToCsv(const std::vector<LedgerEntry> &ledger) {
  std::string out =
      "iteration,stage,lexicon_size,subword_count,word_consistency,utt_consistency\n";
  char buf[160];
  for (const auto &e : ledger) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%d,%d,%.6f,%.6f\n", e.iteration, e.stage,
                  e.lexicon_size, e.subword_count, e.word_consistency, e.utt_consistency);
    out += buf;
  }
  return out;
}

nlohmann::json StateToJson(const PipelineState &state) {
  nlohmann::json ledger = nlohmann::json::array();
  for (const auto &e : state.ledger)
    ledger.push_back({{"iteration", e.iteration},
                      {"stage", e.stage},
                      {"lexicon_size", e.lexicon_size},
                      {"subword_count", e.subword_count},
                      {"word_consistency", e.word_consistency},
                      {"utt_consistency", e.utt_consistency}});
  return {{"stage", state.stage},
          {"stage_iteration", state.stage_iteration},
          {"labels", LabelsToJson(state.labels)},
          {"lexicon", LexiconToJson(state.lexicon)},
          {"hmms", HmmSetToJson(state.hmms)},
          {"lm", state.lm ? LmToJson(*state.lm) : nlohmann::json(nullptr)},
          {"ledger", ledger}};
}

PipelineState StateFromJson(const nlohmann::json &j) {
  PipelineState s;
  s.stage = j.at("stage").get<int>();
  s.stage_iteration = j.at("stage_iteration").get<int>();
  s.labels = LabelsFromJson(j.at("labels"));
  s.lexicon = LexiconFromJson(j.at("lexicon"));
  s.hmms = HmmSetFromJson(j.at("hmms"));
  if (!j.at("lm").is_null()) s.lm = LmFromJson(j.at("lm"));
  for (const auto &e : j.at("ledger"))
    s.ledger.push_back({e.at("iteration").get<int>(), e.at("stage").get<int>(),
                        e.at("lexicon_size").get<int32>(), e.at("subword_count").get<int32>(),
                        e.at("word_consistency").get<double>(),
                        e.at("utt_consistency").get<double>()});
  return s;
}

}  // namespace lingstruct
