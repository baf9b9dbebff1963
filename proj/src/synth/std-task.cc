// src/synth/std-task.cc

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

#include "synth/std-task.h"

#include <map>

#include "decoder/lexicon-decoder.h"

namespace lingstruct {

StdTask BuildStdTask(const GroundTruth &truth, int n_queries, int examples_per_query) {
  if (n_queries < 0 || examples_per_query < 1) throw Error("bad STD task size");
  std::map<int32, std::vector<TermExample>> occurrences;
  std::map<int32, std::set<std::string>> containing;
  for (std::size_t u = 0; u < truth.labels.Size(); ++u) {
    const auto &utt = truth.labels.utterances[u];
    for (const auto &tok : utt.tokens) {
      occurrences[tok.word_id].push_back({u, tok.start_frame, tok.end_frame});
      containing[tok.word_id].insert(utt.utterance_id);
    }
  }
  if (occurrences.empty()) throw Error("truth has no words");
  std::vector<int32> words;
  for (const auto &kv : occurrences) words.push_back(kv.first);
  StdTask task;
  for (int i = 0; i < n_queries; ++i) {
    StdQuery q;
    q.id = "q" + std::to_string(i);
    q.word = words[i % words.size()];
    const auto &occ = occurrences[q.word];
    std::size_t first = (static_cast<std::size_t>(i) / words.size()) * examples_per_query;
    std::size_t take = std::min<std::size_t>(examples_per_query, occ.size());
    for (std::size_t k = 0; k < take; ++k) q.examples.push_back(occ[(first + k) % occ.size()]);
    task.relevance[q.id] = containing[q.word];
    task.queries.push_back(std::move(q));
  }
  return task;
}

std::vector<int32> SpanSubwords(const UtteranceLabels &utt, int32 start, int32 end) {
  std::vector<int32> out;
  for (const auto &span : SubwordStream(utt)) {
    int32 centre = span.start_frame + (span.end_frame - span.start_frame - 1) / 2;
    if (centre >= start && centre < end) out.push_back(span.subword);
  }
  return out;
}

std::vector<Query> QueriesFromLabels(const StdTask &task, const CorpusLabels &labels) {
  std::vector<Query> out;
  for (const auto &q : task.queries) {
    std::vector<std::vector<int32>> occ;
    for (const auto &ex : q.examples) {
      if (ex.utterance >= labels.Size())
        throw Error("query " + q.id + " refers to a missing utterance");
      auto seq = SpanSubwords(labels.utterances[ex.utterance], ex.start_frame, ex.end_frame);
      if (!seq.empty()) occ.push_back(std::move(seq));
    }
    if (occ.empty()) throw Error("query " + q.id + " has no usable example");
    out.push_back({q.id, SelectQueryModel(occ)});
  }
  return out;
}

CorpusLabels SupervisedLabels(const FeatureCorpus &corpus, const GroundTruth &truth) {
  Lexicon singletons(truth.hmms.NumModels());
  for (int32 s = 0; s < truth.hmms.NumModels(); ++s) singletons.Add({s}, 1);
  DecodeConfig cfg;
  cfg.use_lm = false;
  CorpusDecodeResult dec = DecodeCorpus(corpus, truth.hmms, singletons, nullptr, cfg);
  if (!dec.failed.empty())
    throw Error("supervised decoding failed for " + std::to_string(dec.failed.size()) +
                " utterances");
  return dec.labels;
}

nlohmann::json StdTaskToJson(const StdTask &task, const CorpusLabels &utterances) {
  nlohmann::json queries = nlohmann::json::array();
  for (const auto &q : task.queries) {
    nlohmann::json ex = nlohmann::json::array();
    for (const auto &e : q.examples)
      ex.push_back({{"utterance_id", utterances.utterances.at(e.utterance).utterance_id},
                    {"start_frame", e.start_frame},
                    {"end_frame", e.end_frame}});
    nlohmann::json rel = task.relevance.count(q.id) ? nlohmann::json(task.relevance.at(q.id))
                                                    : nlohmann::json::array();
    queries.push_back({{"id", q.id}, {"word", q.word}, {"examples", ex}, {"relevant", rel}});
  }
  return {{"queries", queries}};
}

StdTask StdTaskFromJson(const nlohmann::json &j, const CorpusLabels &utterances) {
  std::map<std::string, std::size_t> index;
  for (std::size_t u = 0; u < utterances.Size(); ++u)
    index[utterances.utterances[u].utterance_id] = u;
  StdTask task;
  for (const auto &jq : j.at("queries")) {
    StdQuery q;
    q.id = jq.at("id").get<std::string>();
    q.word = jq.value("word", -1);
    for (const auto &je : jq.at("examples")) {
      auto it = index.find(je.at("utterance_id").get<std::string>());
      if (it == index.end()) throw Error("query " + q.id + " refers to an unknown utterance");
      q.examples.push_back(
          {it->second, je.at("start_frame").get<int32>(), je.at("end_frame").get<int32>()});
    }
    task.relevance[q.id] = jq.value("relevant", std::set<std::string>());
    task.queries.push_back(std::move(q));
  }
  return task;
}

}  // namespace lingstruct
