// src/lex/labels.cc

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

#include "lex/labels.h"

#include <algorithm>

#include "base/io-util.h"
#include "feat/features.h"

namespace lingstruct {

std::vector<SubwordSpan> SubwordStream(const UtteranceLabels &utt) {
  std::vector<SubwordSpan> out;
  for (const auto &tok : utt.tokens)
    for (std::size_t k = 0; k < tok.subwords.size(); ++k)
      out.push_back({tok.subwords[k], tok.SubwordStart(k), tok.subword_ends[k]});
  return out;
}

std::vector<int32> SubwordIds(const UtteranceLabels &utt) {
  std::vector<int32> out;
  for (const auto &tok : utt.tokens)
    out.insert(out.end(), tok.subwords.begin(), tok.subwords.end());
  return out;
}

WordToken MakeToken(int32 word_id, const std::vector<SubwordSpan> &spans,
                    std::size_t begin, std::size_t end) {
  WordToken tok;
  tok.word_id = word_id;
  tok.start_frame = spans[begin].start_frame;
  tok.end_frame = spans[end - 1].end_frame;
  for (std::size_t k = begin; k < end; ++k) {
    tok.subwords.push_back(spans[k].subword);
    tok.subword_ends.push_back(spans[k].end_frame);
  }
  return tok;
}

void CheckTiling(const CorpusLabels &labels, const FeatureCorpus &corpus) {
  if (labels.Size() != corpus.Size())
    throw Error("labels cover " + std::to_string(labels.Size()) +
                " utterances, corpus has " + std::to_string(corpus.Size()));
  for (std::size_t u = 0; u < labels.Size(); ++u) {
    const auto &utt = labels.utterances[u];
    if (utt.utterance_id != corpus[u].utterance_id)
      throw Error("label utterance " + utt.utterance_id + " does not match corpus " +
                  corpus[u].utterance_id);
    int32 pos = 0;
    for (const auto &tok : utt.tokens) {
      if (tok.subwords.empty() || tok.subwords.size() != tok.subword_ends.size())
        throw Error(utt.utterance_id + ": malformed token");
      if (tok.start_frame != pos) throw Error(utt.utterance_id + ": tokens do not tile");
      for (std::size_t k = 0; k < tok.subwords.size(); ++k) {
        if (tok.subword_ends[k] <= tok.SubwordStart(k))
          throw Error(utt.utterance_id + ": empty subword span");
      }
      if (tok.subword_ends.back() != tok.end_frame)
        throw Error(utt.utterance_id + ": subword spans do not tile token");
      pos = tok.end_frame;
    }
    if (pos != corpus[u].NumFrames())
      throw Error(utt.utterance_id + ": tokens cover " + std::to_string(pos) + " of " +
                  std::to_string(corpus[u].NumFrames()) + " frames");
  }
}

int32 SubwordInventoryBound(const CorpusLabels &labels) {
  int32 bound = 0;
  for (const auto &utt : labels.utterances)
    for (const auto &tok : utt.tokens)
      for (int32 s : tok.subwords) bound = std::max(bound, s + 1);
  return bound;
}

nlohmann::json LabelsToJson(const CorpusLabels &labels) {
  nlohmann::json utts = nlohmann::json::array();
  for (const auto &utt : labels.utterances) {
    nlohmann::json toks = nlohmann::json::array();
    for (const auto &tok : utt.tokens) {
      toks.push_back({{"word_pattern_id", tok.word_id},
                      {"subword_ids", tok.subwords},
                      {"start_frame", tok.start_frame},
                      {"end_frame", tok.end_frame},
                      {"subword_ends", tok.subword_ends}});
    }
    utts.push_back({{"utterance_id", utt.utterance_id}, {"tokens", toks}});
  }
  return {{"utterances", utts}};
}

CorpusLabels LabelsFromJson(const nlohmann::json &j) {
  CorpusLabels labels;
  for (const auto &ju : j.at("utterances")) {
    UtteranceLabels utt;
    utt.utterance_id = ju.at("utterance_id").get<std::string>();
    for (const auto &jt : ju.at("tokens")) {
      WordToken tok;
      tok.word_id = jt.at("word_pattern_id").get<int32>();
      tok.subwords = jt.at("subword_ids").get<std::vector<int32>>();
      tok.start_frame = jt.at("start_frame").get<int32>();
      tok.end_frame = jt.at("end_frame").get<int32>();
      if (jt.contains("subword_ends")) {
        tok.subword_ends = jt.at("subword_ends").get<std::vector<int32>>();
      } else {
        // Without subword spans, split the token evenly.
        int32 n = static_cast<int32>(tok.subwords.size()), len = tok.end_frame - tok.start_frame;
        for (int32 k = 1; k <= n; ++k) tok.subword_ends.push_back(tok.start_frame + len * k / n);
      }
      if (tok.subwords.empty() || tok.subword_ends.size() != tok.subwords.size())
        throw Error("labels: malformed token in " + utt.utterance_id);
      utt.tokens.push_back(std::move(tok));
    }
    labels.utterances.push_back(std::move(utt));
  }
  return labels;
}

void SaveLabels(const CorpusLabels &labels, const std::string &path) {
  WriteFileAtomic(path, LabelsToJson(labels).dump(1) + "\n");
}

CorpusLabels LoadLabels(const std::string &path) {
  return LabelsFromJson(nlohmann::json::parse(ReadFileToString(path)));
}

}  // namespace lingstruct
