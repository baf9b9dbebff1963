// src/synth/std-task.h

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

#ifndef LINGSTRUCT_SYNTH_STD_TASK_H_
#define LINGSTRUCT_SYNTH_STD_TASK_H_

#include <string>
#include <vector>

#include <json.hpp>

#include "std/term-search.h"
#include "synth/synth-corpus.h"

namespace lingstruct {

struct TermExample {
  std::size_t utterance = 0;
  int32 start_frame = 0;
  int32 end_frame = 0;

  bool operator==(const TermExample &) const = default;
};

/// A query term: a true word and a few spoken examples of it.
struct StdQuery {
  std::string id;
  int32 word = -1;
  std::vector<TermExample> examples;

  bool operator==(const StdQuery &) const = default;
};

struct StdTask {
  std::vector<StdQuery> queries;
  /// Utterances containing the query's word.
  Relevance relevance;
};

/// n_queries queries cycling over the words that occur in the corpus (in id
/// order); successive queries of one word take successive groups of
/// examples_per_query occurrences.
StdTask BuildStdTask(const GroundTruth &truth, int n_queries = 20,
                     int examples_per_query = 3);

/// Subword ids of the segments whose central frame lies in [start, end).
std::vector<int32> SpanSubwords(const UtteranceLabels &utt, int32 start, int32 end);

/// Query models under a labeling: the most frequent subword sequence among
/// each query's examples. An example with no segment is ignored; a query
/// without any usable example throws.
std::vector<Query> QueriesFromLabels(const StdTask &task, const CorpusLabels &labels);

/// The reference ("supervised") labeling: free decoding of the corpus with
/// the truth models and a singleton lexicon, no language model.
CorpusLabels SupervisedLabels(const FeatureCorpus &corpus, const GroundTruth &truth);

nlohmann::json StdTaskToJson(const StdTask &task, const CorpusLabels &utterances);
StdTask StdTaskFromJson(const nlohmann::json &j, const CorpusLabels &utterances);

}  // namespace lingstruct

#endif  // LINGSTRUCT_SYNTH_STD_TASK_H_
