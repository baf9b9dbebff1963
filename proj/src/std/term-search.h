// src/std/term-search.h

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

#ifndef LINGSTRUCT_STD_TERM_SEARCH_H_
#define LINGSTRUCT_STD_TERM_SEARCH_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "lex/labels.h"
#include "std/model-distance.h"

namespace lingstruct {

/// Subsequence DTW of q against u with table costs and steps (1,0), (0,1),
/// (1,1): q must be matched completely, u from any start to any end. Returns
/// the smallest sum of matched-pair costs. Throws on empty input or an id
/// outside the table.
double SequenceDistance(const std::vector<int32> &q, const std::vector<int32> &u,
                        const ModelDistanceTable &table);

/// Most frequent sequence; ties go to the shorter, then the lexicographically
/// smaller one. Throws on an empty list.
std::vector<int32> SelectQueryModel(const std::vector<std::vector<int32>> &occurrences);

struct Query {
  std::string id;
  std::vector<int32> model_sequence;
};

struct RankedItem {
  std::string utterance_id;
  int32 index = 0;  // position of the utterance in the searched corpus
  double distance = 0;

  bool operator==(const RankedItem &) const = default;
};

struct QueryRanking {
  std::string query_id;
  std::vector<RankedItem> items;  // ascending distance, then index

  bool operator==(const QueryRanking &) const = default;
};

typedef std::vector<QueryRanking> RankedList;

/// Ranks every utterance by SequenceDistance to the query's model sequence.
/// Utterances without tokens are placed last with infinite distance.
QueryRanking Search(const Query &q, const CorpusLabels &labels,
                    const ModelDistanceTable &table);
RankedList SearchAll(const std::vector<Query> &queries, const CorpusLabels &labels,
                     const ModelDistanceTable &table);

/// Re-ranks by lambda * d_s + (1 - lambda) * d_u. Both lists must hold the
/// same queries (in the same order) and the same (utterance, index) pairs per
/// query; the output follows the query order of d_u.
RankedList FuseAndRank(const RankedList &d_s, const RankedList &d_u, double lambda);

/// Relevance judgments: query id -> relevant utterance ids. Queries that
/// only appear with 0 judgments map to an empty set.
typedef std::map<std::string, std::set<std::string>> Relevance;

struct StdMetrics {
  double map = 0;
  double p_at_5 = 0;
  double p_at_10 = 0;
  std::map<std::string, double> average_precision;
  /// Queries left out because they have no relevant utterance.
  std::vector<std::string> excluded;
};

/// Average precision per query (relevant items not retrieved count as
/// misses), its mean, and mean precision at 5 and 10. Throws if no query has
/// a relevant utterance.
StdMetrics Evaluate(const RankedList &ranks, const Relevance &relevance);

/// TSV lines "query_id<TAB>utterance_id<TAB>0|1".
Relevance ParseRelevance(const std::string &text);
/// One line per query and utterance.
std::string RelevanceToTsv(const Relevance &rel, const std::vector<std::string> &utterance_ids);

nlohmann::json RanksToJson(const RankedList &ranks);
RankedList RanksFromJson(const nlohmann::json &j);
nlohmann::json QueriesToJson(const std::vector<Query> &queries);
/// Accepts {id, model_sequence} or {id, occurrences} per query; the latter
/// goes through SelectQueryModel.
std::vector<Query> QueriesFromJson(const nlohmann::json &j);
nlohmann::json MetricsToJson(const StdMetrics &m);

}  // namespace lingstruct

#endif  // LINGSTRUCT_STD_TERM_SEARCH_H_
