// src/std/term-search.cc

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

#include "std/term-search.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "base/parallel.h"

namespace lingstruct {

double SequenceDistance(const std::vector<int32> &q, const std::vector<int32> &u,
                        const ModelDistanceTable &table) {
  if (q.empty() || u.empty()) throw Error("sequence distance of an empty sequence");
  for (int32 id : q)
    if (id < 0 || id >= table.Size()) throw Error("query id " + std::to_string(id) + " not in table");
  for (int32 id : u)
    if (id < 0 || id >= table.Size())
      throw Error("utterance id " + std::to_string(id) + " not in table");
  const std::size_t n = q.size(), m = u.size();
  std::vector<double> prev(m), cur(m);
  for (std::size_t j = 0; j < m; ++j) {
    double c = table(q[0], u[j]);
    prev[j] = j == 0 ? c : c + std::min(0.0, prev[j - 1]);
  }
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double best = prev[j];
      if (j > 0) best = std::min({best, prev[j - 1], cur[j - 1]});
      cur[j] = table(q[i], u[j]) + best;
    }
    std::swap(prev, cur);
  }
  return *std::min_element(prev.begin(), prev.end());
}

std::vector<int32> SelectQueryModel(const std::vector<std::vector<int32>> &occurrences) {
  if (occurrences.empty()) throw Error("query has no occurrences");
  std::map<std::vector<int32>, int64> counts;
  for (const auto &o : occurrences) ++counts[o];
  const std::vector<int32> *best = nullptr;
  int64 best_count = 0;
  for (const auto &[seq, c] : counts) {
    // Map order is lexicographic, so only strictly better entries replace.
    if (!best || c > best_count || (c == best_count && seq.size() < best->size())) {
      best = &seq;
      best_count = c;
    }
  }
  return *best;
}

namespace {

void SortRanking(std::vector<RankedItem> *items) {
  std::sort(items->begin(), items->end(), [](const RankedItem &a, const RankedItem &b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.index < b.index;
  });
}

}  // namespace

QueryRanking Search(const Query &q, const CorpusLabels &labels,
                    const ModelDistanceTable &table) {
  QueryRanking r;
  r.query_id = q.id;
  for (std::size_t u = 0; u < labels.Size(); ++u) {
    std::vector<int32> seq = SubwordIds(labels.utterances[u]);
    double d = seq.empty() ? std::numeric_limits<double>::infinity()
                           : SequenceDistance(q.model_sequence, seq, table);
    r.items.push_back({labels.utterances[u].utterance_id, static_cast<int32>(u), d});
  }
  SortRanking(&r.items);
  return r;
}

RankedList SearchAll(const std::vector<Query> &queries, const CorpusLabels &labels,
                     const ModelDistanceTable &table) {
  RankedList out(queries.size());
  ParallelFor(queries.size(), [&](std::size_t i) { out[i] = Search(queries[i], labels, table); });
  return out;
}

RankedList FuseAndRank(const RankedList &d_s, const RankedList &d_u, double lambda) {
  if (lambda < 0 || lambda > 1) throw Error("lambda must be in [0, 1]");
  if (d_s.size() != d_u.size()) throw Error("fusion: query sets differ");
  RankedList out;
  for (std::size_t qi = 0; qi < d_u.size(); ++qi) {
    const QueryRanking &u = d_u[qi], &s = d_s[qi];
    if (u.query_id != s.query_id || u.items.size() != s.items.size())
      throw Error("fusion: rankings of query " + u.query_id + " do not match");
    std::map<int32, const RankedItem *> sup;
    for (const auto &it : s.items) sup[it.index] = &it;
    QueryRanking r;
    r.query_id = u.query_id;
    for (const auto &it : u.items) {
      auto f = sup.find(it.index);
      if (f == sup.end() || f->second->utterance_id != it.utterance_id)
        throw Error("fusion: utterance " + it.utterance_id + " missing for query " +
                    u.query_id);
      double d = lambda * f->second->distance + (1.0 - lambda) * it.distance;
      if (lambda == 0) d = it.distance;
      if (lambda == 1) d = f->second->distance;
      r.items.push_back({it.utterance_id, it.index, d});
    }
    SortRanking(&r.items);
    out.push_back(std::move(r));
  }
  return out;
}

StdMetrics Evaluate(const RankedList &ranks, const Relevance &relevance) {
  StdMetrics m;
  int64 used = 0;
  for (const auto &r : ranks) {
    auto it = relevance.find(r.query_id);
    if (it == relevance.end() || it->second.empty()) {
      m.excluded.push_back(r.query_id);
      continue;
    }
    const auto &rel = it->second;
    double hits = 0, sum_prec = 0;
    double top5 = 0, top10 = 0;
    for (std::size_t k = 0; k < r.items.size(); ++k) {
      if (!rel.count(r.items[k].utterance_id)) continue;
      hits += 1;
      sum_prec += hits / static_cast<double>(k + 1);
      if (k < 5) top5 += 1;
      if (k < 10) top10 += 1;
    }
    double ap = sum_prec / static_cast<double>(rel.size());
    m.average_precision[r.query_id] = ap;
    m.map += ap;
    m.p_at_5 += top5 / 5.0;
    m.p_at_10 += top10 / 10.0;
    ++used;
  }
  if (used == 0) throw Error("no query has a relevant utterance");
  m.map /= used;
  m.p_at_5 /= used;
  m.p_at_10 /= used;
  return m;
}

Relevance ParseRelevance(const std::string &text) {
  Relevance rel;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, '\t')) f.push_back(field);
    if (f.size() != 3 || (f[2] != "0" && f[2] != "1"))
      throw Error("relevance line " + std::to_string(lineno) + ": expected query, utterance, 0/1");
    auto &set = rel[f[0]];
    if (f[2] == "1") set.insert(f[1]);
  }
  return rel;
}

std::string RelevanceToTsv(const Relevance &rel, const std::vector<std::string> &utterance_ids) {
  std::string out;
  for (const auto &[q, set] : rel)
    for (const auto &u : utterance_ids) out += q + "\t" + u + "\t" + (set.count(u) ? "1\n" : "0\n");
  return out;
}

nlohmann::json RanksToJson(const RankedList &ranks) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto &r : ranks) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto &it : r.items)
      items.push_back({{"utterance_id", it.utterance_id},
                       {"index", it.index},
                       {"distance", std::isfinite(it.distance) ? nlohmann::json(it.distance)
                                                               : nlohmann::json(nullptr)}});
    out.push_back({{"query_id", r.query_id}, {"ranking", items}});
  }
  return out;
}

RankedList RanksFromJson(const nlohmann::json &j) {
  RankedList out;
  for (const auto &jr : j) {
    QueryRanking r;
    r.query_id = jr.at("query_id").get<std::string>();
    for (const auto &ji : jr.at("ranking")) {
      const auto &d = ji.at("distance");
      r.items.push_back({ji.at("utterance_id").get<std::string>(), ji.at("index").get<int32>(),
                         d.is_null() ? std::numeric_limits<double>::infinity()
                                     : d.get<double>()});
    }
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json QueriesToJson(const std::vector<Query> &queries) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto &q : queries) out.push_back({{"id", q.id}, {"model_sequence", q.model_sequence}});
  return out;
}

std::vector<Query> QueriesFromJson(const nlohmann::json &j) {
  std::vector<Query> out;
  for (const auto &jq : j) {
    Query q;
    q.id = jq.at("id").get<std::string>();
    if (jq.contains("model_sequence"))
      q.model_sequence = jq.at("model_sequence").get<std::vector<int32>>();
    else
      q.model_sequence =
          SelectQueryModel(jq.at("occurrences").get<std::vector<std::vector<int32>>>());
    if (q.model_sequence.empty()) throw Error("query " + q.id + " has an empty model sequence");
    out.push_back(std::move(q));
  }
  return out;
}

nlohmann::json MetricsToJson(const StdMetrics &m) {
  return {{"map", m.map},
          {"p_at_5", m.p_at_5},
          {"p_at_10", m.p_at_10},
          {"average_precision", m.average_precision},
          {"excluded", m.excluded}};
}

}  // namespace lingstruct
