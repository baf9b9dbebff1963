// src/std/model-distance.cc

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

#include "std/model-distance.h"

#include <cmath>
#include <cstring>
#include <limits>

#include "base/io-util.h"
#include "base/parallel.h"

namespace lingstruct {

double KlGaussian(const GaussianState &a, const GaussianState &b) {
  if (a.Dim() != b.Dim())
    throw Error("KL between Gaussians of dimension " + std::to_string(a.Dim()) + " and " +
                std::to_string(b.Dim()));
  double ab = 0, ba = 0;
  for (int d = 0; d < a.Dim(); ++d) {
    double va = a.Var()[d], vb = b.Var()[d], diff = a.Mean()[d] - b.Mean()[d];
    ab += 0.5 * (va / vb + diff * diff / vb - 1.0 + std::log(vb / va));
    ba += 0.5 * (vb / va + diff * diff / va - 1.0 + std::log(va / vb));
  }
  return ab + ba;
}

double HmmDistance(const SubwordHmm &h1, const SubwordHmm &h2) {
  const int n = h1.NumStates(), m = h2.NumStates();
  if (n == 0 || m == 0) throw Error("HMM distance needs models with states");
  const double inf = std::numeric_limits<double>::infinity();
  // cost[i][j] and path length of the best path ending at (i, j).
  std::vector<double> cost((n + 1) * (m + 1), inf);
  std::vector<int> len((n + 1) * (m + 1), 0);
  auto at = [m](int i, int j) { return i * (m + 1) + j; };
  cost[at(0, 0)] = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= m; ++j) {
      const int cand[3] = {at(i - 1, j - 1), at(i - 1, j), at(i, j - 1)};
      int best = -1;
      for (int c : cand) {
        if (cost[c] == inf) continue;
        if (best < 0 || cost[c] < cost[best] || (cost[c] == cost[best] && len[c] < len[best]))
          best = c;
      }
      if (best < 0) continue;
      cost[at(i, j)] = cost[best] + KlGaussian(h1.states[i - 1], h2.states[j - 1]);
      len[at(i, j)] = len[best] + 1;
    }
  }
  return cost[at(n, m)] / len[at(n, m)];
}

ModelDistanceTable BuildDistanceTable(const HmmSet &hmms) {
  ModelDistanceTable t;
  const int32 n = hmms.NumModels();
  for (int32 i = 0; i < n; ++i) t.ids.push_back(hmms.Model(i).id);
  t.distances = Matrix::Zero(n, n);
  ParallelFor(n, [&](std::size_t i) {
    for (int32 j = static_cast<int32>(i) + 1; j < n; ++j)
      t.distances(i, j) = HmmDistance(hmms.Model(i), hmms.Model(j));
  });
  for (int32 i = 0; i < n; ++i)
    for (int32 j = 0; j < i; ++j) t.distances(i, j) = t.distances(j, i);
  return t;
}

namespace {

void PutU32(std::string *out, uint32_t v) {
  out->append(reinterpret_cast<const char *>(&v), 4);
}

uint32_t GetU32(const std::string &in, std::size_t *pos) {
  if (*pos + 4 > in.size()) throw Error("truncated distance table");
  uint32_t v;
  std::memcpy(&v, in.data() + *pos, 4);
  *pos += 4;
  return v;
}

}  // namespace

void SaveDistanceTable(const ModelDistanceTable &table, const std::string &path) {
  std::string out = "MDT1";
  const uint32_t n = static_cast<uint32_t>(table.Size());
  PutU32(&out, n);
  for (int32 id : table.ids) PutU32(&out, static_cast<uint32_t>(id));
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = 0; j < n; ++j) {
      float v = static_cast<float>(table.distances(i, j));
      out.append(reinterpret_cast<const char *>(&v), 4);
    }
  }
  WriteFileAtomic(path, out);
}

ModelDistanceTable LoadDistanceTable(const std::string &path) {
  std::string in = ReadFileToString(path);
  if (in.size() < 4 || in.compare(0, 4, "MDT1") != 0)
    throw Error("bad header in distance table " + path);
  std::size_t pos = 4;
  const uint32_t n = GetU32(in, &pos);
  ModelDistanceTable t;
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t id = GetU32(in, &pos);
    if (id != i) throw Error("distance table ids must be dense, got " + std::to_string(id));
    t.ids.push_back(static_cast<int32>(id));
  }
  if (in.size() - pos < static_cast<std::size_t>(n) * n * 4)
    throw Error("truncated distance table");
  t.distances.resize(n, n);
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = 0; j < n; ++j) {
      float v;
      std::memcpy(&v, in.data() + pos, 4);
      pos += 4;
      t.distances(i, j) = v;
    }
  }
  return t;
}

}  // namespace lingstruct
