// src/init/kmeans.cc

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

#include "init/kmeans.h"

#include <algorithm>
#include <limits>
#include <random>

#include "base/parallel.h"

namespace lingstruct {

namespace {

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double Uniform01(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

void Assign(const std::vector<Vector> &data, const std::vector<Vector> &centroids,
            std::vector<int32> *assign, std::vector<double> *dist) {
  const std::size_t n = data.size();
  const std::size_t block = 256;
  ParallelFor((n + block - 1) / block, [&](std::size_t b) {
    for (std::size_t i = b * block; i < std::min(n, (b + 1) * block); ++i) {
      double best = std::numeric_limits<double>::infinity();
      int32 arg = 0;
      for (std::size_t c = 0; c < centroids.size(); ++c) {
        double d = (data[i] - centroids[c]).squaredNorm();
        if (d < best) {
          best = d;
          arg = static_cast<int32>(c);
        }
      }
      (*assign)[i] = arg;
      (*dist)[i] = best;
    }
  });
}

}  // namespace

KMeansResult RunKMeans(const std::vector<Vector> &data, int k, uint64_t seed, int max_iters,
                       double tol) {
  const std::size_t n = data.size();
  if (k < 1) throw Error("k-means needs k >= 1");
  if (n < static_cast<std::size_t>(k))
    throw Error("k-means: " + std::to_string(n) + " vectors is fewer than k = " +
                std::to_string(k));
  const int dim = static_cast<int>(data[0].size());
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(k)};
  std::mt19937_64 rng(seq);

  // k-means++ seeding.
  std::vector<Vector> centroids;
  centroids.push_back(data[static_cast<std::size_t>(Uniform01(rng) * n)]);
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = (data[i] - centroids[0]).squaredNorm();
  while (static_cast<int>(centroids.size()) < k) {
    double total = 0;
    for (double v : d2) total += v;
    std::size_t pick = 0;
    if (total > 0) {
      double r = Uniform01(rng) * total, acc = 0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > r) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<std::size_t>(Uniform01(rng) * n);
    }
    centroids.push_back(data[pick]);
    for (std::size_t i = 0; i < n; ++i)
      d2[i] = std::min(d2[i], (data[i] - centroids.back()).squaredNorm());
  }

  KMeansResult res;
  res.k = k;
  res.assignments.assign(n, 0);
  std::vector<double> dist(n);
  for (int iter = 0; iter < max_iters; ++iter) {
    Assign(data, centroids, &res.assignments, &dist);
    double within = 0;
    for (double v : dist) within += v;
    res.within_history.push_back(within);

    std::vector<Vector> sums(k, Vector::Zero(dim));
    std::vector<int64> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sums[res.assignments[i]] += data[i];
      ++counts[res.assignments[i]];
    }
    double moved = 0;
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        // Re-seed from the point farthest from its centroid, if any is off.
        std::size_t far = 0;
        for (std::size_t i = 1; i < n; ++i)
          if (dist[i] > dist[far]) far = i;
        if (dist[far] <= 0) continue;
        int32 old = res.assignments[far];
        sums[old] -= data[far];
        --counts[old];
        res.assignments[far] = c;
        sums[c] = data[far];
        counts[c] = 1;
        dist[far] = 0;
      }
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      Vector nc = sums[c] / static_cast<double>(counts[c]);
      moved = std::max(moved, (nc - centroids[c]).norm());
      centroids[c] = nc;
    }
    if (moved < tol) break;
  }
  Assign(data, centroids, &res.assignments, &dist);
  // Recompute centroids from the final assignment so each is its cluster mean.
  std::vector<Vector> sums(k, Vector::Zero(dim));
  std::vector<int64> counts(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    sums[res.assignments[i]] += data[i];
    ++counts[res.assignments[i]];
  }
  for (int c = 0; c < k; ++c)
    if (counts[c] > 0) centroids[c] = sums[c] / static_cast<double>(counts[c]);

  Vector mean = Vector::Zero(dim);
  for (const auto &x : data) mean += x;
  mean /= static_cast<double>(n);
  res.within_scatter = 0;
  for (std::size_t i = 0; i < n; ++i)
    res.within_scatter += (data[i] - centroids[res.assignments[i]]).squaredNorm();
  res.between_scatter = 0;
  for (int c = 0; c < k; ++c)
    res.between_scatter += counts[c] * (centroids[c] - mean).squaredNorm();
  res.centroids = std::move(centroids);
  return res;
}

KMeansResult RunKMeansRestarts(const std::vector<Vector> &data, int k, uint64_t seed,
                               int restarts) {
  if (restarts < 1) throw Error("k-means needs at least one restart");
  KMeansResult best;
  for (int r = 0; r < restarts; ++r) {
    KMeansResult cur = RunKMeans(data, k, seed + 0x9e3779b97f4a7c15ull * r);
    if (r == 0 || cur.within_scatter < best.within_scatter) best = std::move(cur);
  }
  return best;
}

ClusteringResult SelectKAndCluster(const std::vector<Vector> &data, int k_min, int k_max,
                                   uint64_t seed, double threshold, int restarts) {
  if (k_min < 1 || k_max < k_min) throw Error("invalid k range");
  if (data.size() < static_cast<std::size_t>(k_max))
    throw Error("fewer vectors (" + std::to_string(data.size()) + ") than k_max (" +
                std::to_string(k_max) + ")");
  ClusteringResult out;
  Vector mean = Vector::Zero(data[0].size());
  for (const auto &x : data) mean += x;
  mean /= static_cast<double>(data.size());
  double total = 0;
  for (const auto &x : data) total += (x - mean).squaredNorm();

  auto take = [&](const KMeansResult &r) {
    out.k = r.k;
    out.assignments = r.assignments;
    out.centroids = r.centroids;
  };
  if (total <= 0) {
    KMeansResult r = RunKMeansRestarts(data, k_min, seed, restarts);
    out.scatter_ratio_curve.push_back({k_min, 0.0});
    take(r);
    return out;
  }

  std::vector<KMeansResult> runs;
  for (int k = k_min; k <= k_max; ++k) {
    KMeansResult r = RunKMeansRestarts(data, k, seed, restarts);
    double ratio = r.between_scatter > 0 ? r.within_scatter / r.between_scatter
                                         : std::numeric_limits<double>::infinity();
    out.scatter_ratio_curve.push_back({k, ratio});
    if (ratio < threshold) {
      take(r);
      return out;
    }
    runs.push_back(std::move(r));
  }
  std::size_t pick = runs.size() - 1;
  const auto &curve = out.scatter_ratio_curve;
  if (curve.size() >= 3) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
      double second = curve[i - 1].second - 2 * curve[i].second + curve[i + 1].second;
      if (second > best) {
        best = second;
        pick = i;
      }
    }
  }
  take(runs[pick]);
  return out;
}

}  // namespace lingstruct
