// src/init/kmeans.h

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

#ifndef LINGSTRUCT_INIT_KMEANS_H_
#define LINGSTRUCT_INIT_KMEANS_H_

#include <utility>
#include <vector>

#include "base/common.h"

namespace lingstruct {

struct KMeansResult {
  int k = 0;
  std::vector<int32> assignments;
  std::vector<Vector> centroids;
  double within_scatter = 0;   // sum of squared distances to own centroid
  double between_scatter = 0;  // sum over clusters of n_j * |c_j - mean|^2
  /// Within scatter after every assignment step, in order.
  std::vector<double> within_history;
};

/// k-means++ seeding followed by Lloyd iterations (at most max_iters, or until
/// no centroid moves by more than tol). Nearest-centroid ties go to the lower
/// cluster index; an emptied cluster is re-seeded with the point farthest from
/// its centroid. Deterministic for a given seed.
KMeansResult RunKMeans(const std::vector<Vector> &data, int k, uint64_t seed,
                       int max_iters = 50, double tol = 1e-6);

/// Best of `restarts` RunKMeans runs (lowest within scatter; the earliest run
/// on ties), each with its own seed derived from `seed`.
KMeansResult RunKMeansRestarts(const std::vector<Vector> &data, int k, uint64_t seed,
                               int restarts);

struct ClusteringResult {
  int k = 0;
  std::vector<int32> assignments;
  std::vector<Vector> centroids;
  /// (k, within/between ratio) for every k evaluated, ascending.
  std::vector<std::pair<int, double>> scatter_ratio_curve;
};

/// Scans k = k_min..k_max and keeps the first k whose within/between scatter
/// ratio falls below `threshold`; when none does, the k with the largest
/// second difference of the ratio curve (the elbow). Data with no scatter at
/// all yields k_min. Each k uses RunKMeansRestarts. Throws when there are
/// fewer vectors than k_max.
ClusteringResult SelectKAndCluster(const std::vector<Vector> &data, int k_min, int k_max,
                                   uint64_t seed, double threshold = 0.5, int restarts = 10);

}  // namespace lingstruct

#endif  // LINGSTRUCT_INIT_KMEANS_H_
