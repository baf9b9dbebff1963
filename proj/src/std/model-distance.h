// src/std/model-distance.h

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

#ifndef LINGSTRUCT_STD_MODEL_DISTANCE_H_
#define LINGSTRUCT_STD_MODEL_DISTANCE_H_

#include <string>
#include <vector>

#include "hmm/hmm-set.h"

namespace lingstruct {

/// Symmetrized KL divergence, KL(a||b) + KL(b||a), of diagonal Gaussians.
double KlGaussian(const GaussianState &a, const GaussianState &b);

/// DTW between the state sequences of two HMMs with KlGaussian as local cost,
/// steps (1,0), (0,1), (1,1) and both endpoints anchored. The minimum-cost
/// path (the shorter one on equal cost) is found and its cost is divided by
/// its length in steps.
double HmmDistance(const SubwordHmm &h1, const SubwordHmm &h2);

/// Distances between all model pairs of one HMM set; row/column i is model
/// ids[i]. Zero diagonal, symmetric.
struct ModelDistanceTable {
  std::vector<int32> ids;
  Matrix distances;

  int32 Size() const { return static_cast<int32>(ids.size()); }
  /// Distance between two model ids (ids are dense in every table built here).
  double operator()(int32 a, int32 b) const { return distances(a, b); }
};

ModelDistanceTable BuildDistanceTable(const HmmSet &hmms);

/// Binary layout: "MDT1", u32 size, size x u32 ids, size*size f32 row-major.
void SaveDistanceTable(const ModelDistanceTable &table, const std::string &path);
ModelDistanceTable LoadDistanceTable(const std::string &path);

}  // namespace lingstruct

#endif  // LINGSTRUCT_STD_MODEL_DISTANCE_H_
