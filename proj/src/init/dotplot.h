// src/init/dotplot.h

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

#ifndef LINGSTRUCT_INIT_DOTPLOT_H_
#define LINGSTRUCT_INIT_DOTPLOT_H_

#include <vector>

#include "base/common.h"

namespace lingstruct {

/// Square, symmetric frame-by-frame similarity matrix.
typedef Matrix SimilarityMatrix;

/// Cosine similarity between every pair of frames (a pair involving a
/// zero-norm frame scores 0). Only the first `num_dims` columns are used;
/// pass -1 for all of them.
SimilarityMatrix CosineDotplot(const FeatureMatrix &frames, int num_dims = -1);

/// Gaussian smoothing along both axes, truncated at 3 sigma and renormalized
/// at the borders. Preserves symmetry. sigma <= 0 returns the input.
SimilarityMatrix GaussianFilter(const SimilarityMatrix &m, double sigma);

/// Filtered self-similarity dotplot of a segment: cosine on the static
/// cepstra followed by GaussianFilter(sigma). Needs at least 2 frames.
SimilarityMatrix BuildDotplot(const FeatureMatrix &seg_frames, double sigma = 1.0);

/// Basin label per pixel, row-major. Labels are 1..num_basins; watershed
/// ridge pixels are kRidge.
struct WatershedLabels {
  static constexpr int32 kRidge = -1;
  int size = 0;
  int num_basins = 0;
  std::vector<int32> labels;

  int32 At(int r, int c) const { return labels[r * size + c]; }
};

/// Marker-based priority flood of the surface -m with 8-connectivity.
/// Markers are the regional minima: plateaus grown with 4-connectivity that
/// have no strictly lower 8-neighbour. Ties in the flooding queue are
/// resolved in raster order. A pixel reached from two basins becomes ridge.
WatershedLabels Watershed(const SimilarityMatrix &m);

/// Boundaries implied by a labelling along the main diagonal: a change of
/// basin between neighbouring diagonal pixels, or a ridge run separating two
/// different basins (boundary at the run's midpoint). Sorted, interior only.
std::vector<int32> DiagonalBoundaries(const WatershedLabels &ws);

/// Watershed + DiagonalBoundaries. A flat matrix yields no boundaries.
std::vector<int32> WatershedSubwordBoundaries(const SimilarityMatrix &m);

}  // namespace lingstruct

#endif  // LINGSTRUCT_INIT_DOTPLOT_H_
