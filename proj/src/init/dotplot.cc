// src/init/dotplot.cc

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

#include "init/dotplot.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

#include "feat/features.h"

namespace lingstruct {

SimilarityMatrix CosineDotplot(const FeatureMatrix &frames, int num_dims) {
  const int n = static_cast<int>(frames.rows());
  const int dims = num_dims < 0 ? static_cast<int>(frames.cols())
                                : std::min<int>(num_dims, static_cast<int>(frames.cols()));
  Matrix x = frames.leftCols(dims).cast<double>();
  Vector norms = x.rowwise().norm();
  for (int i = 0; i < n; ++i)
    if (norms[i] > 0) x.row(i) /= norms[i];
  SimilarityMatrix m = x * x.transpose();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (norms[i] == 0 || norms[j] == 0) m(i, j) = 0;
    }
  }
  // Symmetrize exactly; the product can differ in the last bit.
  m = 0.5 * (m + m.transpose()).eval();
  return m;
}

SimilarityMatrix GaussianFilter(const SimilarityMatrix &m, double sigma) {
  if (sigma <= 0) return m;
  const int n = static_cast<int>(m.rows());
  const int radius = static_cast<int>(std::ceil(3 * sigma));
  Matrix k = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double total = 0;
    for (int a = std::max(0, i - radius); a <= std::min(n - 1, i + radius); ++a) {
      double w = std::exp(-0.5 * (i - a) * (i - a) / (sigma * sigma));
      k(i, a) = w;
      total += w;
    }
    k.row(i) /= total;
  }
  SimilarityMatrix out = k * m * k.transpose();
  out = 0.5 * (out + out.transpose()).eval();
  return out;
}

SimilarityMatrix BuildDotplot(const FeatureMatrix &seg_frames, double sigma) {
  if (seg_frames.rows() < 2) throw Error("dotplot needs at least 2 frames");
  return GaussianFilter(CosineDotplot(seg_frames, kNumStaticCeps), sigma);
}

namespace {

constexpr int kDr8[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
constexpr int kDc8[8] = {-1, 0, 1, -1, 1, -1, 0, 1};

}  // namespace

WatershedLabels Watershed(const SimilarityMatrix &m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) throw Error("watershed needs a square matrix");
  WatershedLabels ws;
  ws.size = n;
  ws.labels.assign(static_cast<std::size_t>(n) * n, 0);
  auto height = [&](int idx) { return -m(idx / n, idx % n); };
  // Heights closer than this count as equal (filter round-off).
  constexpr double kTol = 1e-9;
  auto inside = [&](int r, int c) { return r >= 0 && r < n && c >= 0 && c < n; };

  // Regional minima: 8-connected equal-height plateaus without a strictly
  // lower 8-neighbour.
  std::vector<int32> plateau(static_cast<std::size_t>(n) * n, -1);
  int next_label = 0;
  for (int start = 0; start < n * n; ++start) {
    if (plateau[start] >= 0) continue;
    const double h = height(start);
    std::vector<int> members{start};
    plateau[start] = start;
    bool is_min = true;
    for (std::size_t q = 0; q < members.size(); ++q) {
      int r = members[q] / n, c = members[q] % n;
      for (int k = 0; k < 8; ++k) {
        int rr = r + kDr8[k], cc = c + kDc8[k];
        if (!inside(rr, cc)) continue;
        int idx = rr * n + cc;
        if (height(idx) < h - kTol) {
          is_min = false;
        } else if (plateau[idx] < 0 && height(idx) <= h + kTol) {
          plateau[idx] = start;
          members.push_back(idx);
        }
      }
    }
    if (is_min) {
      ++next_label;
      for (int idx : members) ws.labels[idx] = next_label;
    }
  }
  ws.num_basins = next_label;

  typedef std::pair<double, int> Item;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  std::vector<uint8_t> queued(static_cast<std::size_t>(n) * n, 0);
  auto push_neighbours = [&](int idx) {
    int r = idx / n, c = idx % n;
    for (int k = 0; k < 8; ++k) {
      int rr = r + kDr8[k], cc = c + kDc8[k];
      if (!inside(rr, cc)) continue;
      int j = rr * n + cc;
      if (ws.labels[j] == 0 && !queued[j]) {
        queued[j] = 1;
        queue.push({height(j), j});
      }
    }
  };
  for (int idx = 0; idx < n * n; ++idx)
    if (ws.labels[idx] > 0) push_neighbours(idx);

  while (!queue.empty()) {
    int idx = queue.top().second;
    queue.pop();
    int r = idx / n, c = idx % n;
    int32 label = 0;
    bool conflict = false;
    for (int k = 0; k < 8; ++k) {
      int rr = r + kDr8[k], cc = c + kDc8[k];
      if (!inside(rr, cc)) continue;
      int32 l = ws.labels[rr * n + cc];
      if (l <= 0) continue;
      if (label == 0) label = l;
      else if (l != label) conflict = true;
    }
    if (label == 0 || conflict) {
      ws.labels[idx] = WatershedLabels::kRidge;
      continue;
    }
    ws.labels[idx] = label;
    push_neighbours(idx);
  }
  for (auto &l : ws.labels)
    if (l == 0) l = WatershedLabels::kRidge;
  return ws;
}

std::vector<int32> DiagonalBoundaries(const WatershedLabels &ws) {
  const int n = ws.size;
  std::vector<int32> out;
  int32 last_basin = 0;
  int ridge_start = -1;
  for (int i = 0; i < n; ++i) {
    int32 l = ws.At(i, i);
    if (l == WatershedLabels::kRidge) {
      if (ridge_start < 0) ridge_start = i;
      continue;
    }
    if (last_basin != 0 && l != last_basin) {
      int32 b = ridge_start >= 0 ? ridge_start + (i - ridge_start) / 2 : i;
      if (b > 0 && (out.empty() || b > out.back())) out.push_back(b);
    }
    last_basin = l;
    ridge_start = -1;
  }
  return out;
}

std::vector<int32> WatershedSubwordBoundaries(const SimilarityMatrix &m) {
  if (m.rows() < 2) throw Error("watershed needs a matrix of size >= 2");
  return DiagonalBoundaries(Watershed(m));
}

}  // namespace lingstruct
