// src/base/parallel.h

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

#ifndef LINGSTRUCT_BASE_PARALLEL_H_
#define LINGSTRUCT_BASE_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace lingstruct {

/// Process-wide cap on worker threads. 0 means "use hardware concurrency".
void SetNumWorkers(int n);
int NumWorkers();

/// Runs fn(i) for i in [0, n). Work items are independent; callers write
/// results into per-index slots and reduce afterwards in index order, so the
/// output never depends on the worker count. The first exception thrown by
/// any item is rethrown on the calling thread.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)> &fn);

}  // namespace lingstruct

#endif  // LINGSTRUCT_BASE_PARALLEL_H_
