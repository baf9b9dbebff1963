// src/base/common.h

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

#ifndef LINGSTRUCT_BASE_COMMON_H_
#define LINGSTRUCT_BASE_COMMON_H_

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lingstruct {

typedef std::int32_t int32;
typedef std::uint32_t uint32;
typedef std::int64_t int64;

/// Frames are stored one per row, single precision (the archive stores f32).
typedef Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
    FeatureMatrix;
typedef Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
    Matrix;
typedef Eigen::VectorXd Vector;

constexpr double kLogZero = -std::numeric_limits<double>::infinity();

/// Every recoverable failure in the library is reported with this type.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

/// Raised when a state chain cannot be laid over the available frames.
class InfeasibleAlignment : public Error {
 public:
  explicit InfeasibleAlignment(const std::string &msg) : Error(msg) {}
};

}  // namespace lingstruct

#endif  // LINGSTRUCT_BASE_COMMON_H_
