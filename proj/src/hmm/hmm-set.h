// src/hmm/hmm-set.h

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

#ifndef LINGSTRUCT_HMM_HMM_SET_H_
#define LINGSTRUCT_HMM_HMM_SET_H_

#include <string>
#include <vector>

#include <json.hpp>

#include "base/common.h"

namespace lingstruct {

/// Diagonal-covariance Gaussian with its log normalizer cached.
class GaussianState {
 public:
  GaussianState() = default;
  GaussianState(Vector mean, Vector var);

  const Vector &Mean() const { return mean_; }
  const Vector &Var() const { return var_; }
  double LogNormConst() const { return log_norm_const_; }
  int Dim() const { return static_cast<int>(mean_.size()); }

  template <typename Row>
  double LogLikelihood(const Row &x) const {
    double acc = 0;
    for (int d = 0; d < Dim(); ++d) {
      double diff = static_cast<double>(x[d]) - mean_[d];
      acc += diff * diff * inv_var_[d];
    }
    return log_norm_const_ - 0.5 * acc;
  }

  bool operator==(const GaussianState &o) const {
    return mean_ == o.mean_ && var_ == o.var_;
  }

 private:
  Vector mean_, var_, inv_var_;
  double log_norm_const_ = 0;
};

/// Strictly left-to-right HMM: every state has a self loop and a transition to
/// the next state; the last state's "next" transition exits the model.
struct SubwordHmm {
  int32 id = -1;
  std::vector<GaussianState> states;
  std::vector<double> log_self;
  std::vector<double> log_next;

  int NumStates() const { return static_cast<int>(states.size()); }
  void SetSelfLoopProb(int state, double p_self);

  bool operator==(const SubwordHmm &) const = default;
};

/// The subword pattern HMMs, indexed by pattern id (models[i].id == i).
class HmmSet {
 public:
  HmmSet() = default;
  HmmSet(int feature_dim, int states_per_model)
      : feature_dim_(feature_dim), states_per_model_(states_per_model) {}

  int FeatureDim() const { return feature_dim_; }
  int StatesPerModel() const { return states_per_model_; }
  int32 NumModels() const { return static_cast<int32>(models_.size()); }
  const SubwordHmm &Model(int32 id) const { return models_.at(id); }
  SubwordHmm &MutableModel(int32 id) { return models_.at(id); }
  const std::vector<SubwordHmm> &Models() const { return models_; }

  /// Appends a model; its id must equal NumModels() and its shape must match.
  void AddModel(SubwordHmm hmm);

  /// Throws unless every model has the set's state count and dimension and
  /// every transition pair is normalized.
  void Validate() const;

  bool operator==(const HmmSet &) const = default;

 private:
  int feature_dim_ = 0;
  int states_per_model_ = 0;
  std::vector<SubwordHmm> models_;
};

nlohmann::json HmmSetToJson(const HmmSet &set);
HmmSet HmmSetFromJson(const nlohmann::json &j);
void SaveHmmSet(const HmmSet &set, const std::string &path);
HmmSet LoadHmmSet(const std::string &path);

}  // namespace lingstruct

#endif  // LINGSTRUCT_HMM_HMM_SET_H_
