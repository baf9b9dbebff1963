// src/hmm/hmm-set.cc

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

#include "hmm/hmm-set.h"

#include <cmath>
#include <numbers>

#include "base/io-util.h"

namespace lingstruct {

GaussianState::GaussianState(Vector mean, Vector var)
    : mean_(std::move(mean)), var_(std::move(var)) {
  if (mean_.size() != var_.size()) throw Error("gaussian mean/variance size mismatch");
  inv_var_.resize(var_.size());
  double log_det = 0;
  for (int d = 0; d < Dim(); ++d) {
    if (!(var_[d] > 0)) throw Error("gaussian variance must be positive");
    inv_var_[d] = 1.0 / var_[d];
    log_det += std::log(var_[d]);
  }
  log_norm_const_ = -0.5 * (Dim() * std::log(2 * std::numbers::pi) + log_det);
}

void SubwordHmm::SetSelfLoopProb(int state, double p_self) {
  log_self[state] = std::log(p_self);
  log_next[state] = std::log1p(-p_self);
}

void HmmSet::AddModel(SubwordHmm hmm) {
  if (hmm.id != NumModels()) throw Error("hmm ids must be dense");
  if (hmm.NumStates() != states_per_model_)
    throw Error("hmm state count differs from the set");
  for (const auto &s : hmm.states)
    if (s.Dim() != feature_dim_) throw Error("hmm dimension differs from the set");
  models_.push_back(std::move(hmm));
}

void HmmSet::Validate() const {
  for (const auto &m : models_) {
    if (m.NumStates() != states_per_model_ || m.NumStates() < 1 ||
        static_cast<int>(m.log_self.size()) != m.NumStates() ||
        static_cast<int>(m.log_next.size()) != m.NumStates())
      throw Error("hmm " + std::to_string(m.id) + " has inconsistent state count");
    for (int s = 0; s < m.NumStates(); ++s) {
      if (m.states[s].Dim() != feature_dim_)
        throw Error("hmm " + std::to_string(m.id) + " has wrong dimension");
      double total = std::exp(m.log_self[s]) + std::exp(m.log_next[s]);
      if (std::abs(total - 1.0) > 1e-9)
        throw Error("hmm " + std::to_string(m.id) + " transitions not normalized");
    }
  }
}

nlohmann::json HmmSetToJson(const HmmSet &set) {
  nlohmann::json models = nlohmann::json::array();
  for (const auto &m : set.Models()) {
    nlohmann::json means = nlohmann::json::array(), vars = nlohmann::json::array();
    for (const auto &s : m.states) {
      means.push_back(std::vector<double>(s.Mean().data(), s.Mean().data() + s.Dim()));
      vars.push_back(std::vector<double>(s.Var().data(), s.Var().data() + s.Dim()));
    }
    models.push_back({{"id", m.id},
                      {"means", means},
                      {"vars", vars},
                      {"log_self", m.log_self},
                      {"log_next", m.log_next}});
  }
  return {{"feature_dim", set.FeatureDim()},
          {"states_per_model", set.StatesPerModel()},
          {"models", models}};
}

HmmSet HmmSetFromJson(const nlohmann::json &j) {
  HmmSet set(j.at("feature_dim").get<int>(), j.at("states_per_model").get<int>());
  for (const auto &jm : j.at("models")) {
    SubwordHmm m;
    m.id = jm.at("id").get<int32>();
    auto means = jm.at("means").get<std::vector<std::vector<double>>>();
    auto vars = jm.at("vars").get<std::vector<std::vector<double>>>();
    if (means.size() != vars.size()) throw Error("model file: means/vars mismatch");
    for (std::size_t s = 0; s < means.size(); ++s) {
      m.states.emplace_back(Eigen::Map<const Vector>(means[s].data(), means[s].size()),
                            Eigen::Map<const Vector>(vars[s].data(), vars[s].size()));
    }
    m.log_self = jm.at("log_self").get<std::vector<double>>();
    m.log_next = jm.at("log_next").get<std::vector<double>>();
    set.AddModel(std::move(m));
  }
  set.Validate();
  return set;
}

void SaveHmmSet(const HmmSet &set, const std::string &path) {
  WriteFileAtomic(path, HmmSetToJson(set).dump() + "\n");
}

HmmSet LoadHmmSet(const std::string &path) {
  return HmmSetFromJson(nlohmann::json::parse(ReadFileToString(path)));
}

}  // namespace lingstruct
