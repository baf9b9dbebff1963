// src/pipeline/stage-config.cc

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

#include "pipeline/stage-config.h"

#include <functional>
#include <map>
#include <sstream>

#include "base/io-util.h"
#include "base/key-value.h"

namespace lingstruct {

void StageConfig::Validate() const {
  if (I_a < 0 || I_l < 0 || I_x < 0) throw Error("iteration caps must be >= 0");
  if (consistency_stop < 0 || consistency_stop > 1)
    throw Error("consistency_stop must be in [0, 1]");
  if (min_count < 1) throw Error("min_count must be >= 1");
  if (lm_order < 1) throw Error("lm_order must be >= 1");
  if (train.states_per_model < 1) throw Error("states_per_model must be >= 1");
  if (train.em_iters < 0) throw Error("em_iters must be >= 0");
  if (init.k_min < 1) throw Error("k_min must be >= 1");
  decode.Validate();
  mine.Validate();
}

namespace {

struct Field {
  std::function<void(const std::string &)> set;
  std::function<std::string()> get;
};

std::map<std::string, Field> Fields(StageConfig &c) {
  std::map<std::string, Field> f;
  auto integer = [&](const std::string &key, auto *p) {
    typedef std::remove_pointer_t<decltype(p)> T;
    f[key] = {[key, p](const std::string &v) { *p = ParseValue<T>({key, v, 0}); },
              [p] { return std::to_string(*p); }};
  };
  auto real = [&](const std::string &key, double *p) {
    f[key] = {[key, p](const std::string &v) { *p = ParseValue<double>({key, v, 0}); },
              [p] { return FormatDouble(*p); }};
  };
  integer("I_a", &c.I_a);
  integer("I_l", &c.I_l);
  integer("I_x", &c.I_x);
  real("consistency_stop", &c.consistency_stop);
  integer("seed", &c.seed);
  integer("min_count", &c.min_count);
  integer("lm_order", &c.lm_order);
  f["init_method"] = {[&c](const std::string &v) { c.init.method = ParseInitMethod(v); },
                      [&c] { return "\"" + InitMethodName(c.init.method) + "\""; }};
  integer("min_word_frames", &c.init.word.min_word_frames);
  integer("min_peak_gap", &c.init.word.min_peak_gap);
  real("energy_weight", &c.init.word.energy_weight);
  real("spectral_weight", &c.init.word.spectral_weight);
  real("peak_sigma", &c.init.word.peak_sigma);
  real("dotplot_sigma", &c.init.dotplot_sigma);
  integer("min_subword_frames", &c.init.min_subword_frames);
  integer("k_min", &c.init.k_min);
  integer("k_max", &c.init.k_max);
  real("scatter_threshold", &c.init.scatter_threshold);
  integer("states_per_model", &c.train.states_per_model);
  integer("em_iters", &c.train.em_iters);
  real("var_floor_scale", &c.train.var_floor_scale);
  real("lm_scale", &c.decode.lm_scale);
  real("word_insertion_penalty", &c.decode.word_insertion_penalty);
  real("beam", &c.decode.beam);
  integer("mine_min_count", &c.mine.min_count);
  real("mine_min_entropy", &c.mine.min_entropy);
  integer("mine_min_len", &c.mine.min_len);
  integer("mine_max_len", &c.mine.max_len);
  return f;
}

}  // namespace

StageConfig ParseStageConfig(const std::string &text) {
  StageConfig cfg;
  auto fields = Fields(cfg);
  for (const KeyValue &kv : ParseKeyValues(text)) {
    auto it = fields.find(kv.key);
    if (it == fields.end())
      throw Error("config line " + std::to_string(kv.line) + ": unknown key '" + kv.key + "'");
    try {
      it->second.set(kv.value);
    } catch (const Error &e) {
      throw Error("config line " + std::to_string(kv.line) + ": " + e.what());
    }
  }
  cfg.init.seed = cfg.seed;
  cfg.Validate();
  return cfg;
}

StageConfig LoadStageConfig(const std::string &path) {
  return ParseStageConfig(ReadFileToString(path));
}

std::string StageConfigToString(const StageConfig &cfg) {
  StageConfig copy = cfg;
  std::ostringstream os;
  for (const auto &[key, field] : Fields(copy)) os << key << " = " << field.get() << "\n";
  return os.str();
}

}  // namespace lingstruct
