// src/synth/synth-corpus.cc

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

#include "synth/synth-corpus.h"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "base/io-util.h"
#include "base/key-value.h"
#include "base/parallel.h"
#include "hmm/hmm-train.h"

namespace lingstruct {

void SynthSpec::Validate() const {
  if (n_units < 2) throw Error("synth: n_units must be >= 2");
  if (n_words < 1) throw Error("synth: n_words must be >= 1");
  if (n_utterances < 1) throw Error("synth: n_utterances must be >= 1");
  if (unit_state_count < 1) throw Error("synth: unit_state_count must be >= 1");
  if (min_word_units < 1 || max_word_units < min_word_units)
    throw Error("synth: bad word length range");
  if (min_utt_words < 1 || max_utt_words < min_utt_words)
    throw Error("synth: bad utterance length range");
  if (mean_state_duration < 1) throw Error("synth: mean_state_duration must be >= 1");
  if (noise_sigma < 0) throw Error("synth: noise_sigma must be >= 0");
  if (separation <= 0) throw Error("synth: separation must be > 0");
  if (planted_word_units < 0) throw Error("synth: planted_word_units must be >= 0");
}

namespace {

struct SpecField {
  std::function<void(const KeyValue &)> set;
  std::function<std::string()> get;
};

std::map<std::string, SpecField> SpecFields(SynthSpec &s) {
  std::map<std::string, SpecField> f;
  auto integer = [&](const std::string &key, auto *p) {
    typedef std::remove_pointer_t<decltype(p)> T;
    f[key] = {[p](const KeyValue &kv) { *p = ParseValue<T>(kv); },
              [p] { return std::to_string(*p); }};
  };
  auto real = [&](const std::string &key, double *p) {
    f[key] = {[p](const KeyValue &kv) { *p = ParseValue<double>(kv); },
              [p] { return FormatDouble(*p); }};
  };
  integer("n_units", &s.n_units);
  integer("n_words", &s.n_words);
  integer("n_utterances", &s.n_utterances);
  integer("unit_state_count", &s.unit_state_count);
  integer("min_word_units", &s.min_word_units);
  integer("max_word_units", &s.max_word_units);
  integer("min_utt_words", &s.min_utt_words);
  integer("max_utt_words", &s.max_utt_words);
  real("mean_state_duration", &s.mean_state_duration);
  real("noise_sigma", &s.noise_sigma);
  real("separation", &s.separation);
  real("zipf_exponent", &s.zipf_exponent);
  integer("planted_word_units", &s.planted_word_units);
  integer("seed", &s.seed);
  return f;
}

// Portable draws: the standard distributions are implementation defined.
class Rng {
 public:
  Rng(uint64_t seed, uint64_t stream, uint64_t tag) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32),
                      static_cast<uint32_t>(tag)};
    engine_.seed(seq);
  }

  double Uniform() { return static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740992.0); }

  int UniformInt(int lo, int hi) {  // inclusive
    return lo + static_cast<int>((engine_() >> 11) % static_cast<uint64_t>(hi - lo + 1));
  }

  double Normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = Uniform(), u2 = Uniform();
    while (u1 <= 0) u1 = Uniform();
    double r = std::sqrt(-2.0 * std::log(u1)), th = 2.0 * M_PI * u2;
    spare_ = r * std::sin(th);
    has_spare_ = true;
    return r * std::cos(th);
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0;
};

constexpr uint64_t kModelTag = 0x6d6f64;
constexpr uint64_t kUttTag = 0x757474;

}  // namespace

SynthSpec ParseSynthSpec(const std::string &text) {
  SynthSpec spec;
  auto fields = SpecFields(spec);
  for (const KeyValue &kv : ParseKeyValues(text)) {
    auto it = fields.find(kv.key);
    if (it == fields.end())
      throw Error("synth spec line " + std::to_string(kv.line) + ": unknown key '" + kv.key +
                  "'");
    try {
      it->second.set(kv);
    } catch (const Error &e) {
      throw Error("synth spec line " + std::to_string(kv.line) + ": " + e.what());
    }
  }
  spec.Validate();
  return spec;
}

SynthSpec LoadSynthSpec(const std::string &path) {
  return ParseSynthSpec(ReadFileToString(path));
}

std::string SynthSpecToString(const SynthSpec &spec) {
  SynthSpec copy = spec;
  std::string out;
  for (const auto &[key, field] : SpecFields(copy)) out += key + " = " + field.get() + "\n";
  return out;
}

int32 GroundTruth::UnitAt(std::size_t utt, int32 frame) const {
  for (const auto &tok : labels.utterances.at(utt).tokens) {
    if (frame >= tok.end_frame) continue;
    for (std::size_t k = 0; k < tok.subwords.size(); ++k)
      if (frame < tok.subword_ends[k]) return tok.subwords[k];
  }
  throw Error("frame " + std::to_string(frame) + " outside utterance");
}

SynthCorpus GenerateSynthCorpus(const SynthSpec &spec) {
  spec.Validate();
  const int S = spec.unit_state_count;
  Rng model_rng(spec.seed, 0, kModelTag);

  // State means of every unit.
  std::vector<std::vector<Vector>> means(spec.n_units);
  for (int u = 0; u < spec.n_units; ++u) {
    Vector a(kNumStaticCeps), b(kNumStaticCeps);
    for (int d = 0; d < kNumStaticCeps; ++d) a[d] = spec.separation * model_rng.Normal();
    for (int d = 0; d < kNumStaticCeps; ++d) b[d] = spec.separation * model_rng.Normal();
    for (int s = 0; s < S; ++s) {
      double w = S == 1 ? 0.5 : static_cast<double>(s) / (S - 1);
      means[u].push_back((1 - w) * a + w * b);
    }
  }

  // Distinct words without immediately repeated units.
  GroundTruth truth;
  truth.n_units = spec.n_units;
  std::set<std::vector<int32>> seen;
  for (int w = 0; w < spec.n_words; ++w) {
    std::vector<int32> units;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 10000) throw Error("synth: cannot draw " + std::to_string(spec.n_words) +
                                       " distinct words");
      int len = (w == 0 && spec.planted_word_units > 0)
                    ? spec.planted_word_units
                    : model_rng.UniformInt(spec.min_word_units, spec.max_word_units);
      units.clear();
      while (static_cast<int>(units.size()) < len) {
        int32 unit = model_rng.UniformInt(0, spec.n_units - 1);
        if (!units.empty() && unit == units.back()) continue;
        units.push_back(unit);
      }
      if (seen.insert(units).second) break;
    }
    truth.words.push_back(units);
  }
  std::vector<double> cdf(spec.n_words);
  double total = 0;
  for (int w = 0; w < spec.n_words; ++w) {
    total += 1.0 / std::pow(w + 1.0, spec.zipf_exponent);
    cdf[w] = total;
  }

  const double p_stop = 1.0 / spec.mean_state_duration;
  std::vector<FeatureSequence> seqs(spec.n_utterances);
  truth.labels.utterances.resize(spec.n_utterances);
  truth.states.resize(spec.n_utterances);
  std::vector<AlignResult> alignments(spec.n_utterances);
  ParallelFor(spec.n_utterances, [&](std::size_t i) {
    Rng rng(spec.seed, i + 1, kUttTag);
    char id[32];
    std::snprintf(id, sizeof(id), "utt%04zu", i);
    UtteranceLabels &lab = truth.labels.utterances[i];
    lab.utterance_id = id;
    std::vector<Vector> frames;
    std::vector<int32> &states = truth.states[i];
    AlignResult &ali = alignments[i];
    int n_words = rng.UniformInt(spec.min_utt_words, spec.max_utt_words);
    for (int k = 0; k < n_words; ++k) {
      double r = rng.Uniform() * total;
      int32 w = 0;
      while (w + 1 < spec.n_words && r >= cdf[w]) ++w;
      WordToken tok;
      tok.word_id = w;
      tok.start_frame = static_cast<int32>(frames.size());
      for (int32 unit : truth.words[w]) {
        for (int s = 0; s < S; ++s) {
          int dur = 1;
          while (rng.Uniform() >= p_stop) ++dur;
          for (int t = 0; t < dur; ++t) {
            Vector x = means[unit][s];
            for (int d = 0; d < kNumStaticCeps; ++d) x[d] += spec.noise_sigma * rng.Normal();
            frames.push_back(x);
            states.push_back(s);
            ali.alignment.push_back({static_cast<int32>(lab.tokens.size()), unit, s});
          }
        }
        tok.subwords.push_back(unit);
        tok.subword_ends.push_back(static_cast<int32>(frames.size()));
        ali.subword_ends.push_back(static_cast<int32>(frames.size()));
      }
      tok.end_frame = static_cast<int32>(frames.size());
      lab.tokens.push_back(std::move(tok));
    }
    FeatureMatrix statics(frames.size(), kNumStaticCeps);
    for (std::size_t t = 0; t < frames.size(); ++t)
      statics.row(t) = frames[t].transpose().cast<float>();
    seqs[i].utterance_id = id;
    seqs[i].frames = AddDeltas(statics, 2);
  });

  SynthCorpus out;
  for (auto &s : seqs) out.corpus.Add(std::move(s));
  ApplyCorpusCmvn(&out.corpus);
  HmmTrainConfig cfg;
  cfg.states_per_model = S;
  truth.hmms = EstimateHmmsFromAlignment(out.corpus, alignments, spec.n_units, cfg);
  out.truth = std::move(truth);
  return out;
}

nlohmann::json TruthToJson(const GroundTruth &truth) {
  return {{"n_units", truth.n_units},
          {"words", truth.words},
          {"labels", LabelsToJson(truth.labels)},
          {"states", truth.states},
          {"hmms", HmmSetToJson(truth.hmms)}};
}

GroundTruth TruthFromJson(const nlohmann::json &j) {
  GroundTruth t;
  t.n_units = j.at("n_units").get<int>();
  t.words = j.at("words").get<std::vector<std::vector<int32>>>();
  t.labels = LabelsFromJson(j.at("labels"));
  t.states = j.at("states").get<std::vector<std::vector<int32>>>();
  t.hmms = HmmSetFromJson(j.at("hmms"));
  return t;
}

void SaveTruth(const GroundTruth &truth, const std::string &path) {
  WriteFileAtomic(path, TruthToJson(truth).dump());
}

GroundTruth LoadTruth(const std::string &path) {
  return TruthFromJson(nlohmann::json::parse(ReadFileToString(path)));
}

}  // namespace lingstruct
