// src/feat/features.cc

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

#include "feat/features.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <unordered_set>

#include <unsupported/Eigen/FFT>

#include "base/parallel.h"

namespace lingstruct {

namespace {

// Floor applied before every log, the single-precision epsilon.
constexpr double kEnergyFloor = 1.1920928955078125e-07;

double MelScale(double hz) { return 1127.0 * std::log(1.0 + hz / 700.0); }

struct MelBank {
  int first_bin = 0;
  std::vector<double> weights;
};

std::vector<MelBank> MakeMelBanks(int num_bins, int fft_size, double rate,
                                  double low, double high) {
  int num_fft_bins = fft_size / 2;
  double fft_bin_width = rate / fft_size;
  double mel_low = MelScale(low), mel_high = MelScale(high);
  double mel_delta = (mel_high - mel_low) / (num_bins + 1);
  std::vector<MelBank> banks(num_bins);
  for (int b = 0; b < num_bins; ++b) {
    double left = mel_low + b * mel_delta, center = left + mel_delta,
           right = center + mel_delta;
    MelBank &bank = banks[b];
    bank.first_bin = -1;
    for (int i = 0; i < num_fft_bins; ++i) {
      double mel = MelScale(fft_bin_width * i);
      if (mel > left && mel < right) {
        double w = mel <= center ? (mel - left) / (center - left)
                                 : (right - mel) / (right - center);
        if (bank.first_bin < 0) bank.first_bin = i;
        bank.weights.push_back(w);
      } else if (bank.first_bin >= 0) {
        break;
      }
    }
    if (bank.first_bin < 0) bank.first_bin = 0;
  }
  return banks;
}

}  // namespace

void FeatureCorpus::Add(FeatureSequence seq) {
  if (seq.NumFrames() == 0)
    throw Error("utterance " + seq.utterance_id + " has no frames");
  if (!utts_.empty() && seq.Dim() != Dim())
    throw Error("utterance " + seq.utterance_id + " has dimension " +
                std::to_string(seq.Dim()) + ", corpus has " + std::to_string(Dim()));
  for (const auto &u : utts_)
    if (u.utterance_id == seq.utterance_id)
      throw Error("duplicate utterance id " + seq.utterance_id);
  utts_.push_back(std::move(seq));
}

int64 FeatureCorpus::TotalFrames() const {
  int64 n = 0;
  for (const auto &u : utts_) n += u.NumFrames();
  return n;
}

FeatureMatrix AddDeltas(const FeatureMatrix &statics, int window) {
  const int num_frames = static_cast<int>(statics.rows());
  const int dim = static_cast<int>(statics.cols());
  FeatureMatrix out(num_frames, dim * 3);
  out.leftCols(dim) = statics;
  double denom = 0;
  for (int n = 1; n <= window; ++n) denom += 2.0 * n * n;
  for (int order = 1; order <= 2; ++order) {
    for (int t = 0; t < num_frames; ++t) {
      for (int d = 0; d < dim; ++d) {
        double acc = 0;
        for (int n = 1; n <= window; ++n) {
          int fwd = std::min(t + n, num_frames - 1), back = std::max(t - n, 0);
          acc += n * (static_cast<double>(out(fwd, (order - 1) * dim + d)) -
                      out(back, (order - 1) * dim + d));
        }
        out(t, order * dim + d) = static_cast<float>(acc / denom);
      }
    }
  }
  return out;
}

FeatureSequence ComputeFeatures(const Waveform &wave, const FeatureConfig &cfg) {
  if (wave.sample_rate <= 0) throw Error("waveform " + wave.id + ": bad sample rate");
  const int window = static_cast<int>(std::lround(wave.sample_rate * cfg.window_ms / 1000.0));
  const int shift = static_cast<int>(std::lround(wave.sample_rate * cfg.shift_ms / 1000.0));
  const int num_samples = static_cast<int>(wave.samples.size());
  if (window <= 0 || shift <= 0) throw Error("window and shift must be positive");
  if (num_samples < window)
    throw Error("waveform " + wave.id + " is shorter than one analysis window");
  const int num_frames = (num_samples - window) / shift + 1;

  int fft_size = 1;
  while (fft_size < window) fft_size <<= 1;
  double high = cfg.high_freq > 0 ? cfg.high_freq : wave.sample_rate / 2 + cfg.high_freq;
  std::vector<MelBank> banks =
      MakeMelBanks(cfg.num_mel_bins, fft_size, wave.sample_rate, cfg.low_freq, high);

  std::vector<double> hamming(window);
  for (int i = 0; i < window; ++i)
    hamming[i] = 0.54 - 0.46 * std::cos(2 * std::numbers::pi * i / (window - 1));

  // DCT-II with orthonormal scaling, first num_ceps rows.
  const int num_bins = cfg.num_mel_bins;
  Matrix dct(cfg.num_ceps, num_bins);
  for (int k = 0; k < cfg.num_ceps; ++k) {
    double scale = k == 0 ? std::sqrt(1.0 / num_bins) : std::sqrt(2.0 / num_bins);
    for (int n = 0; n < num_bins; ++n)
      dct(k, n) = scale * std::cos(std::numbers::pi * k * (n + 0.5) / num_bins);
  }

  Eigen::FFT<double> fft;
  std::vector<double> frame(fft_size);
  std::vector<std::complex<double>> spectrum;
  Vector log_mel(num_bins);
  FeatureMatrix statics(num_frames, cfg.num_ceps);

  for (int f = 0; f < num_frames; ++f) {
    const float *src = wave.samples.data() + static_cast<std::size_t>(f) * shift;
    double mean = 0;
    for (int i = 0; i < window; ++i) mean += src[i];
    mean /= window;
    double energy = 0;
    std::fill(frame.begin(), frame.end(), 0.0);
    for (int i = 0; i < window; ++i) {
      frame[i] = src[i] - mean;
      energy += frame[i] * frame[i];
    }
    for (int i = window - 1; i > 0; --i) frame[i] -= cfg.preemph * frame[i - 1];
    frame[0] -= cfg.preemph * frame[0];
    for (int i = 0; i < window; ++i) frame[i] *= hamming[i];

    fft.fwd(spectrum, frame);
    for (int b = 0; b < num_bins; ++b) {
      const MelBank &bank = banks[b];
      double e = 0;
      for (std::size_t j = 0; j < bank.weights.size(); ++j)
        e += bank.weights[j] * std::norm(spectrum[bank.first_bin + j]);
      log_mel[b] = std::log(std::max(e, kEnergyFloor));
    }
    Vector ceps = dct * log_mel;
    ceps[0] = std::log(std::max(energy, kEnergyFloor));
    for (int k = 0; k < cfg.num_ceps; ++k) statics(f, k) = static_cast<float>(ceps[k]);
  }

  FeatureSequence seq;
  seq.utterance_id = wave.id;
  seq.frame_shift_ms = cfg.shift_ms;
  seq.frames = AddDeltas(statics, cfg.delta_window);
  return seq;
}

void ApplyCorpusCmvn(FeatureCorpus *corpus) {
  if (corpus->Empty()) return;
  const int dim = corpus->Dim();
  Vector sum = Vector::Zero(dim), sumsq = Vector::Zero(dim);
  double count = 0;
  for (const auto &u : corpus->Utterances()) {
    for (int t = 0; t < u.NumFrames(); ++t) {
      Vector x = u.frames.row(t).cast<double>().transpose();
      sum += x;
      sumsq += x.cwiseProduct(x);
    }
    count += u.NumFrames();
  }
  Vector mean = sum / count;
  Vector var = sumsq / count - mean.cwiseProduct(mean);
  Vector inv_std(dim);
  for (int d = 0; d < dim; ++d) inv_std[d] = var[d] > 1e-12 ? 1.0 / std::sqrt(var[d]) : 1.0;
  for (auto &u : corpus->MutableUtterances()) {
    for (int t = 0; t < u.NumFrames(); ++t)
      for (int d = 0; d < dim; ++d)
        u.frames(t, d) = static_cast<float>((u.frames(t, d) - mean[d]) * inv_std[d]);
  }
}

FeatureCorpus ComputeCorpusFeatures(const std::vector<Waveform> &waves,
                                    const FeatureConfig &cfg) {
  std::vector<FeatureSequence> feats(waves.size());
  ParallelFor(waves.size(), [&](std::size_t i) { feats[i] = ComputeFeatures(waves[i], cfg); });
  FeatureCorpus corpus;
  for (auto &f : feats) corpus.Add(std::move(f));
  if (cfg.apply_cmvn) ApplyCorpusCmvn(&corpus);
  return corpus;
}

}  // namespace lingstruct
