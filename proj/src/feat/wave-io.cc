// src/feat/wave-io.cc

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

#include "feat/wave-io.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>

#include "base/common.h"
#include "base/io-util.h"

namespace lingstruct {

namespace {

uint32 ReadU32(const std::string &buf, std::size_t pos) {
  const auto *p = reinterpret_cast<const unsigned char *>(buf.data() + pos);
  return uint32(p[0]) | (uint32(p[1]) << 8) | (uint32(p[2]) << 16) |
         (uint32(p[3]) << 24);
}

uint32 ReadU16(const std::string &buf, std::size_t pos) {
  const auto *p = reinterpret_cast<const unsigned char *>(buf.data() + pos);
  return uint32(p[0]) | (uint32(p[1]) << 8);
}

void PutU32(std::string *out, uint32 v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void PutU16(std::string *out, uint32 v) {
  out->push_back(static_cast<char>(v & 0xff));
  out->push_back(static_cast<char>((v >> 8) & 0xff));
}

}  // namespace

Waveform LoadWav(const std::string &path) {
  std::string buf = ReadFileToString(path);
  if (buf.size() < 12 || buf.compare(0, 4, "RIFF") != 0 ||
      buf.compare(8, 4, "WAVE") != 0)
    throw Error(path + ": not a RIFF/WAVE file");

  std::size_t pos = 12;
  bool have_fmt = false;
  uint32 channels = 0, rate = 0, bits = 0, format = 0;
  while (pos + 8 <= buf.size()) {
    std::string tag = buf.substr(pos, 4);
    uint32 size = ReadU32(buf, pos + 4);
    std::size_t body = pos + 8;
    if (body + size > buf.size()) {
      if (tag != "data") throw Error(path + ": truncated chunk " + tag);
      size = static_cast<uint32>(buf.size() - body);
    }
    if (tag == "fmt ") {
      if (size < 16) throw Error(path + ": malformed fmt chunk");
      format = ReadU16(buf, body);
      channels = ReadU16(buf, body + 2);
      rate = ReadU32(buf, body + 4);
      bits = ReadU16(buf, body + 14);
      // WAVE_FORMAT_EXTENSIBLE carries the real format in the sub-format GUID.
      if (format == 0xFFFE && size >= 26) format = ReadU16(buf, body + 24);
      have_fmt = true;
    } else if (tag == "data") {
      if (!have_fmt) throw Error(path + ": data chunk before fmt chunk");
      if (channels != 1)
        throw Error(path + ": unsupported channel count " + std::to_string(channels));
      if (format != 1 || bits != 16)
        throw Error(path + ": unsupported encoding (need 16-bit PCM)");
      if (rate == 0) throw Error(path + ": zero sample rate");
      Waveform w;
      w.sample_rate = rate;
      w.id = std::filesystem::path(path).stem().string();
      std::size_t n = size / 2;
      if (n == 0) throw Error(path + ": no samples");
      w.samples.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        auto v = static_cast<int16_t>(ReadU16(buf, body + 2 * i));
        w.samples[i] = static_cast<float>(v / 32768.0);
      }
      return w;
    }
    pos = body + size + (size & 1);
  }
  throw Error(path + ": no data chunk");
}

void SaveWavInterleaved(const std::vector<float> &samples, int channels,
                        int sample_rate, const std::string &path) {
  std::string out;
  uint32 data_bytes = static_cast<uint32>(samples.size() * 2);
  out += "RIFF";
  PutU32(&out, 36 + data_bytes);
  out += "WAVEfmt ";
  PutU32(&out, 16);
  PutU16(&out, 1);
  PutU16(&out, channels);
  PutU32(&out, sample_rate);
  PutU32(&out, sample_rate * channels * 2);
  PutU16(&out, channels * 2);
  PutU16(&out, 16);
  out += "data";
  PutU32(&out, data_bytes);
  for (float s : samples) {
    double c = std::clamp<double>(s, -1.0, 1.0);
    auto v = static_cast<int16_t>(std::lround(std::min(c * 32768.0, 32767.0)));
    PutU16(&out, static_cast<uint16_t>(v));
  }
  WriteFileAtomic(path, out);
}

void SaveWav(const Waveform &wave, const std::string &path) {
  SaveWavInterleaved(wave.samples, 1, static_cast<int>(wave.sample_rate), path);
}

}  // namespace lingstruct
