// src/feat/feature-archive.cc

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

#include "feat/feature-archive.h"

#include <cstring>

#include "base/io-util.h"

namespace lingstruct {

namespace {

void PutU32(std::string *out, uint32 v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Reader {
 public:
  explicit Reader(const std::string &bytes) : bytes_(bytes) {}

  uint32 U32() {
    Need(4);
    const auto *p = reinterpret_cast<const unsigned char *>(bytes_.data() + pos_);
    pos_ += 4;
    return uint32(p[0]) | (uint32(p[1]) << 8) | (uint32(p[2]) << 16) |
           (uint32(p[3]) << 24);
  }

  std::string Bytes(std::size_t n) {
    Need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  void Need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw Error("truncated feature archive");
  }

  bool AtEnd() const { return pos_ == bytes_.size(); }

 private:
  const std::string &bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string SerializeCorpus(const FeatureCorpus &corpus) {
  std::string out = "PFF1";
  PutU32(&out, kArchiveVersion);
  PutU32(&out, static_cast<uint32>(corpus.Size()));
  for (const auto &u : corpus.Utterances()) {
    PutU32(&out, static_cast<uint32>(u.utterance_id.size()));
    out += u.utterance_id;
    PutU32(&out, static_cast<uint32>(u.NumFrames()));
    PutU32(&out, static_cast<uint32>(u.Dim()));
    for (int t = 0; t < u.NumFrames(); ++t) {
      for (int d = 0; d < u.Dim(); ++d) {
        float v = u.frames(t, d);
        uint32 bits;
        std::memcpy(&bits, &v, 4);
        PutU32(&out, bits);
      }
    }
  }
  return out;
}

FeatureCorpus DeserializeCorpus(const std::string &bytes) {
  Reader r(bytes);
  if (bytes.size() < 4 || bytes.compare(0, 4, "PFF1") != 0)
    throw Error("bad header: feature archive magic mismatch");
  r.Bytes(4);
  uint32 version = r.U32();
  if (version != kArchiveVersion)
    throw Error("feature archive version " + std::to_string(version) +
                " not supported (expected " + std::to_string(kArchiveVersion) + ")");
  uint32 n_utts = r.U32();
  FeatureCorpus corpus;
  for (uint32 i = 0; i < n_utts; ++i) {
    FeatureSequence seq;
    seq.utterance_id = r.Bytes(r.U32());
    uint32 n_frames = r.U32(), dim = r.U32();
    r.Need(static_cast<std::size_t>(n_frames) * dim * 4);
    seq.frames.resize(n_frames, dim);
    for (uint32 t = 0; t < n_frames; ++t) {
      for (uint32 d = 0; d < dim; ++d) {
        uint32 bits = r.U32();
        float v;
        std::memcpy(&v, &bits, 4);
        seq.frames(t, d) = v;
      }
    }
    corpus.Add(std::move(seq));
  }
  if (!r.AtEnd()) throw Error("trailing bytes after feature archive");
  return corpus;
}

void SaveCorpus(const FeatureCorpus &corpus, const std::string &path) {
  WriteFileAtomic(path, SerializeCorpus(corpus));
}

FeatureCorpus LoadCorpus(const std::string &path) {
  return DeserializeCorpus(ReadFileToString(path));
}

}  // namespace lingstruct
