// src/lex/lexicon.cc

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

#include "lex/lexicon.h"

#include <algorithm>

#include "base/io-util.h"

namespace lingstruct {

namespace {

struct Counts {
  std::map<std::vector<int32>, int64> tokens;  // whole-token sequences
  std::vector<int64> subwords;                 // occurrences anywhere
};

Counts CountLabels(const CorpusLabels &labels, int32 inventory_size) {
  Counts c;
  c.subwords.assign(inventory_size, 0);
  for (const auto &utt : labels.utterances) {
    for (const auto &tok : utt.tokens) {
      ++c.tokens[tok.subwords];
      for (int32 s : tok.subwords) {
        if (s < 0 || s >= inventory_size)
          throw Error("subword id " + std::to_string(s) + " outside inventory of size " +
                      std::to_string(inventory_size));
        ++c.subwords[s];
      }
    }
  }
  return c;
}

Lexicon BuildCanonical(std::vector<std::vector<int32>> multi, const Counts &c,
                       int32 inventory_size) {
  Lexicon lex(inventory_size);
  for (int32 s = 0; s < inventory_size; ++s)
    lex.Add({s}, std::max<int64>(1, c.subwords[s]));
  auto count_of = [&](const std::vector<int32> &seq) {
    auto it = c.tokens.find(seq);
    return it == c.tokens.end() ? int64(0) : it->second;
  };
  std::sort(multi.begin(), multi.end(), [&](const auto &a, const auto &b) {
    int64 ca = count_of(a), cb = count_of(b);
    if (ca != cb) return ca > cb;
    return a < b;
  });
  multi.erase(std::unique(multi.begin(), multi.end()), multi.end());
  for (const auto &seq : multi) lex.Add(seq, count_of(seq));
  return lex;
}

}  // namespace

int32 Lexicon::Add(const std::vector<int32> &subwords, int64 count) {
  if (subwords.empty()) throw Error("lexicon entry with no subwords");
  for (int32 s : subwords)
    if (s < 0 || s >= inventory_size_)
      throw Error("lexicon entry uses subword " + std::to_string(s) +
                  " outside inventory of size " + std::to_string(inventory_size_));
  if (index_.count(subwords)) throw Error("duplicate lexicon entry");
  int32 id = Size();
  entries_.push_back({id, subwords, count});
  index_[subwords] = id;
  return id;
}

std::optional<int32> Lexicon::Find(const std::vector<int32> &subwords) const {
  auto it = index_.find(subwords);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int32 Lexicon::NumMultiSubword() const {
  int32 n = 0;
  for (const auto &e : entries_) n += e.subwords.size() > 1;
  return n;
}

Lexicon HarvestLexicon(const CorpusLabels &labels, int64 min_count,
                       int32 inventory_size) {
  Counts c = CountLabels(labels, inventory_size);
  std::vector<std::vector<int32>> multi;
  for (const auto &[seq, n] : c.tokens)
    if (seq.size() > 1 && n >= min_count) multi.push_back(seq);
  return BuildCanonical(std::move(multi), c, inventory_size);
}

Lexicon CanonicalLexicon(const std::vector<std::vector<int32>> &multi,
                         const CorpusLabels &labels, int32 inventory_size) {
  std::vector<std::vector<int32>> keep;
  for (const auto &seq : multi)
    if (seq.size() > 1) keep.push_back(seq);
  return BuildCanonical(std::move(keep), CountLabels(labels, inventory_size),
                        inventory_size);
}

void RecountLexicon(const CorpusLabels &labels, Lexicon *lex) {
  Counts c = CountLabels(labels, lex->InventorySize());
  for (const auto &e : lex->Entries()) {
    if (e.subwords.size() == 1) {
      lex->SetCount(e.id, std::max<int64>(1, c.subwords[e.subwords[0]]));
    } else {
      auto it = c.tokens.find(e.subwords);
      lex->SetCount(e.id, it == c.tokens.end() ? 0 : it->second);
    }
  }
}

CorpusLabels RewriteLabels(const CorpusLabels &labels, const Lexicon &lex) {
  CorpusLabels out;
  for (const auto &utt : labels.utterances) {
    UtteranceLabels nu;
    nu.utterance_id = utt.utterance_id;
    for (const auto &tok : utt.tokens) {
      if (auto id = lex.Find(tok.subwords)) {
        WordToken t = tok;
        t.word_id = *id;
        nu.tokens.push_back(std::move(t));
        continue;
      }
      for (std::size_t k = 0; k < tok.subwords.size(); ++k) {
        auto id = lex.Find({tok.subwords[k]});
        if (!id) throw Error("lexicon lacks singleton for subword " + std::to_string(tok.subwords[k]));
        nu.tokens.push_back({*id, tok.SubwordStart(k), tok.subword_ends[k],
                             {tok.subwords[k]}, {tok.subword_ends[k]}});
      }
    }
    out.utterances.push_back(std::move(nu));
  }
  return out;
}

nlohmann::json LexiconToJson(const Lexicon &lex) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto &e : lex.Entries())
    entries.push_back({{"id", e.id}, {"subwords", e.subwords}, {"count", e.count}});
  return {{"subword_inventory_size", lex.InventorySize()}, {"entries", entries}};
}

Lexicon LexiconFromJson(const nlohmann::json &j) {
  std::vector<WordPattern> entries;
  int32 inventory = 0;
  for (const auto &je : j.at("entries")) {
    WordPattern e;
    e.id = je.at("id").get<int32>();
    e.subwords = je.at("subwords").get<std::vector<int32>>();
    e.count = je.value("count", int64(0));
    for (int32 s : e.subwords) inventory = std::max(inventory, s + 1);
    entries.push_back(std::move(e));
  }
  if (j.contains("subword_inventory_size"))
    inventory = std::max(inventory, j.at("subword_inventory_size").get<int32>());
  std::sort(entries.begin(), entries.end(),
            [](const auto &a, const auto &b) { return a.id < b.id; });
  Lexicon lex(inventory);
  for (const auto &e : entries) {
    if (e.id != lex.Size()) throw Error("lexicon ids must be dense starting at 0");
    lex.Add(e.subwords, e.count);
  }
  return lex;
}

void SaveLexicon(const Lexicon &lex, const std::string &path) {
  WriteFileAtomic(path, LexiconToJson(lex).dump(1) + "\n");
}

Lexicon LoadLexicon(const std::string &path) {
  return LexiconFromJson(nlohmann::json::parse(ReadFileToString(path)));
}

}  // namespace lingstruct
