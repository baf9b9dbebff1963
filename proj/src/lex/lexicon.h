// src/lex/lexicon.h

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

#ifndef LINGSTRUCT_LEX_LEXICON_H_
#define LINGSTRUCT_LEX_LEXICON_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lex/labels.h"

namespace lingstruct {

struct WordPattern {
  int32 id = -1;
  std::vector<int32> subwords;
  int64 count = 0;

  bool operator==(const WordPattern &) const = default;
};

/// Word-like patterns in terms of subword pattern sequences. Ids are dense,
/// 0..Size()-1, and no two entries share a subword sequence.
class Lexicon {
 public:
  explicit Lexicon(int32 inventory_size = 0) : inventory_size_(inventory_size) {}

  /// Adds a new entry and returns its id. Throws on a duplicate sequence, an
  /// empty sequence, or a subword id outside the inventory.
  int32 Add(const std::vector<int32> &subwords, int64 count);

  std::optional<int32> Find(const std::vector<int32> &subwords) const;
  const WordPattern &Entry(int32 id) const { return entries_.at(id); }
  const std::vector<WordPattern> &Entries() const { return entries_; }
  int32 Size() const { return static_cast<int32>(entries_.size()); }
  int32 InventorySize() const { return inventory_size_; }
  int32 NumMultiSubword() const;
  void SetCount(int32 id, int64 count) { entries_.at(id).count = count; }

  bool operator==(const Lexicon &o) const {
    return inventory_size_ == o.inventory_size_ && entries_ == o.entries_;
  }

 private:
  int32 inventory_size_;
  std::vector<WordPattern> entries_;
  std::map<std::vector<int32>, int32> index_;
};

/// Builds a lexicon in canonical order: singleton entry s gets id s for every
/// subword in [0, inventory_size), then multi-subword sequences counted at
/// least min_count times follow, ordered by count (desc) then sequence.
/// Multi-subword counts are token counts; a singleton's count is the number
/// of occurrences of that subword anywhere in the labels, floored at 1.
Lexicon HarvestLexicon(const CorpusLabels &labels, int64 min_count,
                       int32 inventory_size);

/// Same ordering and counting rule as HarvestLexicon, for an explicit set of
/// multi-subword sequences (count 0 if a sequence never forms a token).
Lexicon CanonicalLexicon(const std::vector<std::vector<int32>> &multi,
                         const CorpusLabels &labels, int32 inventory_size);

/// Maps every token onto the lexicon: tokens whose sequence is an entry get
/// that id; the rest are split into singleton tokens.
CorpusLabels RewriteLabels(const CorpusLabels &labels, const Lexicon &lex);

/// Recomputes entry counts from the labels using the HarvestLexicon rule.
void RecountLexicon(const CorpusLabels &labels, Lexicon *lex);

nlohmann::json LexiconToJson(const Lexicon &lex);
Lexicon LexiconFromJson(const nlohmann::json &j);
void SaveLexicon(const Lexicon &lex, const std::string &path);
Lexicon LoadLexicon(const std::string &path);

}  // namespace lingstruct

#endif  // LINGSTRUCT_LEX_LEXICON_H_
