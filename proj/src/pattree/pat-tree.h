// src/pattree/pat-tree.h

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

#ifndef LINGSTRUCT_PATTREE_PAT_TREE_H_
#define LINGSTRUCT_PATTREE_PAT_TREE_H_

#include <map>
#include <vector>

#include "base/common.h"

namespace lingstruct {

/// Compressed suffix trie over symbol sequences (subword pattern ids). Every
/// suffix of every sequence is inserted with a trailing end sentinel, so the
/// count of a node is the number of occurrences of the string it spells and
/// equals the sum of its children's counts. Each node also keeps the
/// distribution of symbols preceding its occurrences (kSeqBegin at a
/// sequence start).
class PatTree {
 public:
  static constexpr int32 kSeqEnd = -1;
  static constexpr int32 kSeqBegin = -2;

  explicit PatTree(const std::vector<std::vector<int32>> &sequences);

  /// Occurrences of `pattern` (overlapping occurrences all count). Patterns
  /// containing sentinels are not queryable and return 0.
  int64 Count(const std::vector<int32> &pattern) const;

  /// Symbol -> count of what follows / precedes each occurrence (sentinels
  /// included). Empty when the pattern does not occur.
  std::map<int32, int64> RightContext(const std::vector<int32> &pattern) const;
  std::map<int32, int64> LeftContext(const std::vector<int32> &pattern) const;

  std::size_t NumNodes() const { return nodes_.size(); }
  int64 TotalSymbols() const { return total_symbols_; }

  /// Calls fn(pattern, count, left, right) for every distinct sentinel-free
  /// string of length in [min_len, max_len] that occurs at least min_count
  /// times. Iteration follows the tree's child order (ascending symbols).
  template <typename Fn>
  void ForEachPattern(int min_len, int max_len, int64 min_count, Fn &&fn) const;

  /// Structural self-check used by tests: internal nodes branch, counts add
  /// up, node count within bounds. Throws on violation.
  void CheckInvariants() const;

 private:
  struct Node {
    // Edge label into this node: symbols seq_[edge_seq][edge_begin, edge_end).
    int32 edge_seq = 0;
    int32 edge_begin = 0;
    int32 edge_end = 0;
    int64 count = 0;
    std::map<int32, int32> children;  // first edge symbol -> node index
    std::map<int32, int64> left;
  };

  int32 Symbol(int32 seq, int32 pos) const { return seqs_[seq][pos]; }
  int32 EdgeLength(const Node &n) const { return n.edge_end - n.edge_begin; }

  // Walks the pattern; returns the node whose string has the pattern as a
  // prefix and the number of edge symbols consumed into it, or -1.
  std::pair<int32, int32> Locate(const std::vector<int32> &pattern) const;

  void InsertSuffix(int32 seq, int32 start);

  template <typename Fn>
  void Walk(int32 node, std::vector<int32> &prefix, int min_len, int max_len,
            int64 min_count, Fn &fn) const;

  std::vector<std::vector<int32>> seqs_;  // with trailing kSeqEnd
  std::vector<Node> nodes_;
  int64 total_symbols_ = 0;
};

template <typename Fn>
void PatTree::ForEachPattern(int min_len, int max_len, int64 min_count, Fn &&fn) const {
  std::vector<int32> prefix;
  Walk(0, prefix, min_len, max_len, min_count, fn);
}

template <typename Fn>
void PatTree::Walk(int32 node, std::vector<int32> &prefix, int min_len, int max_len,
                   int64 min_count, Fn &fn) const {
  for (const auto &[first, child_index] : nodes_[node].children) {
    const Node &child = nodes_[child_index];
    if (child.count < min_count || first == kSeqEnd) continue;
    std::size_t saved = prefix.size();
    bool descend = true;
    for (int32 k = child.edge_begin; k < child.edge_end; ++k) {
      int32 sym = Symbol(child.edge_seq, k);
      if (sym == kSeqEnd || static_cast<int>(prefix.size()) >= max_len) {
        descend = false;
        break;
      }
      prefix.push_back(sym);
      if (static_cast<int>(prefix.size()) < min_len) continue;
      std::map<int32, int64> right;
      if (k + 1 < child.edge_end) {
        right[Symbol(child.edge_seq, k + 1)] = child.count;
      } else {
        for (const auto &[s, gi] : child.children) right[s] = nodes_[gi].count;
      }
      fn(static_cast<const std::vector<int32> &>(prefix), child.count, child.left, right);
    }
    if (descend) Walk(child_index, prefix, min_len, max_len, min_count, fn);
    prefix.resize(saved);
  }
}

}  // namespace lingstruct

#endif  // LINGSTRUCT_PATTREE_PAT_TREE_H_
