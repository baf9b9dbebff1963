// src/pattree/pat-tree.cc

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

#include "pattree/pat-tree.h"

#include <string>

namespace lingstruct {

PatTree::PatTree(const std::vector<std::vector<int32>> &sequences) {
  nodes_.emplace_back();  // root
  for (const auto &s : sequences) {
    for (int32 sym : s)
      if (sym < 0) throw Error("pat-tree symbols must be non-negative");
    seqs_.push_back(s);
    seqs_.back().push_back(kSeqEnd);
    total_symbols_ += static_cast<int64>(s.size());
  }
  for (int32 q = 0; q < static_cast<int32>(seqs_.size()); ++q)
    for (int32 i = 0; i < static_cast<int32>(seqs_[q].size()); ++i) InsertSuffix(q, i);
}

void PatTree::InsertSuffix(int32 seq, int32 start) {
  const int32 left_sym = start == 0 ? kSeqBegin : Symbol(seq, start - 1);
  const int32 len = static_cast<int32>(seqs_[seq].size());
  int32 node = 0;
  int32 pos = start;
  nodes_[0].count += 1;
  while (pos < len) {
    int32 sym = Symbol(seq, pos);
    auto it = nodes_[node].children.find(sym);
    if (it == nodes_[node].children.end()) {
      Node leaf;
      leaf.edge_seq = seq;
      leaf.edge_begin = pos;
      leaf.edge_end = len;
      leaf.count = 1;
      leaf.left[left_sym] = 1;
      int32 leaf_index = static_cast<int32>(nodes_.size());
      nodes_.push_back(std::move(leaf));
      nodes_[node].children[sym] = leaf_index;
      return;
    }
    int32 child = it->second;
    // Match along the child's edge.
    int32 k = 0;
    const int32 edge_len = EdgeLength(nodes_[child]);
    while (k < edge_len && pos + k < len &&
           Symbol(nodes_[child].edge_seq, nodes_[child].edge_begin + k) == Symbol(seq, pos + k))
      ++k;
    if (k < edge_len) {
      // Split the edge after k symbols.
      Node mid;
      mid.edge_seq = nodes_[child].edge_seq;
      mid.edge_begin = nodes_[child].edge_begin;
      mid.edge_end = mid.edge_begin + k;
      mid.count = nodes_[child].count;
      mid.left = nodes_[child].left;
      int32 mid_index = static_cast<int32>(nodes_.size());
      nodes_[child].edge_begin += k;
      mid.children[Symbol(nodes_[child].edge_seq, nodes_[child].edge_begin)] = child;
      nodes_.push_back(std::move(mid));
      nodes_[node].children[sym] = mid_index;
      child = mid_index;
    }
    nodes_[child].count += 1;
    nodes_[child].left[left_sym] += 1;
    node = child;
    pos += k;
  }
}

std::pair<int32, int32> PatTree::Locate(const std::vector<int32> &pattern) const {
  int32 node = 0;
  std::size_t i = 0;
  int32 consumed = 0;
  while (i < pattern.size()) {
    auto it = nodes_[node].children.find(pattern[i]);
    if (it == nodes_[node].children.end()) return {-1, 0};
    const Node &child = nodes_[it->second];
    consumed = 0;
    while (consumed < EdgeLength(child) && i < pattern.size()) {
      if (Symbol(child.edge_seq, child.edge_begin + consumed) != pattern[i]) return {-1, 0};
      ++consumed;
      ++i;
    }
    node = it->second;
  }
  if (node == 0) return {0, 0};
  return {node, consumed};
}

int64 PatTree::Count(const std::vector<int32> &pattern) const {
  for (int32 s : pattern)
    if (s < 0) return 0;
  auto [node, consumed] = Locate(pattern);
  if (node < 0) return 0;
  return nodes_[node].count;
}

std::map<int32, int64> PatTree::RightContext(const std::vector<int32> &pattern) const {
  std::map<int32, int64> out;
  auto [node, consumed] = Locate(pattern);
  if (node < 0) return out;
  const Node &n = nodes_[node];
  if (node != 0 && consumed < EdgeLength(n)) {
    out[Symbol(n.edge_seq, n.edge_begin + consumed)] = n.count;
  } else {
    for (const auto &[sym, c] : n.children) out[sym] = nodes_[c].count;
  }
  return out;
}

std::map<int32, int64> PatTree::LeftContext(const std::vector<int32> &pattern) const {
  auto [node, consumed] = Locate(pattern);
  if (node <= 0) return {};
  return nodes_[node].left;
}

void PatTree::CheckInvariants() const {
  if (static_cast<int64>(nodes_.size()) >
      2 * (total_symbols_ + static_cast<int64>(seqs_.size())) + 1)
    throw Error("pat-tree has too many nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node &n = nodes_[i];
    if (n.children.empty()) continue;
    if (i != 0 && n.children.size() < 2)
      throw Error("pat-tree internal node " + std::to_string(i) + " does not branch");
    int64 sum = 0;
    for (const auto &[sym, c] : n.children) sum += nodes_[c].count;
    if (sum != n.count)
      throw Error("pat-tree node " + std::to_string(i) + " count differs from children");
  }
}

}  // namespace lingstruct
