// src/lex/ngram-lm.cc

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

#include "lex/ngram-lm.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>

namespace lingstruct {

namespace {

std::string WordName(int32 w) {
  if (w == kBos) return "<s>";
  if (w == kEos) return "</s>";
  return std::to_string(w);
}

int32 ParseWord(const std::string &s) {
  if (s == "<s>") return kBos;
  if (s == "</s>") return kEos;
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size() && v >= 0) return v;
  } catch (const std::exception &) {
  }
  throw Error("ARPA: unknown word symbol '" + s + "'");
}

std::string FormatLog10(double ln) {
  if (ln == kLogZero) return "-99";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", ln / std::numbers::ln10);
  return buf;
}

}  // namespace

bool NGramLM::InVocabulary(int32 word) const {
  return std::binary_search(predicted_.begin(), predicted_.end(), word);
}

double NGramLM::LogBackoff(const std::vector<int32> &context) const {
  auto it = backoff_.find(context);
  return it == backoff_.end() ? 0.0 : it->second;
}

double NGramLM::LogProb(const std::vector<int32> &context, int32 word) const {
  std::size_t keep = std::min<std::size_t>(context.size(), order_ > 0 ? order_ - 1 : 0);
  std::vector<int32> ctx(context.end() - keep, context.end());
  double acc = 0;
  for (;;) {
    auto it = probs_.find(ctx);
    if (it != probs_.end()) {
      auto jt = it->second.find(word);
      if (jt != it->second.end()) return acc + jt->second;
      acc += LogBackoff(ctx);
    }
    if (ctx.empty()) return acc + unk_log_prob_;
    ctx.erase(ctx.begin());
  }
}

NGramLM EstimateNgram(const CorpusLabels &labels, int order,
                      const std::vector<int32> &vocabulary) {
  if (order < 1) throw Error("n-gram order must be >= 1");
  bool any = false;
  for (const auto &u : labels.utterances) any = any || !u.tokens.empty();
  if (!any) throw Error("cannot estimate an n-gram model from empty labels");

  std::set<int32> vocab(vocabulary.begin(), vocabulary.end());
  // counts[n-1][context][word]
  std::vector<std::map<std::vector<int32>, std::map<int32, int64>>> counts(order);
  for (const auto &u : labels.utterances) {
    std::vector<int32> sent{kBos};
    for (const auto &t : u.tokens) {
      sent.push_back(t.word_id);
      vocab.insert(t.word_id);
    }
    sent.push_back(kEos);
    for (std::size_t i = 1; i < sent.size(); ++i) {
      for (int n = 1; n <= order && static_cast<int>(i) - n + 1 >= 0; ++n) {
        std::vector<int32> ctx(sent.begin() + (i - n + 1), sent.begin() + i);
        ++counts[n - 1][ctx][sent[i]];
      }
    }
  }
  vocab.erase(kBos);
  vocab.insert(kEos);

  NGramLM lm;
  lm.order_ = order;
  lm.predicted_.assign(vocab.begin(), vocab.end());

  // Unigrams interpolate with a uniform distribution over the predicted set.
  {
    const auto &uni = counts[0][{}];
    int64 total = 0;
    for (const auto &[w, c] : uni) total += c;
    double types = static_cast<double>(uni.size());
    double uniform = 1.0 / lm.predicted_.size();
    auto &table = lm.probs_[{}];
    for (int32 w : lm.predicted_) {
      auto it = uni.find(w);
      double c = it == uni.end() ? 0.0 : static_cast<double>(it->second);
      table[w] = std::log((c + types * uniform) / (total + types));
    }
    lm.unk_log_prob_ = std::log(types * uniform / (total + types));
  }
  for (int n = 2; n <= order; ++n) {
    for (const auto &[ctx, followers] : counts[n - 1]) {
      int64 total = 0;
      for (const auto &[w, c] : followers) total += c;
      double types = static_cast<double>(followers.size());
      std::vector<int32> lower(ctx.begin() + 1, ctx.end());
      std::map<int32, double> row;
      for (const auto &[w, c] : followers) {
        double p_lower = std::exp(lm.LogProb(lower, w));
        row[w] = std::log((c + types * p_lower) / (total + types));
      }
      lm.probs_[ctx] = std::move(row);
      lm.backoff_[ctx] = std::log(types / (total + types));
    }
  }
  return lm;
}

double LmLogProb(const NGramLM &lm, const std::vector<int32> &sequence) {
  std::vector<int32> history{kBos};
  double total = 0;
  for (int32 w : sequence) {
    total += lm.LogProb(history, w);
    history.push_back(w);
  }
  return total + lm.LogProb(history, kEos);
}

std::string WriteArpa(const NGramLM &lm) {
  std::vector<std::vector<std::pair<std::vector<int32>, int32>>> by_order(lm.Order());
  for (const auto &[ctx, row] : lm.Table())
    for (const auto &[w, lp] : row) by_order[ctx.size()].push_back({ctx, w});
  std::ostringstream os;
  os << "\\data\\\n";
  for (int n = 1; n <= lm.Order(); ++n)
    os << "ngram " << n << "=" << by_order[n - 1].size() + (n == 1 ? 2 : 0) << "\n";
  for (int n = 1; n <= lm.Order(); ++n) {
    os << "\n\\" << n << "-grams:\n";
    auto emit = [&](const std::vector<int32> &ctx, int32 w, double lp) {
      std::vector<int32> gram = ctx;
      gram.push_back(w);
      os << FormatLog10(lp);
      for (int32 g : gram) os << '\t' << WordName(g);
      if (n < lm.Order() && w != kEos) os << '\t' << FormatLog10(lm.LogBackoff(gram));
      os << '\n';
    };
    if (n == 1) {
      emit({}, kBos, kLogZero);
      os << FormatLog10(lm.LogProb({}, -1000)) << "\t<unk>\n";
    }
    for (const auto &[ctx, w] : by_order[n - 1]) emit(ctx, w, lm.Table().at(ctx).at(w));
  }
  os << "\n\\end\\\n";
  return os.str();
}

NGramLM ReadArpa(const std::string &text) {
  std::istringstream is(text);
  std::string line;
  NGramLM lm;
  int section = 0;
  std::set<int32> vocab;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line == "\\data\\") continue;
    if (line.rfind("ngram ", 0) == 0) {
      lm.order_ = std::max(lm.order_, std::stoi(line.substr(6, line.find('=') - 6)));
      continue;
    }
    if (line == "\\end\\") break;
    if (line[0] == '\\') {
      section = std::stoi(line.substr(1));
      continue;
    }
    if (section == 0) throw Error("ARPA: data before first n-gram section");
    std::istringstream ls(line);
    std::vector<std::string> fields;
    std::string f;
    while (ls >> f) fields.push_back(f);
    if (static_cast<int>(fields.size()) < section + 1)
      throw Error("ARPA: short line '" + line + "'");
    double lp = std::stod(fields[0]) * std::numbers::ln10;
    if (section == 1 && fields[1] == "<unk>") {
      lm.unk_log_prob_ = lp;
      continue;
    }
    std::vector<int32> gram;
    for (int k = 0; k < section; ++k) gram.push_back(ParseWord(fields[1 + k]));
    if (static_cast<int>(fields.size()) > section + 1)
      lm.backoff_[gram] = std::stod(fields[section + 1]) * std::numbers::ln10;
    int32 w = gram.back();
    gram.pop_back();
    if (w == kBos) continue;
    lm.probs_[gram][w] = lp;
    if (section == 1) vocab.insert(w);
  }
  if (lm.order_ < 1) throw Error("ARPA: missing \\data\\ header");
  lm.predicted_.assign(vocab.begin(), vocab.end());
  return lm;
}

nlohmann::json LmToJson(const NGramLM &lm) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto &[ctx, row] : lm.probs_) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto &[w, lp] : row) entries.push_back({w, lp});
    nlohmann::json jr = {{"context", ctx}, {"probs", entries}};
    auto it = lm.backoff_.find(ctx);
    if (it != lm.backoff_.end()) jr["backoff"] = it->second;
    rows.push_back(jr);
  }
  return {{"order", lm.order_}, {"vocabulary", lm.predicted_},
          {"unk_log_prob", std::isfinite(lm.unk_log_prob_) ? nlohmann::json(lm.unk_log_prob_)
                                                     : nlohmann::json(nullptr)},
          {"rows", rows}};
}

NGramLM LmFromJson(const nlohmann::json &j) {
  NGramLM lm;
  lm.order_ = j.at("order").get<int>();
  lm.predicted_ = j.at("vocabulary").get<std::vector<int32>>();
  const auto &unk = j.at("unk_log_prob");
  lm.unk_log_prob_ = unk.is_null() ? kLogZero : unk.get<double>();
  for (const auto &jr : j.at("rows")) {
    auto ctx = jr.at("context").get<std::vector<int32>>();
    auto &row = lm.probs_[ctx];
    for (const auto &e : jr.at("probs")) row[e.at(0).get<int32>()] = e.at(1).get<double>();
    if (jr.contains("backoff")) lm.backoff_[ctx] = jr.at("backoff").get<double>();
  }
  return lm;
}

}  // namespace lingstruct
