// tests/acceptance.cc

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

/// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "base/io-util.h"
#include "base/parallel.h"
#include "decoder/lexicon-decoder.h"
#include "hmm/hmm-train.h"
#include "hmm/viterbi-align.h"
#include "oracles.h"
#include "pattree/lexical-mining.h"
#include "pattree/pat-tree.h"
#include "pipeline/pipeline.h"
#include "std/model-distance.h"
#include "std/term-search.h"
#include "synth/pattern-eval.h"
#include "synth/std-task.h"
#include "synth/synth-corpus.h"
#include "test-util.h"

namespace lingstruct {
namespace {

using testing::Uniform;
using testing::UniformInt;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

template <typename... Args>
std::string Fmt(const char *format, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, static_cast<double>(args)...);
  return buf;
}

bool Near(double a, double b, double tol) {
  if (a == kLogZero || b == kLogZero) return a == b;
  return std::abs(a - b) <= tol;
}

// ---------------------------------------------------------------- criterion 1

Outcome ViterbiOracle() {
  Stopwatch clock;
  std::mt19937_64 rng(101);
  int align_cases = 0, decode_cases = 0, mismatches = 0;
  for (int trial = 0; trial < 150; ++trial) {
    // Chains up to 26 states: a long 13-state model now and then.
    const int states = trial % 10 == 0 ? 13 : UniformInt(rng, 1, 4);
    HmmSet set = testing::RandomHmmSet(rng, 3, states, 2);
    std::vector<std::vector<int32>> words;
    std::vector<int32> flat;
    for (int w = UniformInt(rng, 1, 3); w > 0 && static_cast<int>(flat.size()) * states < 26; --w) {
      words.emplace_back();
      for (int k = UniformInt(rng, 1, 2); k > 0 && static_cast<int>(flat.size() + 1) * states <= 26;
           --k) {
        words.back().push_back(UniformInt(rng, 0, 2));
        flat.push_back(words.back().back());
      }
      if (words.back().empty()) words.pop_back();
    }
    const int chain = states * static_cast<int>(flat.size());
    const int T = UniformInt(rng, std::max(1, std::min(chain, 16) - 2), 16);
    FeatureMatrix f = testing::RandomFrames(rng, T, 2);
    const double expected = oracle::AlignScore(f, flat, set);
    ++align_cases;
    if (chain > T) {
      bool threw = false;
      try {
        ForceAlign(f, words, set);
      } catch (const InfeasibleAlignment &) {
        threw = true;
      }
      if (!threw || expected != kLogZero) ++mismatches;
      continue;
    }
    if (!Near(ForceAlign(f, words, set).log_likelihood, expected, 1e-9)) ++mismatches;
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int states = UniformInt(rng, 2, 3);
    HmmSet set = testing::RandomHmmSet(rng, 3, states, 2);
    Lexicon lex(3);
    const int entries = UniformInt(rng, 1, 3);
    while (lex.Size() < entries) {
      std::vector<int32> seq;
      for (int k = UniformInt(rng, 1, 2); k > 0; --k) seq.push_back(UniformInt(rng, 0, 2));
      if (!lex.Find(seq)) lex.Add(seq, 1);
    }
    const int T = UniformInt(rng, states, 16);
    FeatureSequence seq;
    seq.utterance_id = "x";
    seq.frames = testing::RandomFrames(rng, T, 2);
    std::vector<std::vector<int32>> utts;
    for (int u = 0; u < 6; ++u) {
      utts.emplace_back();
      for (int k = UniformInt(rng, 1, 3); k > 0; --k)
        utts.back().push_back(UniformInt(rng, 0, lex.Size() - 1));
    }
    NGramLM lm = EstimateNgram(testing::WordIdLabels(utts), 2);
    DecodeConfig cfg;
    cfg.beam = 0;
    cfg.use_lm = trial % 2 == 1;
    cfg.lm_scale = Uniform(rng, 0, 3);
    cfg.word_insertion_penalty = Uniform(rng, -3, 1);
    const NGramLM *lmp = cfg.use_lm ? &lm : nullptr;
    const double expected =
        oracle::DecodeScore(seq.frames, set, lex, lmp, cfg.lm_scale, cfg.word_insertion_penalty);
    ++decode_cases;
    if (expected == kLogZero) {
      bool threw = false;
      try {
        DecodeUtterance(seq, set, lex, lmp, cfg);
      } catch (const InfeasibleAlignment &) {
        threw = true;
      }
      if (!threw) ++mismatches;
      continue;
    }
    DecodeResult r = DecodeUtterance(seq, set, lex, lmp, cfg);
    const double rescored = oracle::TokenSequenceScore(seq.frames, set, lex, lmp, cfg.lm_scale,
                                                       cfg.word_insertion_penalty, r.labels);
    if (!Near(r.total_log_score, expected, 1e-9) || !Near(rescored, expected, 1e-9)) ++mismatches;
  }
  const double secs = clock.Seconds();
  Outcome o;
  o.pass = mismatches == 0 && align_cases + decode_cases >= 200 && secs < 60;
  o.detail = Fmt("%.0f align + %.0f decode instances, %.0f mismatches, %.1f s", align_cases,
                 decode_cases, mismatches, secs);
  return o;
}

// ---------------------------------------------------------------- criterion 2

Outcome PatTreeOracle() {
  Stopwatch clock;
  std::mt19937_64 rng(202);
  int64 count_checks = 0, count_errors = 0, mine_errors = 0;
  for (int c = 0; c < 50; ++c) {
    const int alphabet = UniformInt(rng, 2, 8);
    const int total = UniformInt(rng, 50, 1000);
    std::vector<std::vector<int32>> seqs;
    for (int left = total; left > 0;) {
      const int len = std::min(left, UniformInt(rng, 1, 40));
      seqs.emplace_back();
      for (int i = 0; i < len; ++i) seqs.back().push_back(UniformInt(rng, 0, alphabet - 1));
      left -= len;
    }
    PatTree tree(seqs);
    // Every substring present, plus random probes that are mostly absent.
    std::map<std::vector<int32>, bool> patterns;
    for (const auto &s : seqs)
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t n = 1; n <= 5 && i + n <= s.size(); ++n)
          patterns[std::vector<int32>(s.begin() + i, s.begin() + i + n)] = true;
    for (int probe = 0; probe < 50; ++probe) {
      std::vector<int32> p;
      for (int k = UniformInt(rng, 1, 5); k > 0; --k) p.push_back(UniformInt(rng, 0, alphabet));
      patterns[p] = true;
    }
    for (const auto &[p, unused] : patterns) {
      ++count_checks;
      if (tree.Count(p) != oracle::Count(seqs, p)) ++count_errors;
    }
    MineConfig cfg;
    cfg.min_count = UniformInt(rng, 1, 8);
    cfg.min_entropy = Uniform(rng, 0, 2);
    cfg.min_len = UniformInt(rng, 2, 3);
    cfg.max_len = cfg.min_len + UniformInt(rng, 0, 2);
    auto got = MineCandidates(tree, cfg);
    auto want = oracle::Mine(seqs, cfg);
    bool same = got.size() == want.size();
    for (std::size_t i = 0; same && i < got.size(); ++i)
      same = got[i].subwords == want[i].subwords && got[i].count == want[i].count &&
             std::abs(got[i].left_entropy - want[i].left_entropy) < 1e-9 &&
             std::abs(got[i].right_entropy - want[i].right_entropy) < 1e-9;
    if (!same) ++mine_errors;
  }
  const double secs = clock.Seconds();
  Outcome o;
  o.pass = count_errors == 0 && mine_errors == 0 && secs < 60;
  o.detail = Fmt("%.0f count checks (%.0f wrong), %.0f of 50 candidate sets wrong, %.1f s",
                 count_checks, count_errors, mine_errors, secs);
  return o;
}

// ---------------------------------------------------------------- criterion 3

GaussianState Gauss(std::vector<double> mean, std::vector<double> var) {
  return GaussianState(Eigen::Map<Vector>(mean.data(), mean.size()),
                       Eigen::Map<Vector>(var.data(), var.size()));
}

Outcome DistanceOracle() {
  std::mt19937_64 rng(303);
  int errors = 0;
  // Symmetrized KL: sum of both directions.
  struct KlCase {
    GaussianState a, b;
    double value;
  };
  std::vector<KlCase> kl = {
      {Gauss({0}, {1}), Gauss({1}, {1}), 1.0},
      {Gauss({0}, {1}), Gauss({0}, {2}), 0.25},
      {Gauss({0, 0}, {1, 1}), Gauss({1, 2}, {1, 1}), 5.0},
      {Gauss({3}, {4}), Gauss({3}, {4}), 0.0},
      {Gauss({0}, {1}), Gauss({2}, {4}), 0.5 * (1.0 / 4 + 4.0 / 4 - 1 + 4.0 + 4.0 - 1)},
  };
  for (const auto &c : kl) {
    if (std::abs(KlGaussian(c.a, c.b) - c.value) > 1e-12) ++errors;
    if (std::abs(KlGaussian(c.b, c.a) - c.value) > 1e-12) ++errors;
  }
  int hmm_cases = 0, seq_cases = 0;
  for (int trial = 0; trial < 300; ++trial, ++hmm_cases) {
    HmmSet a = testing::RandomHmmSet(rng, 1, UniformInt(rng, 1, 5), 3);
    HmmSet b = testing::RandomHmmSet(rng, 1, UniformInt(rng, 1, 5), 3);
    if (std::abs(HmmDistance(a.Model(0), b.Model(0)) -
                 oracle::HmmDistance(a.Model(0), b.Model(0))) > 1e-9)
      ++errors;
  }
  ModelDistanceTable table = BuildDistanceTable(testing::RandomHmmSet(rng, 6, 3, 2));
  for (int trial = 0; trial < 300; ++trial, ++seq_cases) {
    std::vector<int32> q, u;
    for (int k = UniformInt(rng, 1, 5); k > 0; --k) q.push_back(UniformInt(rng, 0, 5));
    for (int k = UniformInt(rng, 1, 6); k > 0; --k) u.push_back(UniformInt(rng, 0, 5));
    if (std::abs(SequenceDistance(q, u, table) - oracle::SequenceDistance(q, u, table)) > 1e-9)
      ++errors;
  }
  Outcome o;
  o.pass = errors == 0;
  o.detail = Fmt("%.0f KL values, %.0f HMM pairs, %.0f sequence pairs, %.0f mismatches",
                 static_cast<double>(kl.size()), hmm_cases, seq_cases, errors);
  return o;
}

// ---------------------------------------------------------------- criterion 4

StageConfig SynthConfig(uint64_t seed) {
  StageConfig cfg;
  cfg.seed = static_cast<int>(seed);
  cfg.init.scatter_threshold = 0.2;
  cfg.I_a = 10;
  cfg.I_l = 10;
  cfg.I_x = 3;
  return cfg;
}

Outcome EmSanity(const SynthCorpus &sc) {
  StageConfig cfg = SynthConfig(1);
  PipelineState st = InitializeState(sc.corpus, cfg);
  HmmTrainConfig tcfg = cfg.train;
  tcfg.em_iters = 5;
  HmmTrainStats stats;
  TrainHmms(sc.corpus, st.labels, st.hmms, tcfg, &stats);
  const auto &ll = stats.corpus_log_likelihood;
  double worst = 0;
  for (std::size_t i = 1; i < ll.size(); ++i) worst = std::min(worst, ll[i] - ll[i - 1]);
  Outcome o;
  o.pass = ll.size() == 6 && worst >= -1e-6;
  o.detail = Fmt("log-likelihood %.3f -> %.3f over %.0f rounds, largest drop %.2g", ll.front(),
                 ll.back(), static_cast<double>(ll.size() - 1), std::max(0.0, -worst));
  return o;
}

// --------------------------------------------------------- criteria 5 to 9

double UnitAccuracy(const CorpusLabels &labels, const GroundTruth &truth) {
  return EvaluatePatterns(labels, truth, MapPatterns(labels, truth)).unit_accuracy;
}

struct SeedRun {
  SynthCorpus sc;
  double acc_two_level = 0, acc_one_level = 0, acc_random = 0;
  double acc_staged = 0, acc_joint = 0;
  PipelineState stage1;  // two-level, after stage I
  PipelineState staged;  // after stages I and II
  double staged_seconds = 0;
  bool planted_found = false;
  std::vector<std::vector<LedgerEntry>> ledgers;  // every run's ledger
};

SeedRun RunSeed(uint64_t seed) {
  SeedRun r;
  SynthSpec spec;
  spec.seed = seed;
  r.sc = GenerateSynthCorpus(spec);
  const FeatureCorpus &corpus = r.sc.corpus;
  const GroundTruth &truth = r.sc.truth;
  StageConfig cfg = SynthConfig(seed);

  Stopwatch clock;
  PipelineState st = InitializeState(corpus, cfg);
  RunStageI(corpus, cfg, &st);
  r.stage1 = st;
  r.acc_two_level = UnitAccuracy(st.labels, truth);
  RunStageII(corpus, cfg, &st);
  r.staged_seconds = clock.Seconds();
  r.staged = st;
  r.acc_staged = UnitAccuracy(st.labels, truth);
  r.ledgers.push_back(st.ledger);

  for (InitMethod m : {InitMethod::kOneLevel, InitMethod::kRandom}) {
    StageConfig c = cfg;
    c.init.method = m;
    c.I_l = 0;
    PipelineState s = InitializeState(corpus, c);
    RunStageI(corpus, c, &s);
    (m == InitMethod::kOneLevel ? r.acc_one_level : r.acc_random) = UnitAccuracy(s.labels, truth);
    r.ledgers.push_back(s.ledger);
  }
  StageConfig joint = cfg;
  joint.I_a = 0;
  PipelineState sj = InitializeState(corpus, joint);
  RunStageI(corpus, joint, &sj);
  RunStageII(corpus, joint, &sj);
  r.acc_joint = UnitAccuracy(sj.labels, truth);
  r.ledgers.push_back(sj.ledger);

  // Stage III from a stage-II lexicon without the planted word.
  MappingMatrix map = MapPatterns(st.labels, truth);
  auto mapped = [&map](const std::vector<int32> &s) {
    std::vector<int32> out;
    for (int32 x : s)
      out.push_back(x < static_cast<int32>(map.assignment.size()) ? map.assignment[x] : -1);
    return out;
  };
  const std::vector<int32> &planted = truth.words[0];
  std::vector<std::vector<int32>> multi;
  for (const auto &e : st.lexicon.Entries())
    if (e.subwords.size() > 1 && mapped(e.subwords) != planted) multi.push_back(e.subwords);
  PipelineState s3 = st;
  s3.lexicon = CanonicalLexicon(multi, s3.labels, s3.hmms.NumModels());
  s3.labels = RewriteLabels(s3.labels, s3.lexicon);
  RunStageIII(corpus, cfg, &s3);
  for (const auto &e : s3.lexicon.Entries())
    r.planted_found = r.planted_found || mapped(e.subwords) == planted;
  r.ledgers.push_back(s3.ledger);
  return r;
}

Outcome StructureRecovery(const SeedRun &r) {
  const GroundTruth &truth = r.sc.truth;
  MappingMatrix map = MapPatterns(r.staged.labels, truth);
  PatternAccuracy acc = EvaluatePatterns(r.staged.labels, truth, map);
  std::vector<int> patterns_per_unit(truth.n_units, 0);
  for (std::size_t p = 0; p < map.counts.size(); ++p) {
    int64 frames = 0;
    for (int64 c : map.counts[p]) frames += c;
    if (frames > 0) ++patterns_per_unit[map.assignment[p]];
  }
  const int one_to_one = static_cast<int>(
      std::count(patterns_per_unit.begin(), patterns_per_unit.end(), 1));
  Outcome o;
  o.pass = acc.frame_purity >= 0.90 && one_to_one >= 4 && r.staged_seconds < 300;
  o.detail = Fmt("purity %.4f, %.0f of 5 units matched by exactly one pattern, %.0f patterns, %.1f s",
                 acc.frame_purity, one_to_one, static_cast<double>(r.staged.hmms.NumModels()),
                 r.staged_seconds);
  return o;
}

Outcome Ordering(const std::vector<SeedRun> &runs) {
  const double tie = 0.005;
  int init_ok = 0, staged_ok = 0;
  std::string detail;
  for (const auto &r : runs) {
    if (r.acc_two_level >= r.acc_one_level - tie && r.acc_one_level >= r.acc_random - tie)
      ++init_ok;
    if (r.acc_staged >= r.acc_joint - tie) ++staged_ok;
    detail += Fmt(" [%.3f %.3f %.3f | %.3f %.3f]", r.acc_two_level, r.acc_one_level,
                  r.acc_random, r.acc_staged, r.acc_joint);
  }
  Outcome o;
  o.pass = init_ok >= 4 && staged_ok >= 4;
  o.detail = Fmt("(a) %.0f/5 seeds, (b) %.0f/5 seeds;", init_ok, staged_ok) + detail;
  return o;
}

Outcome StageThree(const std::vector<SeedRun> &runs) {
  int found = 0;
  for (const auto &r : runs) found += r.planted_found;
  Outcome o;
  o.pass = found >= 4;
  o.detail = Fmt("planted word recovered in %.0f of 5 seeds", found);
  return o;
}

Outcome ConsistencyBehavior(const std::vector<SeedRun> &runs, const StageConfig &cfg) {
  const int caps[] = {0, cfg.I_a, cfg.I_l, cfg.I_x};
  int rises = 0, rule_violations = 0;
  for (const auto &r : runs) {
    const auto &l = r.stage1.ledger;
    if (!l.empty() && l.back().utt_consistency >= l.front().utt_consistency) ++rises;
    for (const auto &ledger : r.ledgers) {
      int index_in_stage = 0;
      for (std::size_t i = 0; i < ledger.size(); ++i) {
        index_in_stage = i > 0 && ledger[i - 1].stage == ledger[i].stage ? index_in_stage + 1 : 1;
        const bool last_of_stage = i + 1 == ledger.size() || ledger[i + 1].stage != ledger[i].stage;
        const bool stopped_early = last_of_stage && index_in_stage < caps[ledger[i].stage];
        const bool high = ledger[i].utt_consistency >= cfg.consistency_stop;
        if (high && !last_of_stage) ++rule_violations;
        if (stopped_early && !high) ++rule_violations;
      }
    }
  }
  Outcome o;
  o.pass = rises == static_cast<int>(runs.size()) && rule_violations == 0;
  o.detail = Fmt("final >= first in %.0f of %.0f stage-I runs, %.0f early-stop rule violations",
                 rises, static_cast<double>(runs.size()), rule_violations);
  return o;
}

std::vector<int32> Order(const QueryRanking &r) {
  std::vector<int32> ids;
  for (const auto &it : r.items) ids.push_back(it.index);
  return ids;
}

Outcome TermDetection(const SeedRun &r, const StageConfig &cfg) {
  PipelineState st = r.staged;
  RunStageIII(r.sc.corpus, cfg, &st);
  Stopwatch clock;
  const GroundTruth &truth = r.sc.truth;
  StdTask task = BuildStdTask(truth, 20);
  CorpusLabels sup = SupervisedLabels(r.sc.corpus, truth);
  ModelDistanceTable ts = BuildDistanceTable(truth.hmms);
  ModelDistanceTable tu = BuildDistanceTable(st.hmms);
  RankedList ds = SearchAll(QueriesFromLabels(task, sup), sup, ts);
  RankedList du = SearchAll(QueriesFromLabels(task, st.labels), st.labels, tu);
  bool endpoints = true;
  RankedList f0 = FuseAndRank(ds, du, 0), f1 = FuseAndRank(ds, du, 1);
  for (std::size_t q = 0; q < du.size(); ++q)
    endpoints = endpoints && Order(f0[q]) == Order(du[q]) && Order(f1[q]) == Order(ds[q]);
  double best = 0;
  std::vector<double> maps;
  for (int i = 0; i <= 10; ++i) {
    maps.push_back(Evaluate(FuseAndRank(ds, du, i / 10.0), task.relevance).map);
    best = std::max(best, maps.back());
  }
  const double secs = clock.Seconds();
  Outcome o;
  o.pass = endpoints && task.queries.size() == 20 && r.sc.corpus.Size() == 200 &&
           maps.front() >= 0.8 && best >= std::max(maps.front(), maps.back()) - 1e-9 && secs < 120;
  o.detail = Fmt("MAP lambda=0 %.4f, lambda=1 %.4f, best %.4f, %.1f s", maps.front(), maps.back(),
                 best, secs) +
             (endpoints ? "" : ", endpoint rankings differ");
  return o;
}

// --------------------------------------------------------------- criterion 10

std::string Shell(const std::string &s) { return "'" + s + "'"; }

// Runs the CLI chain in `dir`; returns false if a command failed.
bool RunChain(const std::string &dir, int workers) {
  const std::string cli = std::string(LINGSTRUCT_CLI) + " --workers " + std::to_string(workers);
  auto p = [&dir](const std::string &f) { return Shell(dir + "/" + f); };
  std::filesystem::create_directories(dir);
  WriteFileAtomic(dir + "/stage.conf",
                  "I_a = 4\nI_l = 2\nI_x = 2\nscatter_threshold = 0.2\nseed = 3\n");
  const std::vector<std::string> steps = {
      "synth --seed 3 --out " + p("feats.ark") + " --truth " + p("truth.json") + " --std-task " +
          p("task.json") + " --relevance " + p("rel.tsv"),
      "run --features " + p("feats.ark") + " --config " + p("stage.conf") + " --workdir " + p("w"),
      "--json eval accuracy --labels " + p("w/labels.json") + " --truth " + p("truth.json") +
          " > " + p("accuracy.json"),
      "eval map --labels " + p("w/labels.json") + " --truth " + p("truth.json") + " --out " +
          p("map.json"),
      "std table --models " + p("w/models.json") + " --out " + p("table.bin"),
      "std search --table " + p("table.bin") + " --labels " + p("w/labels.json") + " --queries " +
          p("task.json") + " --out " + p("du.json"),
      "std fuse --ds " + p("du.json") + " --du " + p("du.json") + " --lambda 0.5 --out " +
          p("fused.json"),
      "std eval --ranks " + p("fused.json") + " --rel " + p("rel.tsv") + " --out " +
          p("metrics.json"),
  };
  for (const auto &s : steps) {
    std::string cmd = cli + " " + s;
    if (s.find(" > ") == std::string::npos) cmd += " > /dev/null";
    if (testing::RunCommand(cmd + " 2>&1") != 0) {
      std::fprintf(stderr, "command failed: %s\n", cmd.c_str());
      return false;
    }
  }
  return true;
}

std::map<std::string, std::string> Snapshot(const std::string &dir) {
  std::map<std::string, std::string> files;
  for (const auto &e : std::filesystem::recursive_directory_iterator(dir))
    if (e.is_regular_file())
      files[std::filesystem::relative(e.path(), dir).string()] = ReadFileToString(e.path().string());
  return files;
}

Outcome Determinism() {
  const std::string root = testing::ScratchDir("acceptance-determinism");
  Outcome o;
  const bool ok = RunChain(root + "/a", 1) && RunChain(root + "/b", 1) && RunChain(root + "/c", 8);
  if (!ok) {
    o.pass = false;
    o.detail = "a command of the chain failed";
    return o;
  }
  auto a = Snapshot(root + "/a"), b = Snapshot(root + "/b"), c = Snapshot(root + "/c");
  o.pass = a == b && a == c && a.size() >= 10;
  std::string differing;
  for (const auto &[name, bytes] : a)
    if (b[name] != bytes || c[name] != bytes) differing += " " + name;
  o.detail = Fmt("%.0f files compared", static_cast<double>(a.size())) +
             (differing.empty() ? ", all identical" : "; differ:" + differing);
  std::filesystem::remove_all(root);
  return o;
}

int Main() {
  int failures = 0;
  auto report = [&failures](int n, const char *name, const Outcome &o) {
    std::printf("criterion %2d %-28s %s  %s\n", n, name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  };
  report(1, "viterbi-oracle", ViterbiOracle());
  report(2, "pattree-oracle", PatTreeOracle());
  report(3, "dtw-kl-oracle", DistanceOracle());

  SynthSpec default_spec;
  report(4, "em-sanity", EmSanity(GenerateSynthCorpus(default_spec)));

  std::vector<SeedRun> runs;
  for (uint64_t seed = 1; seed <= 5; ++seed) runs.push_back(RunSeed(seed));
  report(5, "structure-recovery", StructureRecovery(runs[0]));
  report(6, "ordering", Ordering(runs));
  report(7, "stage-three", StageThree(runs));
  const StageConfig cfg = SynthConfig(1);
  report(8, "consistency", ConsistencyBehavior(runs, cfg));
  report(9, "term-detection", TermDetection(runs[0], cfg));
  report(10, "determinism", Determinism());
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace lingstruct

int main() { return lingstruct::Main(); }
