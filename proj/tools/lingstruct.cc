// tools/lingstruct.cc

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

// lingstruct: discover subword and word-like patterns from untranscribed
// speech, and search the corpus with the discovered models.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "base/io-util.h"
#include "base/parallel.h"
#include "decoder/lexicon-decoder.h"
#include "feat/feature-archive.h"
#include "feat/features.h"
#include "feat/wave-io.h"
#include "hmm/hmm-train.h"
#include "init/initial-labels.h"
#include "lex/lexicon.h"
#include "lex/ngram-lm.h"
#include "pattree/lexical-mining.h"
#include "pattree/pat-tree.h"
#include "pipeline/pipeline.h"
#include "std/model-distance.h"
#include "std/term-search.h"
#include "synth/pattern-eval.h"
#include "synth/std-task.h"
#include "synth/synth-corpus.h"

namespace lingstruct {
namespace {

/// Bad flags or configuration; exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Globals {
  int workers = 0;
  bool json = false;
};

Globals g;

nlohmann::json ReadJson(const std::string &path) {
  try {
    return nlohmann::json::parse(ReadFileToString(path));
  } catch (const nlohmann::json::parse_error &e) {
    throw Error("cannot parse " + path + ": " + e.what());
  }
}

void WriteJson(const std::string &path, const nlohmann::json &j) {
  WriteFileAtomic(path, j.dump(1) + "\n");
}

// Prints a flat report, as JSON with --json.
void Report(const nlohmann::json &j) {
  if (g.json) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (const auto &[key, value] : j.items()) {
    if (value.is_structured()) continue;
    std::cout << key << "\t" << (value.is_string() ? value.get<std::string>() : value.dump())
              << "\n";
  }
}

StageConfig ConfigOrDefault(const std::string &path) {
  if (path.empty()) return StageConfig();
  try {
    return LoadStageConfig(path);
  } catch (const Error &e) {
    throw UsageError(std::string("config ") + path + ": " + e.what());
  }
}

void AddFeaturesCommand(CLI::App &app) {
  auto *features = app.add_subcommand("features", "Feature extraction");
  features->require_subcommand(1);
  auto *extract = features->add_subcommand("extract", "Extract MFCC features from a WAV directory");
  static std::string in, out;
  static bool no_cmvn = false;
  extract->add_option("--in", in, "Directory of 16-bit mono WAV files")->required();
  extract->add_option("--out", out, "Feature archive")->required();
  extract->add_flag("--no-cmvn", no_cmvn, "Skip corpus mean/variance normalization");
  extract->callback([] {
    std::vector<std::string> paths;
    for (const auto &e : std::filesystem::directory_iterator(in))
      if (e.is_regular_file() && e.path().extension() == ".wav") paths.push_back(e.path().string());
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) throw Error("no .wav files in " + in);
    std::vector<Waveform> waves;
    for (const auto &p : paths) waves.push_back(LoadWav(p));
    FeatureConfig cfg;
    cfg.apply_cmvn = !no_cmvn;
    FeatureCorpus corpus = ComputeCorpusFeatures(waves, cfg);
    SaveCorpus(corpus, out);
    Report({{"utterances", corpus.Size()}, {"frames", corpus.TotalFrames()}, {"dim", corpus.Dim()}});
  });
}

void AddInitCommand(CLI::App &app) {
  auto *cmd = app.add_subcommand("init", "Initial labels from top-down segmentation and clustering");
  static std::string features, out, config, lexicon_out, method;
  static uint64_t seed = 0;
  static int k_max = 0;
  cmd->add_option("--features", features, "Feature archive")->required();
  cmd->add_option("--out", out, "Output labels (JSON)")->required();
  cmd->add_option("--config", config, "Stage config file");
  cmd->add_option("--seed", seed, "Random seed");
  cmd->add_option("--k-max", k_max, "Largest cluster count tried (0 = automatic)");
  cmd->add_option("--method", method, "two-level, one-level or random");
  cmd->add_option("--lexicon-out", lexicon_out, "Also write the initial lexicon");
  cmd->callback([cmd] {
    StageConfig cfg = ConfigOrDefault(config);
    InitConfig icfg = cfg.init;
    icfg.seed = cmd->count("--seed") ? seed : cfg.seed;
    if (cmd->count("--k-max")) icfg.k_max = k_max;
    if (!method.empty()) {
      try {
        icfg.method = ParseInitMethod(method);
      } catch (const Error &e) {
        throw UsageError(e.what());
      }
    }
    FeatureCorpus corpus = LoadCorpus(features);
    InitialLabels init = BuildInitialLabels(corpus, icfg);
    SaveLabels(init.labels, out);
    if (!lexicon_out.empty()) SaveLexicon(init.initial_lexicon, lexicon_out);
    nlohmann::json curve = nlohmann::json::array();
    for (const auto &[k, r] : init.clustering.scatter_ratio_curve) curve.push_back({k, r});
    Report({{"subword_patterns", init.n_subword_patterns},
            {"lexicon_size", init.initial_lexicon.Size()},
            {"scatter_ratio_curve", curve}});
  });
}

void AddTrainCommand(CLI::App &app) {
  auto *cmd = app.add_subcommand("train", "Train subword HMMs on labels (Viterbi EM)");
  static std::string features, labels, models_out, models_in, config;
  static int em_iters = -1, num_models = 0;
  cmd->add_option("--features", features, "Feature archive")->required();
  cmd->add_option("--labels", labels, "Labels (JSON)")->required();
  cmd->add_option("--models-out", models_out, "Output models (JSON)")->required();
  cmd->add_option("--models-in", models_in, "Warm start from these models (default: flat start)");
  cmd->add_option("--config", config, "Stage config file");
  cmd->add_option("--em-iters", em_iters, "EM rounds");
  cmd->add_option("--num-models", num_models, "Model count for a flat start (default: from labels)");
  cmd->callback([] {
    StageConfig cfg = ConfigOrDefault(config);
    if (em_iters >= 0) cfg.train.em_iters = em_iters;
    FeatureCorpus corpus = LoadCorpus(features);
    CorpusLabels lab = LoadLabels(labels);
    HmmTrainStats stats;
    HmmSet start = models_in.empty()
                       ? InitHmmsFromLabels(corpus, lab, num_models, cfg.train, &stats)
                       : LoadHmmSet(models_in);
    HmmSet trained = TrainHmms(corpus, lab, start, cfg.train, &stats);
    SaveHmmSet(trained, models_out);
    Report({{"models", trained.NumModels()},
            {"log_likelihood", stats.corpus_log_likelihood.empty()
                                   ? 0.0
                                   : stats.corpus_log_likelihood.back()},
            {"log_likelihood_trace", stats.corpus_log_likelihood},
            {"skipped_utterances", stats.skipped.size()},
            {"flagged_models", stats.flagged}});
  });
}

void AddDecodeCommand(CLI::App &app) {
  auto *cmd = app.add_subcommand("decode", "Free word decoding with a lexicon (and optional LM)");
  static std::string features, models, lexicon, lm, out;
  static DecodeConfig dcfg;
  cmd->add_option("--features", features, "Feature archive")->required();
  cmd->add_option("--models", models, "Models (JSON)")->required();
  cmd->add_option("--lexicon", lexicon, "Lexicon (JSON)")->required();
  cmd->add_option("--lm", lm, "ARPA language model");
  cmd->add_option("--lm-scale", dcfg.lm_scale, "Language model scale");
  cmd->add_option("--wip", dcfg.word_insertion_penalty, "Word insertion penalty (log domain)");
  cmd->add_option("--beam", dcfg.beam, "Beam in log units (0 = exact)");
  cmd->add_option("--out", out, "Output labels (JSON)")->required();
  cmd->callback([] {
    dcfg.use_lm = !lm.empty();
    try {
      dcfg.Validate();
    } catch (const Error &e) {
      throw UsageError(e.what());
    }
    FeatureCorpus corpus = LoadCorpus(features);
    HmmSet hmms = LoadHmmSet(models);
    Lexicon lex = LoadLexicon(lexicon);
    std::optional<NGramLM> model;
    if (!lm.empty()) model = ReadArpa(ReadFileToString(lm));
    CorpusDecodeResult res = DecodeCorpus(corpus, hmms, lex, model ? &*model : nullptr, dcfg);
    SaveLabels(res.labels, out);
    std::vector<std::string> failed;
    for (std::size_t u : res.failed) failed.push_back(corpus[u].utterance_id);
    Report({{"utterances", corpus.Size()},
            {"failed", failed.size()},
            {"failed_utterances", failed},
            {"total_log_score", res.total_log_score}});
    if (!failed.empty()) throw Error(std::to_string(failed.size()) + " utterances failed to decode");
  });
}

void AddLexiconCommand(CLI::App &app) {
  auto *lexicon = app.add_subcommand("lexicon", "Lexicon operations");
  lexicon->require_subcommand(1);
  auto *cmd = lexicon->add_subcommand("harvest", "Collect word patterns from labels");
  static std::string labels, out;
  static int64 min_count = 5;
  static int inventory = 0;
  cmd->add_option("--labels", labels, "Labels (JSON)")->required();
  cmd->add_option("--min-count", min_count, "Minimum count of a multi-subword pattern");
  cmd->add_option("--inventory", inventory, "Subword inventory size (default: from labels)");
  cmd->add_option("--out", out, "Output lexicon (JSON)")->required();
  cmd->callback([] {
    if (min_count < 1) throw UsageError("--min-count must be >= 1");
    CorpusLabels lab = LoadLabels(labels);
    Lexicon lex =
        HarvestLexicon(lab, min_count, std::max<int32>(inventory, SubwordInventoryBound(lab)));
    SaveLexicon(lex, out);
    Report({{"entries", lex.Size()}, {"multi_subword_entries", lex.NumMultiSubword()}});
  });
}

void AddLmCommand(CLI::App &app) {
  auto *lmcmd = app.add_subcommand("lm", "Language model operations");
  lmcmd->require_subcommand(1);
  auto *cmd = lmcmd->add_subcommand("estimate", "Witten-Bell N-gram over word pattern ids");
  static std::string labels, lexicon, out;
  static int order = 2;
  cmd->add_option("--labels", labels, "Labels (JSON)")->required();
  cmd->add_option("--order", order, "N-gram order");
  cmd->add_option("--lexicon", lexicon, "Give every lexicon entry probability mass");
  cmd->add_option("--out", out, "Output ARPA file")->required();
  cmd->callback([] {
    if (order < 1) throw UsageError("--order must be >= 1");
    CorpusLabels lab = LoadLabels(labels);
    std::vector<int32> vocab;
    if (!lexicon.empty()) {
      Lexicon lex = LoadLexicon(lexicon);
      for (int32 i = 0; i < lex.Size(); ++i) vocab.push_back(i);
    }
    NGramLM lm = EstimateNgram(lab, order, vocab);
    WriteFileAtomic(out, WriteArpa(lm));
    Report({{"order", lm.Order()}, {"vocabulary", lm.PredictedWords().size()}});
  });
}

void AddMineCommand(CLI::App &app) {
  auto *cmd = app.add_subcommand("mine", "Mine word candidates with a PAT-tree");
  static std::string labels, out;
  static MineConfig mcfg;
  cmd->add_option("--labels", labels, "Labels (JSON)")->required();
  cmd->add_option("--min-count", mcfg.min_count, "Minimum occurrence count");
  cmd->add_option("--min-entropy", mcfg.min_entropy, "Minimum branching entropy (bits)");
  cmd->add_option("--min-len", mcfg.min_len, "Shortest candidate (subwords)");
  cmd->add_option("--max-len", mcfg.max_len, "Longest candidate (subwords)");
  cmd->add_option("--out", out, "Output candidates (JSON)")->required();
  cmd->callback([] {
    try {
      mcfg.Validate();
    } catch (const Error &e) {
      throw UsageError(e.what());
    }
    PatTree tree(SubwordSequences(LoadLabels(labels)));
    auto cands = MineCandidates(tree, mcfg);
    WriteJson(out, CandidatesToJson(cands));
    Report({{"candidates", cands.size()}, {"tree_nodes", tree.NumNodes()}});
  });
}

void AddRunCommand(CLI::App &app) {
  auto *cmd = app.add_subcommand("run", "Initialization and stages I, II, III");
  static std::string features, config, workdir;
  static bool resume = false;
  static uint64_t seed = 0;
  cmd->add_option("--features", features, "Feature archive")->required();
  cmd->add_option("--config", config, "Stage config file");
  cmd->add_option("--workdir", workdir, "Output and checkpoint directory")->required();
  cmd->add_option("--seed", seed, "Random seed (overrides the config)");
  cmd->add_flag("--resume", resume, "Continue from the checkpoint in the workdir");
  cmd->callback([cmd] {
    StageConfig cfg = ConfigOrDefault(config);
    if (cmd->count("--seed")) {
      cfg.seed = seed;
      cfg.init.seed = seed;
    }
    FeatureCorpus corpus = LoadCorpus(features);
    PipelineState st = RunFull(corpus, cfg, workdir, resume);
    const LedgerEntry *last = st.ledger.empty() ? nullptr : &st.ledger.back();
    Report({{"iterations", st.ledger.size()},
            {"subword_models", st.hmms.NumModels()},
            {"lexicon_size", st.lexicon.Size()},
            {"utt_consistency", last ? last->utt_consistency : 0.0},
            {"word_consistency", last ? last->word_consistency : 0.0},
            {"ledger", workdir + "/ledger.csv"}});
  });
}

void AddSynthCommand(CLI::App &app) {
  auto *cmd = app.add_subcommand("synth", "Generate a synthetic corpus with ground truth");
  static std::string spec_path, out, truth, task_out, rel_out;
  static uint64_t seed = 0;
  static int n_queries = 20;
  cmd->add_option("--spec", spec_path, "Synthetic spec file (default spec if omitted)");
  cmd->add_option("--out", out, "Feature archive")->required();
  cmd->add_option("--truth", truth, "Ground truth (JSON)")->required();
  cmd->add_option("--seed", seed, "Random seed (overrides the spec)");
  cmd->add_option("--std-task", task_out, "Also write a term detection task (JSON)");
  cmd->add_option("--relevance", rel_out, "Also write its relevance judgments (TSV)");
  cmd->add_option("--queries", n_queries, "Number of term detection queries");
  cmd->callback([cmd] {
    SynthSpec spec;
    if (!spec_path.empty()) {
      try {
        spec = LoadSynthSpec(spec_path);
      } catch (const Error &e) {
        throw UsageError(std::string("spec ") + spec_path + ": " + e.what());
      }
    }
    if (cmd->count("--seed")) spec.seed = seed;
    SynthCorpus sc = GenerateSynthCorpus(spec);
    SaveCorpus(sc.corpus, out);
    SaveTruth(sc.truth, truth);
    if (!task_out.empty() || !rel_out.empty()) {
      StdTask task = BuildStdTask(sc.truth, n_queries);
      if (!task_out.empty()) WriteJson(task_out, StdTaskToJson(task, sc.truth.labels));
      if (!rel_out.empty()) {
        std::vector<std::string> ids;
        for (const auto &u : sc.truth.labels.utterances) ids.push_back(u.utterance_id);
        WriteFileAtomic(rel_out, RelevanceToTsv(task.relevance, ids));
      }
    }
    Report({{"utterances", sc.corpus.Size()}, {"frames", sc.corpus.TotalFrames()},
            {"units", spec.n_units}, {"words", spec.n_words}});
  });
}

void AddEvalCommand(CLI::App &app) {
  auto *eval = app.add_subcommand("eval", "Compare discovered patterns with ground truth");
  eval->require_subcommand(1);
  static std::string labels, truth, out;
  static bool central = false;
  for (const char *name : {"map", "accuracy"}) {
    auto *cmd = eval->add_subcommand(name, std::string(name) == "map"
                                               ? "Pattern to unit co-occurrence mapping"
                                               : "Frame purity and unit accuracy");
    cmd->add_option("--labels", labels, "Discovered labels (JSON)")->required();
    cmd->add_option("--truth", truth, "Ground truth (JSON)")->required();
    cmd->add_flag("--central", central, "Count central frames instead of every frame");
    if (std::string(name) == "map") cmd->add_option("--out", out, "Write the mapping (JSON)");
    const bool is_map = std::string(name) == "map";
    cmd->callback([is_map] {
      CorpusLabels lab = LoadLabels(labels);
      GroundTruth t = LoadTruth(truth);
      MappingMatrix m = MapPatterns(lab, t, central ? CoOccurrence::kCentralFrame
                                                    : CoOccurrence::kPerFrame);
      if (is_map) {
        if (!out.empty()) WriteJson(out, MappingToJson(m));
        nlohmann::json j = MappingToJson(m);
        j["patterns"] = m.counts.size();
        j["total"] = m.Total();
        Report(j);
        if (!g.json) {
          for (std::size_t p = 0; p < m.counts.size(); ++p) {
            std::cout << "pattern " << p << " -> unit " << m.assignment[p] << " :";
            for (int64 c : m.counts[p]) std::cout << " " << c;
            std::cout << "\n";
          }
        }
      } else {
        PatternAccuracy acc = EvaluatePatterns(lab, t, m);
        Report({{"frame_purity", acc.frame_purity}, {"unit_accuracy", acc.unit_accuracy}});
      }
    });
  }
}

void AddStdCommand(CLI::App &app) {
  auto *stdc = app.add_subcommand("std", "Query-by-example spoken term detection");
  stdc->require_subcommand(1);

  auto *table = stdc->add_subcommand("table", "Distances between all HMM pairs");
  static std::string models, table_out;
  table->add_option("--models", models, "Models (JSON)")->required();
  table->add_option("--out", table_out, "Distance table (binary)")->required();
  table->callback([] {
    ModelDistanceTable t = BuildDistanceTable(LoadHmmSet(models));
    SaveDistanceTable(t, table_out);
    Report({{"models", t.Size()}});
  });

  auto *search = stdc->add_subcommand("search", "Rank utterances for every query");
  static std::string table_in, labels, queries, ranks_out;
  search->add_option("--table", table_in, "Distance table")->required();
  search->add_option("--labels", labels, "Labels of the searched corpus (JSON)")->required();
  search->add_option("--queries", queries,
                     "Queries (JSON): model sequences, occurrence lists, or a task with examples")
      ->required();
  search->add_option("--out", ranks_out, "Rankings (JSON)")->required();
  search->callback([] {
    ModelDistanceTable t = LoadDistanceTable(table_in);
    CorpusLabels lab = LoadLabels(labels);
    nlohmann::json jq = ReadJson(queries);
    std::vector<Query> qs = jq.is_object() && jq.contains("queries")
                                ? QueriesFromLabels(StdTaskFromJson(jq, lab), lab)
                                : QueriesFromJson(jq);
    RankedList ranks = SearchAll(qs, lab, t);
    WriteJson(ranks_out, RanksToJson(ranks));
    Report({{"queries", ranks.size()}, {"utterances", lab.Size()}});
  });

  auto *fuse = stdc->add_subcommand("fuse", "Weighted fusion of two rankings");
  static std::string ds, du, fused_out;
  static double lambda = 0.5;
  fuse->add_option("--ds", ds, "Supervised rankings (JSON)")->required();
  fuse->add_option("--du", du, "Unsupervised rankings (JSON)")->required();
  fuse->add_option("--lambda", lambda, "Weight of the supervised distance")->required();
  fuse->add_option("--out", fused_out, "Fused rankings (JSON)")->required();
  fuse->callback([] {
    if (lambda < 0 || lambda > 1) throw UsageError("--lambda must be in [0, 1]");
    RankedList r = FuseAndRank(RanksFromJson(ReadJson(ds)), RanksFromJson(ReadJson(du)), lambda);
    WriteJson(fused_out, RanksToJson(r));
    Report({{"queries", r.size()}, {"lambda", lambda}});
  });

  auto *ev = stdc->add_subcommand("eval", "MAP, P@5 and P@10");
  static std::string ranks_in, rel, metrics_out;
  ev->add_option("--ranks", ranks_in, "Rankings (JSON)")->required();
  ev->add_option("--rel", rel, "Relevance judgments (TSV)")->required();
  ev->add_option("--out", metrics_out, "Also write the metrics (JSON)");
  ev->callback([] {
    StdMetrics m = Evaluate(RanksFromJson(ReadJson(ranks_in)), ParseRelevance(ReadFileToString(rel)));
    nlohmann::json j = MetricsToJson(m);
    if (!metrics_out.empty()) WriteJson(metrics_out, j);
    j["excluded_queries"] = m.excluded.size();
    Report(j);
  });
}

int Main(int argc, char **argv) {
  CLI::App app{"Unsupervised discovery of subword and word-like patterns, and term search"};
  app.name("lingstruct");
  app.require_subcommand(1);
  app.add_option("--workers", g.workers, "Worker threads (default: all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--json", g.json, "Machine-readable reports on standard output");
  app.parse_complete_callback([] {
    int n = g.workers > 0 ? g.workers : static_cast<int>(std::thread::hardware_concurrency());
    SetNumWorkers(std::max(1, n));
  });
  AddFeaturesCommand(app);
  AddInitCommand(app);
  AddTrainCommand(app);
  AddDecodeCommand(app);
  AddLexiconCommand(app);
  AddLmCommand(app);
  AddMineCommand(app);
  AddRunCommand(app);
  AddSynthCommand(app);
  AddEvalCommand(app);
  AddStdCommand(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace lingstruct

int main(int argc, char **argv) { return lingstruct::Main(argc, argv); }
