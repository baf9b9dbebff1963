// tests/cli-test.cc

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

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "base/io-util.h"
#include "test-util.h"

namespace lingstruct {
namespace {

const std::string kCli = LINGSTRUCT_CLI;

int Cli(const std::string &args, const std::string &out = "/dev/null") {
  return testing::RunCommand(kCli + " " + args + " > " + out + " 2>/dev/null");
}

TEST_CASE("help and usage errors") {
  CHECK(Cli("--help") == 0);
  CHECK(Cli("run --help") == 0);
  CHECK(Cli("std fuse --help") == 0);
  CHECK(Cli("") == 2);
  CHECK(Cli("frobnicate") == 2);
  CHECK(Cli("run --features x.ark") == 2);
  CHECK(Cli("--workers -1 run --features x --workdir y") == 2);
  std::string dir = testing::ScratchDir("cli-usage");
  WriteFileAtomic(dir + "/bad.conf", "I_a = ten\n");
  CHECK(Cli("run --features " + dir + "/none.ark --config " + dir + "/bad.conf --workdir " +
            dir + "/w") == 2);
  WriteFileAtomic(dir + "/bad.spec", "n_units = 1\n");
  CHECK(Cli("synth --spec " + dir + "/bad.spec --out " + dir + "/a --truth " + dir + "/t") == 2);
  CHECK(Cli("run --features " + dir + "/missing.ark --workdir " + dir + "/w") == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("synthesize, run, evaluate and search") {
  std::string d = testing::ScratchDir("cli-chain");
  WriteFileAtomic(d + "/spec", "n_utterances = 40\n");
  WriteFileAtomic(d + "/conf", "I_a = 2\nI_l = 1\nI_x = 1\nscatter_threshold = 0.2\n");
  REQUIRE(Cli("synth --spec " + d + "/spec --out " + d + "/feats.ark --truth " + d +
              "/truth.json --std-task " + d + "/task.json --relevance " + d + "/rel.tsv --queries 5") == 0);
  REQUIRE(Cli("--workers 2 run --features " + d + "/feats.ark --config " + d + "/conf --workdir " +
              d + "/w") == 0);
  for (const char *f : {"ledger.csv", "labels.json", "lexicon.json", "models.json", "lm.arpa",
                        "checkpoint.json"})
    CHECK(std::filesystem::exists(d + "/w/" + f));
  std::string ledger = ReadFileToString(d + "/w/ledger.csv");
  CHECK(ledger.rfind("iteration,stage,", 0) == 0);
  CHECK(std::count(ledger.begin(), ledger.end(), '\n') <= 5);

  REQUIRE(Cli("--json eval accuracy --labels " + d + "/w/labels.json --truth " + d + "/truth.json",
              d + "/acc.json") == 0);
  nlohmann::json acc = nlohmann::json::parse(ReadFileToString(d + "/acc.json"));
  CHECK(acc.at("frame_purity").get<double>() >= 0);
  CHECK(acc.at("frame_purity").get<double>() <= 1);
  CHECK(Cli("eval map --labels " + d + "/w/labels.json --truth " + d + "/truth.json --out " + d +
            "/map.json") == 0);
  CHECK(std::filesystem::exists(d + "/map.json"));

  REQUIRE(Cli("std table --models " + d + "/w/models.json --out " + d + "/table.bin") == 0);
  REQUIRE(Cli("std search --table " + d + "/table.bin --labels " + d + "/w/labels.json --queries " +
              d + "/task.json --out " + d + "/du.json") == 0);
  REQUIRE(Cli("std fuse --ds " + d + "/du.json --du " + d + "/du.json --lambda 0 --out " + d +
              "/fused.json") == 0);
  CHECK(ReadFileToString(d + "/fused.json") == ReadFileToString(d + "/du.json"));
  CHECK(Cli("std fuse --ds " + d + "/du.json --du " + d + "/du.json --lambda 2 --out " + d +
            "/x.json") == 2);
  REQUIRE(Cli("--json std eval --ranks " + d + "/du.json --rel " + d + "/rel.tsv", d + "/m.json") == 0);
  nlohmann::json m = nlohmann::json::parse(ReadFileToString(d + "/m.json"));
  CHECK(m.at("map").get<double>() > 0);

  // Modules are also reachable one at a time.
  CHECK(Cli("init --features " + d + "/feats.ark --out " + d + "/init.json --config " + d +
            "/conf --lexicon-out " + d + "/lex0.json") == 0);
  CHECK(Cli("train --features " + d + "/feats.ark --labels " + d + "/init.json --models-out " + d +
            "/m0.json --em-iters 2") == 0);
  CHECK(Cli("lexicon harvest --labels " + d + "/init.json --out " + d + "/lex.json") == 0);
  CHECK(Cli("lm estimate --labels " + d + "/init.json --lexicon " + d + "/lex.json --out " + d +
            "/lm.arpa") == 0);
  CHECK(Cli("decode --features " + d + "/feats.ark --models " + d + "/m0.json --lexicon " + d +
            "/lex.json --lm " + d + "/lm.arpa --out " + d + "/dec.json") == 0);
  CHECK(Cli("mine --labels " + d + "/dec.json --out " + d + "/cands.json") == 0);
  std::filesystem::remove_all(d);
}

}  // namespace
}  // namespace lingstruct
