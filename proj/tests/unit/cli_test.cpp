// Copyright 2026 The stackdet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<json> JsonLines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("stackdet_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path P(const std::string& name) const { return dir_ / name; }

  void Write(const std::string& name, const std::string& text) const {
    std::ofstream(P(name), std::ios::binary) << text;
  }

  // Runs the CLI with `args` (already shell-safe), stdin from `input`.
  Result Run(const std::string& args, const std::string& input = "") const {
    Write("stdin.txt", input);
    const std::string cmd = std::string("'") + STACKDET_CLI + "' " + args +
                            " < '" + P("stdin.txt").string() + "' > '" +
                            P("stdout.txt").string() + "' 2> '" +
                            P("stderr.txt").string() + "'";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = Slurp(P("stdout.txt"));
    r.err = Slurp(P("stderr.txt"));
    return r;
  }

  static std::string Data(const std::string& name) {
    return std::string(STACKDET_DATA_DIR) + "/" + name;
  }
  static std::string Adapter(const std::string& name) {
    return std::string("'python3 ") + STACKDET_ADAPTER_DIR + "/" + name + "'";
  }

  fs::path dir_;
};

const char* kToy =
    "{\"id\": \"a\", \"text\": \"Red apple tree. Red apple pie. Red sky.\", "
    "\"label\": 0}\n"
    "{\"id\": \"b\", \"text\": \"Blue stone wall. Blue stone path. Blue sea.\", "
    "\"label\": 1}\n"
    "{\"id\": \"c\", \"text\": \"Red apple jam. Red apple cake. Red dawn.\", "
    "\"label\": 0}\n"
    "{\"id\": \"d\", \"text\": \"Blue stone gate. Blue stone road. Blue bay.\", "
    "\"label\": 1}\n";

std::string ToyCorpus(int copies) {
  std::string out;
  int next = 0;
  for (int c = 0; c < copies; ++c) {
    std::istringstream in(kToy);
    std::string line;
    while (std::getline(in, line)) {
      auto j = json::parse(line);
      j["id"] = "t" + std::to_string(next++);
      out += j.dump() + "\n";
    }
  }
  return out;
}

}  // namespace

TEST_F(Cli, HelpAndUnknownVerb) {
  EXPECT_EQ(Run("--help").code, 0);
  EXPECT_EQ(Run("frobnicate").code, 2);
}

TEST_F(Cli, MissingCorpusIsAConfigError) {
  const auto r = Run("train --out " + P("m.sdm").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--corpus"), std::string::npos) << r.err;
}

TEST_F(Cli, OutOfRangeTauIsAConfigError) {
  const auto r = Run("detect --adapter " + Adapter("half.py") + " --tau 2");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("tau"), std::string::npos) << r.err;
}

TEST_F(Cli, EmptyInputGivesEmptyOutput) {
  const auto r = Run("detect --adapter " + Adapter("half.py"));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST_F(Cli, DetectKeepsOrderAndRespectsTheBudget) {
  const auto r = Run("detect --k 1 --tau 0.34 --adapter " +
                         Adapter("keyword.py"),
                     "{\"id\": \"x\", \"text\": \"Robot one. Plain two. Robot three.\"}\n"
                     "{\"id\": \"y\", \"text\": \"Plain.\"}\n"
                     "{\"id\": \"z\", \"text\": \"Robots rule. Robots win.\"}\n");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = JsonLines(r.out);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0]["id"], "x");
  EXPECT_EQ(lines[1]["id"], "y");
  EXPECT_EQ(lines[2]["id"], "z");
  EXPECT_EQ(lines[0]["n_filtered"], 1);
  EXPECT_DOUBLE_EQ(lines[0]["score"].get<double>(), 0.9);
  for (const auto& l : lines) {
    const auto groups = l["n_groups"].get<std::size_t>();
    EXPECT_LE(l["n_filtered"].get<std::size_t>(),
              static_cast<std::size_t>(std::floor(0.34 * groups + 1e-9)));
  }
}

TEST_F(Cli, BadInputIsADataError) {
  EXPECT_EQ(Run("detect --adapter " + Adapter("half.py"), "{oops\n").code, 3);
  EXPECT_EQ(Run("detect --adapter " + Adapter("half.py"),
                "{\"id\": \"e\", \"text\": \"\"}\n")
                .code,
            3);
}

TEST_F(Cli, AdapterFailureExitsFive) {
  const auto r = Run("detect --adapter " + Adapter("garbage.py"),
                     "{\"id\": \"x\", \"text\": \"One. Two.\"}\n");
  EXPECT_EQ(r.code, 5);
}

TEST_F(Cli, CorruptModelIsADataError) {
  Write("bad.sdm", "SDTM garbage");
  const auto r = Run("detect --model " + P("bad.sdm").string(),
                     "{\"id\": \"x\", \"text\": \"One.\"}\n");
  EXPECT_EQ(r.code, 3);
}

TEST_F(Cli, TrainDetectEvalOnSeparableToy) {
  Write("toy.jsonl", ToyCorpus(5));
  const auto train =
      Run("train --corpus " + P("toy.jsonl").string() + " --epochs 30 --k 1 "
          "--buckets 1024 --out " + P("m.sdm").string() + " --trace " +
          P("trace.jsonl").string());
  ASSERT_EQ(train.code, 0) << train.err;
  const auto report = json::parse(train.out);
  EXPECT_EQ(report["auroc"], 1.0);
  EXPECT_EQ(JsonLines(Slurp(P("trace.jsonl"))).size(), 30u);

  const auto eval = Run("eval --k 1 --model " + P("m.sdm").string() +
                        " --corpus " + P("toy.jsonl").string() +
                        " --corpus-id toy");
  ASSERT_EQ(eval.code, 0) << eval.err;
  const auto j = json::parse(eval.out);
  EXPECT_EQ(j["auroc"], 1.0);
  EXPECT_EQ(j["corpus_id"], "toy");
  EXPECT_EQ(j["n_pos"], 10);
}

TEST_F(Cli, TauZeroTrainingEqualsPlainTraining) {
  Write("toy.jsonl", ToyCorpus(5));
  const std::string common = "train --corpus " + P("toy.jsonl").string() +
                             " --epochs 4 --buckets 4096 --tau 0 ";
  ASSERT_EQ(Run(common + "--out " + P("em.sdm").string()).code, 0);
  ASSERT_EQ(Run(common + "--plain --out " + P("plain.sdm").string()).code, 0);
  EXPECT_EQ(Slurp(P("em.sdm")), Slurp(P("plain.sdm")));
}

TEST_F(Cli, LmTrainingWritesALoadableModel) {
  Write("toy.jsonl", ToyCorpus(3));
  ASSERT_EQ(Run("train --detector lm --corpus " + P("toy.jsonl").string() +
                " --out " + P("lm.sdm").string())
                .code,
            0);
  const auto r = Run("detect --model " + P("lm.sdm").string(),
                     "{\"id\": \"q\", \"text\": \"Blue stone.\"}\n");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_GT(JsonLines(r.out)[0]["score"].get<double>(), 0.5);
}

TEST_F(Cli, SimulateWritesOneRowPerPoint) {
  const auto r = Run("simulate --delta 0.3,0.6 --n 5,10 --trials 200 "
                     "--bootstrap 50 --summary " + P("s.json").string());
  ASSERT_EQ(r.code, 0) << r.err;
  std::size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  EXPECT_EQ(lines, 5u);
  EXPECT_EQ(json::parse(Slurp(P("s.json"))).size(), 2u);
}

TEST_F(Cli, SimulateRejectsUnsupportedCombination) {
  EXPECT_EQ(Run("simulate --rho 0.2 --trials 200").code, 2);
  EXPECT_EQ(Run("simulate --alpha 0 --alpha-s 0.1 --trials 200").code, 2);
}

TEST_F(Cli, OverlapOfACorpusWithItself) {
  const auto corpus = Data("synthetic_corpus.jsonl");
  const auto r = Run("overlap --human " + corpus + " --machine " + corpus);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["pairs"][0]["consistent_proportion"], 1.0);
}

TEST_F(Cli, ConfigFileSuppliesOptions) {
  Write("cfg.toml", "tau = 0.0\n[detect]\nadapter = \"python3 " +
                        std::string(STACKDET_ADAPTER_DIR) + "/keyword.py\"\n");
  const auto r = Run("--config " + P("cfg.toml").string() + " detect --k 1",
                     "{\"id\": \"x\", \"text\": \"Robot one. Plain two. Robot three.\"}\n");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(JsonLines(r.out)[0]["n_filtered"], 0);
}

TEST_F(Cli, BenchReportsCallsAndRatio) {
  const auto r = Run("bench --tau 0 --rounds 3 --passes 1 --adapter " +
                         Adapter("half.py"),
                     "");
  // No corpus given.
  EXPECT_EQ(r.code, 2);
  Write("c.jsonl", ToyCorpus(2));
  const auto ok = Run("bench --k 1 --rounds 3 --passes 1 --adapter " +
                      Adapter("keyword.py") + " --corpus " +
                      P("c.jsonl").string());
  ASSERT_EQ(ok.code, 0) << ok.err;
  const auto j = json::parse(ok.out);
  EXPECT_EQ(j["documents"], 8);
  EXPECT_GT(j["ratio"].get<double>(), 0.0);
}

TEST_F(Cli, SynthIsDeterministic) {
  ASSERT_EQ(Run("synth --docs 5 --seed 3 --out " + P("a.jsonl").string()).code,
            0);
  ASSERT_EQ(Run("synth --docs 5 --seed 3 --out " + P("b.jsonl").string()).code,
            0);
  EXPECT_EQ(Slurp(P("a.jsonl")), Slurp(P("b.jsonl")));
  EXPECT_EQ(JsonLines(Slurp(P("a.jsonl"))).size(), 10u);
}
