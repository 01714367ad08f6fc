// Copyright 2026 The Truecase Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the truecase binary end to end.

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <filesystem>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "truecase/hier_model.h"
#include "truecase/io.h"
#include "truecase/model_config.h"

namespace truecase {
namespace {

namespace fs = std::filesystem;

int RunCli(const std::string& args) {
  const std::string cmd = std::string(TRUECASE_CLI) + " " + args;
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           (std::string("truecase-cli-") + info->name() + "-" + std::to_string(getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  // Small untrained student-shaped model.
  std::string UntrainedModel() {
    ModelConfig c = ModelConfig::Student();
    c.num_buckets = 200;
    HierModel<float> m(c);
    m.InitUniform(3);
    const std::string path = Path("model.tcm");
    m.Save(path);
    return path;
  }

  fs::path dir_;
};

TEST_F(CliTest, PredictKeepsLineCountAndLowercasesBack) {
  const std::string model = UntrainedModel();
  WriteLines(Path("in.txt"), {"Hello World", "", "the NASA probe", "  spaced   out  "});
  ASSERT_EQ(RunCli("predict --model " + model + " --input " + Path("in.txt") + " --output " +
                Path("out.txt") + " 2>/dev/null"),
            0);
  const auto out = ReadLines(Path("out.txt"));
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(Sentence::Parse(out[0]).Lowercased().Join(), "hello world");
  EXPECT_EQ(out[1], "");
  EXPECT_EQ(Sentence::Parse(out[2]).Lowercased().Join(), "the nasa probe");
}

TEST_F(CliTest, InvalidUtf8PassesThrough) {
  const std::string model = UntrainedModel();
  const std::string bad = "caf\xC3 ok";
  WriteLines(Path("in.txt"), {"fine line", bad});
  ASSERT_EQ(RunCli("predict --model " + model + " --input " + Path("in.txt") + " --output " +
                Path("out.txt") + " 2>" + Path("err.txt")),
            0);
  const auto out = ReadLines(Path("out.txt"));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[1], bad);
  EXPECT_NE(ReadFileBytes(Path("err.txt")).find("UTF-8"), std::string::npos);
}

TEST_F(CliTest, TruncatedModelIsAFormatError) {
  const std::string model = UntrainedModel();
  std::string bytes = ReadFileBytes(model);
  WriteFileBytes(Path("cut.tcm"), bytes.substr(0, bytes.size() / 2));
  EXPECT_EQ(RunCli("inspect " + Path("cut.tcm") + " >/dev/null 2>" + Path("err.txt")), 2);
  EXPECT_NE(ReadFileBytes(Path("err.txt")).find("byte offset"), std::string::npos);
}

TEST_F(CliTest, UnknownFlagExitsTwo) {
  EXPECT_EQ(RunCli("predict --no-such-flag >/dev/null 2>&1"), 2);
  EXPECT_EQ(RunCli("frobnicate >/dev/null 2>&1"), 2);
}

TEST_F(CliTest, InspectReportsStudentHyperparameters) {
  HierModel<float> m(ModelConfig::Student());
  m.Save(Path("student.tcm"));
  ASSERT_EQ(RunCli("inspect " + Path("student.tcm") + " > " + Path("info.json") + " 2>/dev/null"),
            0);
  const auto j = nlohmann::json::parse(ReadFileBytes(Path("info.json")));
  EXPECT_EQ(j.at("preset"), "student");
  EXPECT_EQ(j.at("parameter_count").get<std::size_t>(), m.ParameterCount());
  const auto& h = j.at("hyperparameters");
  EXPECT_EQ(h.at("input embedding size"), 128);
  EXPECT_EQ(h.at("# of encoder cells"), 128);
  EXPECT_EQ(h.at("# of forward encoder layers"), 1);
  EXPECT_EQ(h.at("buckets of char n-grams"), 5000);
  EXPECT_EQ(h.at("beam size"), 2);
}

TEST_F(CliTest, NoisifyIsDeterministicPerSeed) {
  std::vector<std::string> lines;
  for (int i = 0; i < 50; ++i) lines.push_back("The Quick Brown Fox Visits Paris");
  WriteLines(Path("in.txt"), lines);
  for (const char* name : {"a.txt", "b.txt"}) {
    ASSERT_EQ(RunCli("noisify --seed 5 --rate 0.5 --input " + Path("in.txt") + " --output " +
                  Path(name) + " 2>/dev/null"),
              0);
  }
  ASSERT_EQ(RunCli("noisify --seed 6 --rate 0.5 --input " + Path("in.txt") + " --output " +
                Path("c.txt") + " 2>/dev/null"),
            0);
  EXPECT_EQ(ReadFileBytes(Path("a.txt")), ReadFileBytes(Path("b.txt")));
  EXPECT_NE(ReadFileBytes(Path("a.txt")), ReadFileBytes(Path("c.txt")));
  for (const auto& line : ReadLines(Path("a.txt"))) {
    EXPECT_EQ(Sentence::Parse(line).Lowercased().Join(), "the quick brown fox visits paris");
  }
}

// Peak RSS of `predict` run in a fresh child, in KiB.
long PredictPeakKib(const std::string& args) {
  const pid_t pid = fork();
  if (pid == 0) {
    const std::string cmd = std::string(TRUECASE_CLI) + " predict " + args;
    execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  int status = 0;
  rusage usage{};
  if (wait4(pid, &status, 0, &usage) != pid || !WIFEXITED(status) ||
      WEXITSTATUS(status) != 0) {
    return -1;
  }
  return usage.ru_maxrss;
}

TEST_F(CliTest, PredictStreamsInBoundedMemory) {
  WriteFileBytes(Path("lex.tsv"), "paris\tParis\t5\n");
  auto write = [&](const std::string& name, int lines) {
    std::ofstream out(Path(name));
    for (int i = 0; i < lines; ++i) out << "we flew to paris on day " << i << "\n";
  };
  write("small.txt", 10000);
  write("large.txt", 200000);
  const long small = PredictPeakKib("--model " + Path("lex.tsv") + " --input " +
                                    Path("small.txt") + " --output " + Path("a.txt") +
                                    " 2>/dev/null");
  const long large = PredictPeakKib("--model " + Path("lex.tsv") + " --input " +
                                    Path("large.txt") + " --output " + Path("b.txt") +
                                    " 2>/dev/null");
  ASSERT_GT(small, 0);
  ASSERT_GT(large, 0);
  // 20x the input; a buffered implementation would grow by several MiB.
  EXPECT_LT(large - small, 2048) << small << " KiB vs " << large << " KiB";
  EXPECT_EQ(ReadLines(Path("b.txt")).size(), 200000u);
  EXPECT_EQ(ReadLines(Path("b.txt"))[7], "we flew to Paris on day 7");
}

TEST_F(CliTest, EvalMinF1SetsExitCode) {
  WriteLines(Path("ref.txt"), {"John met Mary in Paris"});
  WriteLines(Path("pred.txt"), {"john met mary in paris"});
  EXPECT_EQ(RunCli("eval --pred " + Path("pred.txt") + " --ref " + Path("ref.txt") +
                " --min-f1 0.5 >/dev/null 2>&1"),
            1);
  EXPECT_EQ(RunCli("eval --pred " + Path("ref.txt") + " --ref " + Path("ref.txt") +
                " --min-f1 0.5 >/dev/null 2>&1"),
            0);
}

}  // namespace
}  // namespace truecase
