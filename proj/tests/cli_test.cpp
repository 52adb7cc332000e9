// Copyright 2026 The mqka Authors
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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args, const std::string& out_file = "/dev/null") {
  const std::string cmd = std::string(MQKA_CLI_PATH) + " " + args + " > " + out_file + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("mqka_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("run --topology circle --n 5 --key-len 16"), 0);
  EXPECT_EQ(run_cli("run --topology tree --n 4 --key-len 8"), 0);
  EXPECT_EQ(run_cli("attack --topology circle --n 6 --colluders 1,4 --key-len 8"), 0);
  EXPECT_EQ(run_cli("attack --topology circle --n 6 --colluders 0,1 --key-len 8"), 3);
  EXPECT_EQ(run_cli("attack --topology circle --n 6 --colluders 0,1 --key-len 8 --decoys 16 --force"), 2);
  EXPECT_EQ(run_cli("feasibility --n 6 --colluders 0,1"), 0);
  EXPECT_EQ(run_cli("run --n 2"), 4);
  EXPECT_EQ(run_cli("run --topology star"), 4);
  EXPECT_EQ(run_cli("run --bogus"), 4);
  EXPECT_EQ(run_cli("attack --topology circle --n 6 --colluders 1,4 --key-len 8 --expect abc"), 4);
  EXPECT_EQ(run_cli("run --config /nonexistent.json"), 4);
}

TEST_F(Cli, ExpectedKeyIsReached) {
  auto out = dir_ / "attack.json";
  ASSERT_EQ(run_cli("attack --topology circle --n 8 --colluders 0,4 --key-len 16 --expect beef", out), 0);
  auto text = slurp(out);
  EXPECT_NE(text.find("\"verdict\": \"controlled\""), std::string::npos);
  EXPECT_NE(text.find("\"beef\""), std::string::npos);
}

TEST_F(Cli, FlagsOverrideConfigFile) {
  auto cfg = dir_ / "cfg.json";
  std::ofstream(cfg) << R"({"topology": "circle", "n": 4, "key_len": 8, "seed": 1})";
  auto a = dir_ / "a.json";
  auto b = dir_ / "b.json";
  ASSERT_EQ(run_cli("run --config " + cfg.string(), a), 0);
  ASSERT_EQ(run_cli("run --config " + cfg.string() + " --n 7", b), 0);
  EXPECT_NE(slurp(a).find("\"n\": 4"), std::string::npos);
  EXPECT_NE(slurp(b).find("\"n\": 7"), std::string::npos);
}

TEST_F(Cli, ReportIsByteIdenticalAcrossRuns) {
  auto a = dir_ / "r1.json";
  auto b = dir_ / "r2.json";
  ASSERT_EQ(run_cli("report --seed 9 --trials 4 --decoys 8 --out " + a.string()), 0);
  ASSERT_EQ(run_cli("report --seed 9 --trials 4 --decoys 8 --out " + b.string()), 0);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
  auto csv = dir_ / "r.csv";
  ASSERT_EQ(run_cli("report --format csv --trials 4", csv), 0);
  EXPECT_EQ(slurp(csv).rfind("archetype,N,attack,verdict,detections,trials\n", 0), 0u);
}

}  // namespace
