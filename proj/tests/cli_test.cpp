//  Copyright 2026 The fixtrans Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

// Golden exit codes and report stability for the command-line tool.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "fixtrans/scenario.hpp"

namespace {

namespace fs = std::filesystem;
namespace sc = fixtrans::scenario;
using sc::json;

const fs::path kScenarios = FIXTRANS_SCENARIO_DIR;

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(FIXTRANS_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (auto n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(fs::temp_directory_path() / name) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path_ / name) << text; }

 private:
  fs::path path_;
};

const json& check_named(const json& report, const std::string& name) {
  for (const auto& c : report.at("checks"))
    if (c.at("name") == name) return c;
  throw std::runtime_error("no check " + name);
}

TEST(Cli, LiarScenarioPasses) {
  auto r = run_cli(quoted(kScenarios / "suite" / "01_liar.json"));
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_EQ(j.at("kind"), "truth");
  EXPECT_EQ(check_named(j, "classify").at("data").at("classes").at("L"), "ungrounded");
  EXPECT_TRUE(check_named(j, "classical_search").at("data").at("result").is_null());
}

TEST(Cli, GreedyInfeasibleExitsOne) {
  auto r = run_cli(quoted(kScenarios / "negative" / "greedy_infeasible.json"));
  ASSERT_EQ(r.code, 1);
  auto c = check_named(json::parse(r.out), "greedy");
  EXPECT_EQ(c.at("status"), "infeasible");
  EXPECT_EQ(c.at("data").at("status"), "infeasible");
}

TEST(Cli, MalformedFileExitsTwo) {
  EXPECT_EQ(run_cli(quoted(kScenarios / "negative" / "malformed.json")).code, 2);
  EXPECT_EQ(run_cli(quoted(kScenarios / "negative" / "no_such_file.json")).code, 2);
}

TEST(Cli, MalformedFileReportsLocation) {
  auto text = sc::read_file(kScenarios / "negative" / "malformed.json");
  try {
    sc::parse_text(text, "m.json");
    FAIL() << "expected an input error";
  } catch (const sc::InputError& e) {
    EXPECT_EQ(e.where(), "m.json:5:1");
  }
}

TEST(Cli, RawFramesNeedTheFlag) {
  const auto path = quoted(kScenarios / "negative" / "raw_frame.json");
  EXPECT_EQ(run_cli(path).code, 2);
  EXPECT_EQ(run_cli("--raw-relation " + path).code, 0);
}

TEST(Cli, ValidationErrorsNameTheField) {
  const json bad = {{"kind", "lattice"}, {"universe", {"a"}}, {"operator", {{"rules", json::array()}}}, {"typo", 1}};
  try {
    sc::run_document(bad, "x", {});
    FAIL() << "expected an input error";
  } catch (const sc::InputError& e) {
    EXPECT_NE(std::string(e.what()).find("typo"), std::string::npos);
  }
  const json unknown_item = {{"kind", "lattice"},
                             {"universe", {"a"}},
                             {"operator", {{"rules", {{{"then", {"zz"}}}}}}}};
  try {
    sc::run_document(unknown_item, "x", {});
    FAIL() << "expected an input error";
  } catch (const sc::InputError& e) {
    EXPECT_EQ(e.where(), "/operator/rules/0/then");
  }
  EXPECT_THROW(sc::run_document({{"kind", "nope"}}, "x", {}), sc::InputError);
  EXPECT_THROW(sc::run_document({{"kind", "truth"}, {"sentences", {{"L", "not trans(L"}}}}, "x", {}), sc::InputError);
}

TEST(Cli, BundledSuitePasses) {
  auto r = run_cli(quoted(kScenarios / "suite"));
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j.at("status"), "pass");
  EXPECT_TRUE(j.at("failures").empty());
}

TEST(Cli, EmptyDirectoryExitsTwo) {
  TempDir d("fixtrans_cli_empty");
  EXPECT_EQ(run_cli(quoted(d.path())).code, 2);
}

TEST(Cli, SuiteWithOneFailureNamesIt) {
  TempDir d("fixtrans_cli_one_failure");
  fs::copy_file(kScenarios / "suite" / "10_lattice_chain.json", d.path() / "a.json");
  fs::copy_file(kScenarios / "negative" / "wrong_expectation.json", d.path() / "b.json");
  auto r = run_cli(quoted(d.path()));
  ASSERT_EQ(r.code, 1);
  auto j = json::parse(r.out);
  ASSERT_EQ(j.at("failures").size(), 1u);
  EXPECT_EQ(j.at("failures")[0], "wrong-expectation: lfp (fail)");
}

TEST(Cli, SuiteOrderFollowsFilenames) {
  TempDir d("fixtrans_cli_order");
  fs::copy_file(kScenarios / "suite" / "01_liar.json", d.path() / "z.json");
  fs::copy_file(kScenarios / "suite" / "10_lattice_chain.json", d.path() / "m.json");
  fs::copy_file(kScenarios / "suite" / "30_gl_lob.json", d.path() / "a.json");
  d.write("notes.txt", "ignored");
  auto s = sc::run_suite(d.path());
  ASSERT_EQ(s.reports.size(), 3u);
  EXPECT_EQ(s.reports[0].id, "lob-schema");
  EXPECT_EQ(s.reports[1].id, "three-stage-chain");
  EXPECT_EQ(s.reports[2].id, "transparency-liar");
}

TEST(Cli, RepeatedRunsAreIdenticalWithoutTiming) {
  const auto path = quoted(kScenarios / "suite");
  auto a = run_cli(path + " --seed 7");
  auto b = run_cli(path + " --seed 7");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(sc::strip_timing(json::parse(a.out)).dump(), sc::strip_timing(json::parse(b.out)).dump());
  EXPECT_EQ(json::parse(a.out).at("scenarios")[0].at("seed"), 7);
}

TEST(Cli, FlagsOverrideScenario) {
  auto r = run_cli("--fuel 100 " + quoted(kScenarios / "suite" / "12_lattice_fuel.json"));
  EXPECT_EQ(r.code, 1);  // expectation of exhaustion no longer holds
  EXPECT_EQ(check_named(json::parse(r.out), "lfp").at("data").at("status"), "converged");
  EXPECT_EQ(run_cli("--fuel 0 " + quoted(kScenarios / "suite" / "01_liar.json")).code, 2);
  EXPECT_EQ(run_cli("--format xml " + quoted(kScenarios / "suite" / "01_liar.json")).code, 2);
}

TEST(Cli, TextFormat) {
  auto r = run_cli("--format text " + quoted(kScenarios / "suite" / "01_liar.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("transparency-liar (truth, seed 20260101): PASS"), std::string::npos);
  EXPECT_NE(r.out.find("pass  classical_search"), std::string::npos);
}

TEST(Cli, StripTimingIsRecursive) {
  json j = {{"timing_ms", 1.0}, {"a", {{"timing_ms", 2.0}, {"b", 3}}}, {"c", {{{"timing_ms", 4.0}}}}};
  EXPECT_EQ(sc::strip_timing(j), json({{"a", {{"b", 3}}}, {"c", {json::object()}}}));
}

}  // namespace
