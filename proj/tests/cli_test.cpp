// Copyright 2026 The Gratestack Authors
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


#include "gratestack/cli.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "gratestack/grating.hpp"
#include "gratestack/presets.hpp"
#include "gratestack/recipe_io.hpp"
#include "gratestack/units.hpp"
#include "gratestack/tomography.hpp"

namespace gratestack::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gratestack_cli_" +
            std::string(::testing::UnitTest::GetInstance()
                            ->current_test_info()
                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run_args(const std::vector<std::string>& args, std::string* stdout_text = nullptr) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(parse_args(args), out, err);
    if (stdout_text) *stdout_text = out.str();
    return code;
  }

  // Runs the installed binary and returns its exit status.
  int run_binary(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" GRATESTACK_CLI_PATH "\" " + args +
                            " > \"" + (dir_ / "stdout.txt").string() +
                            "\" 2> \"" + (dir_ / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
};

TEST(ParseArgs, TomographyExample) {
  const RunConfig c = parse_args({"tomography", "--recipe", "cnot.grs", "--out", "results/"});
  EXPECT_EQ(c.command, Command::kTomography);
  EXPECT_EQ(c.recipe_path, fs::path("cnot.grs"));
  EXPECT_EQ(c.output_dir, fs::path("results/"));
}

TEST(ParseArgs, SweepExample) {
  const RunConfig c = parse_args({"sweep", "--param", "thickness", "--start", "0.5mm",
                                  "--stop", "3mm", "--steps", "100"});
  ASSERT_TRUE(c.sweep.has_value());
  EXPECT_EQ(c.sweep->parameter, "thickness");
  EXPECT_DOUBLE_EQ(c.sweep->start, 0.5e-3);
  EXPECT_DOUBLE_EQ(c.sweep->stop, 3e-3);
  EXPECT_EQ(c.sweep->steps, 100u);
}

TEST(ParseArgs, UnitsAndOverrides) {
  const RunConfig c = parse_args({"simulate", "--preset", "paper-cnot", "--wavelength",
                                  "633nm", "--theta-s", "5deg", "--delta-n", "2e-4",
                                  "--convention", "ideal"});
  EXPECT_DOUBLE_EQ(*c.overrides.wavelength, 633e-9);
  EXPECT_DOUBLE_EQ(*c.overrides.theta_s, from_degrees(5.0));
  EXPECT_DOUBLE_EQ(*c.overrides.delta_n, 2e-4);
  EXPECT_EQ(*c.overrides.convention, PhaseConvention::kIdeal);
  EXPECT_TRUE(c.overrides.changes_geometry());
}

ErrorCode parse_error(const std::vector<std::string>& args) {
  try {
    parse_args(args);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted";
  return ErrorCode::kInvalidArgument;
}

TEST(ParseArgs, UsageErrors) {
  EXPECT_EQ(parse_error({}), ErrorCode::kUsageError);
  EXPECT_EQ(parse_error({"frobnicate"}), ErrorCode::kUsageError);
  EXPECT_EQ(parse_error({"sweep", "--start", "1", "--stop", "2", "--steps", "5"}),
            ErrorCode::kUsageError);
  EXPECT_EQ(parse_error({"sweep", "--param", "thickness", "--start", "1mm",
                         "--stop", "2mm", "--steps", "1"}),
            ErrorCode::kUsageError);
  EXPECT_EQ(parse_error({"sweep", "--param", "color", "--start", "1", "--stop",
                         "2", "--steps", "5"}),
            ErrorCode::kUnknownParameter);
  EXPECT_EQ(parse_error({"verify", "--preset", "nope"}), ErrorCode::kUsageError);
  EXPECT_EQ(parse_error({"verify", "--preset", "paper-cnot", "--convention", "odd"}),
            ErrorCode::kUsageError);
  EXPECT_EQ(parse_error({"synthesize", "--target", "cnot", "--thickness", "3 furlongs"}),
            ErrorCode::kUsageError);
  EXPECT_EQ(parse_error({"synthesize"}), ErrorCode::kUsageError);
}

TEST(ParseArgs, UsageErrorNamesTheFlag) {
  try {
    parse_args({"synthesize", "--target", "cnot", "--wavelength", "blue"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("--wavelength"), std::string::npos);
  }
}

TEST(ParseArgs, HelpAndOutputPrecedence) {
  const RunConfig plain = parse_args({"help"});
  EXPECT_EQ(plain.command, Command::kHelp);
  EXPECT_NE(plain.help_text.find("calibrate"), std::string::npos);
  const RunConfig h = parse_args({"--help"});
  EXPECT_EQ(h.command, Command::kHelp);
  EXPECT_NE(h.help_text.find("synthesize"), std::string::npos);
  EXPECT_EQ(parse_args({"verify", "--preset", "paper-cnot"}, "env").output_dir,
            fs::path("env"));
  EXPECT_EQ(parse_args({"verify", "--preset", "paper-cnot", "--out", "flag"}, "env")
                .output_dir,
            fs::path("flag"));
  EXPECT_EQ(parse_args({"verify", "--preset", "paper-cnot"}).output_dir, fs::path("."));
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(exit_code_for(ErrorCode::kParseError), kExitParse);
  EXPECT_EQ(exit_code_for(ErrorCode::kIoFailure), kExitIo);
  EXPECT_EQ(exit_code_for(ErrorCode::kNonconvergent), kExitThreshold);
  EXPECT_EQ(exit_code_for(ErrorCode::kUsageError), kExitUsage);
  EXPECT_EQ(exit_code_for(ErrorCode::kUnknownParameter), kExitUsage);
}

TEST_F(CliTest, SynthesizeCounts) {
  std::string text;
  ASSERT_EQ(run_args({"synthesize", "--target", "cnot", "--out", dir_.string()}, &text),
            kExitOk);
  EXPECT_NE(text.find("4 gratings, total thickness 6.56 mm"), std::string::npos);
  EXPECT_EQ(read_recipe_file(dir_ / "cnot.grs").gratings.size(), 4u);

  ASSERT_EQ(run_args({"synthesize", "--target", "identity", "--out", dir_.string()}, &text),
            kExitOk);
  EXPECT_NE(text.find("0 gratings"), std::string::npos);
  ASSERT_EQ(run_args({"synthesize", "--target", "x", "--out", dir_.string()}, &text),
            kExitOk);
  EXPECT_NE(text.find("4 gratings"), std::string::npos);
}

TEST_F(CliTest, SynthesizeThenVerify) {
  ASSERT_EQ(run_args({"synthesize", "--target", "swap", "--out", dir_.string()}), kExitOk);
  std::string text;
  EXPECT_EQ(run_args({"verify", "--recipe", (dir_ / "swap.grs").string(), "--out",
                      dir_.string()},
                     &text),
            kExitOk);
  EXPECT_NE(text.find("PASS"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "verify.txt"));
}

TEST_F(CliTest, SynthesizePermutationFromCsv) {
  std::ofstream(dir_ / "perm.csv") << "0,1,0\n1,0,0\n0,0,1\n";
  std::string text;
  ASSERT_EQ(run_args({"synthesize", "--target", (dir_ / "perm.csv").string(), "--modes",
                      "3", "--out", dir_.string()},
                     &text),
            kExitOk);
  EXPECT_NE(text.find("4 gratings"), std::string::npos);
}

TEST_F(CliTest, TomographyPresetMatchesMeasured) {
  std::string text;
  ASSERT_EQ(run_args({"tomography", "--preset", "paper-cnot", "--out", dir_.string()},
                     &text),
            kExitOk);
  const TomographyTable t = table_from_csv(read_text_file(dir_ / "tomography.csv"));
  const TomographyTable paper = presets::paper_table();
  EXPECT_LT((t.intensities - paper.intensities).cwiseAbs().maxCoeff(), 0.05);
  EXPECT_TRUE(fs::exists(dir_ / "tomography_metrics.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "tomography.txt"));
}

TEST_F(CliTest, TomographyThreshold) {
  EXPECT_EQ(run_args({"tomography", "--preset", "paper-cnot", "--min-fidelity", "0.99",
                      "--out", dir_.string()}),
            kExitThreshold);
}

TEST_F(CliTest, Simulate) {
  std::string text;
  ASSERT_EQ(run_args({"simulate", "--preset", "paper-cnot", "--input", "10", "--out",
                      dir_.string()},
                     &text),
            kExitOk);
  EXPECT_TRUE(fs::exists(dir_ / "operator.csv"));
  const std::string state = read_text_file(dir_ / "state.csv");
  EXPECT_EQ(state.rfind("mode,intensity\n", 0), 0u);
}

TEST_F(CliTest, CalibrateIdentityIsNonconvergent) {
  std::ofstream(dir_ / "identity.csv")
      << "input,00,01,10,11\n00,1,0,0,0\n01,0,1,0,0\n10,0,0,1,0\n11,0,0,0,1\n";
  std::string text;
  EXPECT_EQ(run_args({"calibrate", "--preset", "paper-cnot", "--measured",
                      (dir_ / "identity.csv").string(), "--out", dir_.string()},
                     &text),
            kExitThreshold);
  EXPECT_NE(text.find("nonconvergent"), std::string::npos);
  EXPECT_EQ(run_args({"calibrate", "--preset", "paper-cnot", "--out", dir_.string()}, &text),
            kExitOk);
  EXPECT_NE(text.find("converged"), std::string::npos);
}

TEST_F(CliTest, SweepDetuningMatchesLibraryFwhm) {
  std::string text;
  ASSERT_EQ(run_args({"sweep", "--param", "detuning_angle", "--start", "-3mrad", "--stop",
                      "3mrad", "--steps", "61", "--out", dir_.string()},
                     &text),
            kExitOk);
  char want[64];
  std::snprintf(want, sizeof(want), "fwhm %.6f mrad",
                fwhm_selectivity(presets::paper_grating()) * 1e3);
  EXPECT_NE(text.find(want), std::string::npos) << text;
  const std::string csv = read_text_file(dir_ / "sweep.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 62);
}

TEST_F(CliTest, SweepThicknessReportsFirstMaximum) {
  std::string text;
  ASSERT_EQ(run_args({"sweep", "--param", "thickness", "--start", "0.5mm", "--stop",
                      "3mm", "--steps", "100", "--out", dir_.string()},
                     &text),
            kExitOk);
  EXPECT_NE(text.find("first maximum (nu = pi/2) at thickness 2.11"), std::string::npos)
      << text;
}

TEST_F(CliTest, OutputIsDeterministic) {
  const fs::path a = dir_ / "a";
  const fs::path b = dir_ / "b";
  for (const fs::path& d : {a, b}) {
    ASSERT_EQ(run_args({"tomography", "--preset", "paper-cnot", "--out", d.string()}),
              kExitOk);
  }
  for (const char* f : {"tomography.csv", "tomography.txt", "tomography_metrics.csv"}) {
    EXPECT_EQ(read_text_file(a / f), read_text_file(b / f)) << f;
  }
}

TEST_F(CliTest, BinaryExitCodes) {
  EXPECT_EQ(run_binary("verify --preset paper-cnot --out \"" + dir_.string() + "\""),
            kExitOk);
  EXPECT_EQ(run_binary(""), kExitUsage);
  EXPECT_EQ(run_binary("sweep --param color --start 1 --stop 2 --steps 3"), kExitUsage);

  std::ofstream(dir_ / "broken.grs") << "# gratestack recipe v1\nname x\nbogus 1\n";
  EXPECT_EQ(run_binary("verify --recipe \"" + (dir_ / "broken.grs").string() + "\""),
            kExitParse);
  const std::string err = read_text_file(dir_ / "stderr.txt");
  EXPECT_NE(err.find("line 3"), std::string::npos) << err;

  EXPECT_EQ(run_binary("verify --recipe \"" + (dir_ / "missing.grs").string() + "\""),
            kExitIo);
  std::ofstream(dir_ / "blocker") << "x";
  EXPECT_EQ(run_binary("synthesize --target cnot --out \"" +
                       (dir_ / "blocker" / "sub").string() + "\""),
            kExitIo);
}

TEST_F(CliTest, BinaryHonoursEnvironmentOutput) {
  const fs::path env_dir = dir_ / "from_env";
  EXPECT_EQ(run_binary("synthesize --target cnot",
                       "GRATESTACK_OUT=\"" + env_dir.string() + "\""),
            kExitOk);
  EXPECT_TRUE(fs::exists(env_dir / "cnot.grs"));
}

}  // namespace
}  // namespace gratestack::cli
