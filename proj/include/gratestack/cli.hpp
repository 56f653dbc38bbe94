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


// Command-line front end. `run` never calls exit; it returns the process
// status so the commands can be exercised in tests.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gratestack/error.hpp"
#include "gratestack/grating.hpp"

namespace gratestack::cli {

enum class Command {
  kSynthesize,
  kSimulate,
  kTomography,
  kSweep,
  kCalibrate,
  kVerify,
  kHelp,
};

/// Stable exit statuses.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitThreshold = 3,
  kExitIo = 4,
};

struct SweepSpec {
  std::string parameter;  // thickness, delta_n or detuning_angle
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 0;
};

struct Overrides {
  std::optional<double> wavelength;
  std::optional<double> thickness;
  std::optional<double> delta_n;
  std::optional<double> n0;
  std::optional<double> theta_s;
  std::optional<double> theta_r;
  std::optional<PhaseConvention> convention;
  bool force = false;

  bool changes_geometry() const {
    return wavelength || thickness || delta_n || n0 || theta_s || theta_r;
  }
};

struct RunConfig {
  Command command = Command::kHelp;
  std::optional<std::filesystem::path> recipe_path;
  std::filesystem::path output_dir = ".";
  std::optional<std::string> preset;
  std::optional<SweepSpec> sweep;
  Overrides overrides;
  std::string target;
  std::size_t modes = 4;
  std::optional<std::filesystem::path> measured;
  std::optional<double> min_fidelity;
  std::optional<std::string> input;
  std::optional<std::string> amplitudes;
  std::string help_text;
};

/// `args` excludes the program name. The output directory is --out when
/// given, else `env_out` (GRATESTACK_OUT), else the working directory.
/// Throws kUsageError naming the offending flag, or kUnknownParameter.
RunConfig parse_args(const std::vector<std::string>& args,
                     const std::optional<std::string>& env_out = std::nullopt);

int exit_code_for(ErrorCode code);

/// Executes one command. Library errors propagate as exceptions.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with errors mapped to exit statuses.
int main_entry(int argc, const char* const* argv);

}  // namespace gratestack::cli
