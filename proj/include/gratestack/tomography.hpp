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

// Intensity tomography of a grating stack under imperfect efficiency,
// Bragg mismatch and scatter, the derived crosstalk metrics, and a tied
// least-squares calibration against a measured table.

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gratestack/error.hpp"
#include "gratestack/grating.hpp"
#include "gratestack/stack.hpp"

namespace gratestack {

/// Bragg mismatch seen by light entering each port of one grating.
struct PortDetuning {
  double signal_port = 0.0;
  double reference_port = 0.0;
};

/// Rigid tilt of a grating: opposite detuning at the two ports, which keeps
/// the coupler lossless.
inline PortDetuning tilt_detuning(double xi) { return {xi, -xi}; }

/// Rigid-tilt detuning for an external angular offset of the signal port.
PortDetuning angular_detuning(const GratingSpec& g, double offset);

struct ImperfectionModel {
  std::vector<double> efficiency;           // on-Bragg, per grating
  std::vector<PortDetuning> detuning;       // per grating
  std::vector<double> transmission;         // scatter, per grating

  std::size_t size() const noexcept { return efficiency.size(); }

  /// Unit efficiency, no mismatch, no loss.
  static ImperfectionModel ideal(std::size_t gratings);
  /// Each grating's own efficiency (override or coupled-mode prediction).
  static ImperfectionModel nominal(const StackRecipe& recipe);
};

struct TomographyTable {
  /// Rows are input basis states, columns are signal detectors.
  Eigen::MatrixXd intensities;
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;
  /// Per input, the intensity left on each reference mode, when known.
  std::optional<Eigen::MatrixXd> reference_intensities;
  /// Per input, total intensity on reference modes, when known.
  std::optional<Eigen::VectorXd> undetected;

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(intensities.rows());
  }
};

/// "00", "01", ... when n is a power of two, else "S1".."Sn".
std::vector<std::string> state_labels(std::size_t n);

/// Table with the default labels. Undetected intensity stays unknown.
TomographyTable make_table(const Eigen::MatrixXd& intensities);

/// Throws kSizeMismatch, kInvalidArgument.
TomographyTable run_tomography(
    const StackRecipe& recipe, const ImperfectionModel& model,
    PhaseConvention convention = PhaseConvention::kPhysical);

struct Crosstalk {
  std::string input;
  double raw = 0.0;         // intensity outside the target column
  double normalized = 0.0;  // raw over the detected row total
};

/// Throws kDimensionMismatch, kNotAPermutation.
std::vector<Crosstalk> crosstalk(const TomographyTable& t,
                                 const Eigen::MatrixXcd& target);

struct ColumnSum {
  std::string label;
  double sum = 0.0;
  bool flagged = false;  // |sum - 1| > threshold
};

std::vector<ColumnSum> column_sums(const TomographyTable& t,
                                   double threshold = 0.05);

/// Mean target-column intensity over all inputs.
double table_fidelity(const TomographyTable& t, const Eigen::MatrixXcd& target);

/// Tied calibration parameters.
///   eta_a:  gratings whose first recorded mode is a signal mode; on-Bragg.
///   eta_b:  the remaining (conjugate) gratings.
///   detuning: mismatch seen at the signal-mode port of eta_b gratings;
///             their reference-mode port stays on Bragg.
///   transmission: total scatter transmission through the whole stack.
struct CalibrationParameters {
  double eta_a = 1.0;
  double eta_b = 1.0;
  double detuning = 0.0;
  double transmission = 1.0;
};

ImperfectionModel model_from_parameters(const StackRecipe& recipe,
                                        const CalibrationParameters& p);

struct CalibrationOptions {
  double eta_min = 0.5;  // undermodulated branch
  double eta_max = 1.0;
  double eta_step = 0.01;
  double detuning_max = 10.0;
  double detuning_step = 0.05;
  double max_residual = 0.1;
  double refine_tolerance = 1e-12;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct CalibrationResult {
  CalibrationParameters parameters;
  ImperfectionModel model;
  double residual = 0.0;  // sum of squared differences
  std::size_t evaluations = 0;
};

/// Thrown when the best fit still exceeds `max_residual`.
class CalibrationError : public Error {
 public:
  CalibrationError(const std::string& message, CalibrationResult best)
      : Error(ErrorCode::kNonconvergent, message), best_(std::move(best)) {}
  const CalibrationResult& best() const noexcept { return best_; }

 private:
  CalibrationResult best_;
};

/// Grid search then coordinate descent. Uses per-reference intensities or
/// the undetected column when the measured table carries them. Throws
/// kDimensionMismatch or CalibrationError.
CalibrationResult fit_calibration(const TomographyTable& measured,
                                  const StackRecipe& recipe,
                                  const CalibrationOptions& options = {});

/// Fixed schema: header "input,<labels>,undetected", six decimals, empty
/// undetected cell when unknown. An empty table gives the header alone.
std::string table_to_csv(const TomographyTable& t);

/// Inverse of table_to_csv. Throws kParseError.
TomographyTable table_from_csv(std::string_view text);

struct Report {
  std::string text;
  std::string table_csv;
  std::string metrics_csv;
};

Report emit_report(const TomographyTable& t,
                   const std::optional<Eigen::MatrixXcd>& target);

/// Writes <stem>.txt, <stem>.csv and <stem>_metrics.csv into `dir`.
/// Throws kIoFailure.
void write_report(const std::filesystem::path& dir, std::string_view stem,
                  const Report& report);

/// Writes `contents` to `path`, creating parent directories. Throws
/// kIoFailure.
void write_text_file(const std::filesystem::path& path,
                     std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace gratestack
