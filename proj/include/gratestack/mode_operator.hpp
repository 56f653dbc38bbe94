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

#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace gratestack {

/// Linear map on the combined signal + reference mode list. Column j is the
/// output field for unit input in mode j.
class ModeOperator {
 public:
  ModeOperator(Eigen::MatrixXcd matrix, std::vector<std::string> mode_labels);

  static ModeOperator identity(std::vector<std::string> mode_labels);

  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  const std::vector<std::string>& mode_labels() const noexcept {
    return labels_;
  }
  Eigen::Index dimension() const noexcept { return matrix_.rows(); }

  /// Largest entry of |U^H U - I|.
  double unitarity_error() const;
  bool is_unitary(double tol = 1e-12) const { return unitarity_error() <= tol; }

  /// Top-left n x n block (signal rows and signal columns).
  Eigen::MatrixXcd signal_block(Eigen::Index n) const;

 private:
  Eigen::MatrixXcd matrix_;
  std::vector<std::string> labels_;
};

}  // namespace gratestack
