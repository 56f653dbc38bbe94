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

#include "gratestack/mode_operator.hpp"

#include "gratestack/error.hpp"

namespace gratestack {

ModeOperator::ModeOperator(Eigen::MatrixXcd matrix,
                           std::vector<std::string> mode_labels)
    : matrix_(std::move(matrix)), labels_(std::move(mode_labels)) {
  if (matrix_.rows() != matrix_.cols() ||
      matrix_.rows() != static_cast<Eigen::Index>(labels_.size())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "operator must be square with one label per mode");
  }
}

ModeOperator ModeOperator::identity(std::vector<std::string> mode_labels) {
  const auto n = static_cast<Eigen::Index>(mode_labels.size());
  return ModeOperator(Eigen::MatrixXcd::Identity(n, n), std::move(mode_labels));
}

double ModeOperator::unitarity_error() const {
  const Eigen::MatrixXcd gram = matrix_.adjoint() * matrix_;
  return (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols()))
      .cwiseAbs()
      .maxCoeff();
}

Eigen::MatrixXcd ModeOperator::signal_block(Eigen::Index n) const {
  if (n > matrix_.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "signal block exceeds operator");
  }
  return matrix_.topLeftCorner(n, n);
}

}  // namespace gratestack
