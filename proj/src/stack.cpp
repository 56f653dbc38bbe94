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

#include "gratestack/stack.hpp"

#include <cmath>
#include <set>

#include "gratestack/error.hpp"

namespace gratestack {

namespace {

GratingSpec record_pair(const PlaneWaveState& signal,
                        const PlaneWaveState& reference,
                        const StackParameters& p) {
  return record(signal, reference, p.thickness, p.material, p.wavelength);
}

}  // namespace

ModeOperator compose(std::span<const ModeOperator> ops,
                     const std::vector<std::string>& mode_labels) {
  ModeOperator result = ModeOperator::identity(mode_labels);
  Eigen::MatrixXcd product = result.matrix();
  for (const ModeOperator& op : ops) {
    if (op.mode_labels() != mode_labels) {
      throw Error(ErrorCode::kBasisMismatch,
                  "operators in a stack must share one mode list");
    }
    product = op.matrix() * product;
  }
  return ModeOperator(std::move(product), mode_labels);
}

ModeOperator multiplexed_operator(std::span<const GratingSpec> gratings,
                                  const ConeBasis& basis,
                                  const OperatorOptions& options) {
  const auto n = static_cast<Eigen::Index>(basis.total_modes());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
  std::set<std::size_t> used;
  for (const GratingSpec& g : gratings) {
    // The single-grating operator carries the coupler block on its pair;
    // copy that block into the shared matrix.
    const ModeOperator single = grating_operator(g, basis, options);
    const std::size_t a = *basis.index_of(g.signal);
    const std::size_t b = *basis.index_of(g.reference);
    if (!used.insert(a).second || !used.insert(b).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "multiplexed recordings must couple disjoint mode pairs");
    }
    for (std::size_t r : {a, b}) {
      for (std::size_t c : {a, b}) {
        const auto ri = static_cast<Eigen::Index>(r);
        const auto ci = static_cast<Eigen::Index>(c);
        m(ri, ci) = single.matrix()(ri, ci);
      }
    }
  }
  return ModeOperator(std::move(m), basis.labels());
}

ModeOperator ideal_operator(const GratingSpec& g, const ConeBasis& basis) {
  OperatorOptions options;
  options.efficiency = 1.0;
  options.convention = PhaseConvention::kIdeal;
  GratingSpec phase_free = g;
  phase_free.recording_phase = 0.0;
  return grating_operator(phase_free, basis, options);
}

ModeOperator ideal_composition(const StackRecipe& recipe) {
  std::vector<ModeOperator> ops;
  ops.reserve(recipe.gratings.size());
  for (const GratingSpec& g : recipe.gratings) {
    ops.push_back(ideal_operator(g, recipe.basis));
  }
  return compose(ops, recipe.basis.labels());
}

Eigen::MatrixXcd permutation_matrix(std::span<const std::size_t> image) {
  const auto n = static_cast<Eigen::Index>(image.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto j = static_cast<Eigen::Index>(image[static_cast<std::size_t>(i)]);
    if (j >= n) {
      throw Error(ErrorCode::kNotAPermutation, "image index out of range");
    }
    m(j, i) = 1.0;
  }
  permutation_image(m);
  return m;
}

Eigen::MatrixXcd cnot_matrix() {
  const std::size_t image[] = {0, 1, 3, 2};
  return permutation_matrix(image);
}

std::vector<std::size_t> permutation_image(const Eigen::MatrixXcd& perm) {
  if (perm.rows() != perm.cols() || perm.rows() == 0) {
    throw Error(ErrorCode::kNotAPermutation, "matrix must be square");
  }
  constexpr double kTol = 1e-12;
  const Eigen::Index n = perm.rows();
  std::vector<std::size_t> image(static_cast<std::size_t>(n));
  std::vector<bool> hit(static_cast<std::size_t>(n), false);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index found = -1;
    for (Eigen::Index r = 0; r < n; ++r) {
      const Complex v = perm(r, c);
      if (std::abs(v - 1.0) <= kTol) {
        if (found >= 0) {
          throw Error(ErrorCode::kNotAPermutation,
                      "column " + std::to_string(c) + " has two unit entries");
        }
        found = r;
      } else if (std::abs(v) > kTol) {
        throw Error(ErrorCode::kNotAPermutation,
                    "entries must be 0 or 1");
      }
    }
    if (found < 0 || hit[static_cast<std::size_t>(found)]) {
      throw Error(ErrorCode::kNotAPermutation,
                  "each row and column needs exactly one unit entry");
    }
    hit[static_cast<std::size_t>(found)] = true;
    image[static_cast<std::size_t>(c)] = static_cast<std::size_t>(found);
  }
  return image;
}

StackRecipe cnot_recipe(const ConeBasis& basis,
                        const StackParameters& parameters) {
  if (basis.dimension() != 4) {
    throw Error(ErrorCode::kWrongDimension,
                "CNOT needs a 4-mode basis, got " +
                    std::to_string(basis.dimension()));
  }
  auto s = [&](std::size_t i) -> const PlaneWaveState& {
    return basis.signal(i - 1);
  };
  auto r = [&](std::size_t i) -> const PlaneWaveState& {
    return basis.reference(i - 1);
  };
  StackRecipe recipe{"cnot", basis, parameters, {}, cnot_matrix()};
  recipe.gratings = {
      record_pair(s(3), r(4), parameters),
      record_pair(s(4), r(3), parameters),
      record_pair(r(4), s(4), parameters),
      record_pair(r(3), s(3), parameters),
  };
  return recipe;
}

StackRecipe permutation_recipe(const Eigen::MatrixXcd& perm,
                               const ConeBasis& basis,
                               const StackParameters& parameters,
                               std::string name) {
  const std::vector<std::size_t> image = permutation_image(perm);
  if (image.size() != basis.dimension()) {
    throw Error(ErrorCode::kWrongDimension,
                "permutation size does not match the basis dimension");
  }
  StackRecipe recipe{std::move(name), basis, parameters, {}, perm};
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (image[i] == i) continue;
    recipe.gratings.push_back(record_pair(basis.signal(i),
                                          basis.reference(image[i]),
                                          parameters));
  }
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (image[i] == i) continue;
    recipe.gratings.push_back(record_pair(basis.reference(image[i]),
                                          basis.signal(image[i]), parameters));
  }
  return recipe;
}

double process_fidelity(const Eigen::MatrixXcd& target,
                        const Eigen::MatrixXcd& actual) {
  if (target.rows() != actual.rows() || target.cols() != actual.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "target and operator differ in size");
  }
  const double n = static_cast<double>(target.rows());
  return std::norm((target.adjoint() * actual).trace()) / (n * n);
}

Verification verify_recipe(const StackRecipe& recipe, double tol) {
  if (!recipe.intended_target) {
    throw Error(ErrorCode::kNoTarget, "recipe '" + recipe.name +
                                          "' carries no intended target");
  }
  const auto n = static_cast<Eigen::Index>(recipe.basis.dimension());
  const ModeOperator u = ideal_composition(recipe);
  Verification v;
  v.fidelity = process_fidelity(*recipe.intended_target, u.signal_block(n));
  v.passed = v.fidelity >= 1.0 - tol;
  return v;
}

SuperpositionState apply(const ModeOperator& op,
                         const SuperpositionState& state) {
  if (op.mode_labels() != state.basis().labels()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "state and operator live on different mode lists");
  }
  return SuperpositionState(state.basis(), op.matrix() * state.amplitudes());
}

}  // namespace gratestack
