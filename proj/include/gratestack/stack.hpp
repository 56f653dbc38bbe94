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

// Grating stacks: ordered composition of grating operators into gate
// operators, and synthesis of stacks for permutation gates.
//
// Ordering: the beam meets gratings in list order, so a stack g1, g2, ..., gn
// acts as U = Un ... U2 U1.

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gratestack/grating.hpp"
#include "gratestack/lm_basis.hpp"
#include "gratestack/mode_operator.hpp"

namespace gratestack {

/// Parameters shared by every grating of a stack.
struct StackParameters {
  double wavelength = 532e-9;
  double thickness = 1.64e-3;
  Material material;
};

struct StackRecipe {
  std::string name;
  ConeBasis basis;
  StackParameters parameters;
  std::vector<GratingSpec> gratings;  // beam order
  std::optional<Eigen::MatrixXcd> intended_target;
};

/// Ordered product ops[n-1] ... ops[0]. Every operator must carry
/// `mode_labels`; throws kBasisMismatch otherwise. Empty input gives the
/// identity.
ModeOperator compose(std::span<const ModeOperator> ops,
                     const std::vector<std::string>& mode_labels);

/// Couplers for several recordings on pairwise disjoint mode pairs placed in
/// one operator, as a single multiplexed exposure would act. Throws
/// kInvalidArgument if two gratings share a mode.
ModeOperator multiplexed_operator(std::span<const GratingSpec> gratings,
                                  const ConeBasis& basis,
                                  const OperatorOptions& options = {});

/// Unit-efficiency, phase-free redirection operator of one grating.
ModeOperator ideal_operator(const GratingSpec& g, const ConeBasis& basis);

/// Ideal operators of a recipe composed in beam order.
ModeOperator ideal_composition(const StackRecipe& recipe);

/// Permutation gate matrices on N signal modes. Column i holds the image of
/// |S_{i+1}>.
Eigen::MatrixXcd permutation_matrix(std::span<const std::size_t> image);
Eigen::MatrixXcd cnot_matrix();

/// Image of each column of a 0/1 permutation matrix. Throws
/// kNotAPermutation.
std::vector<std::size_t> permutation_image(const Eigen::MatrixXcd& perm);

/// Four gratings (S3,R4), (S4,R3), (R4,S4), (R3,S3) on an N = 4 basis.
/// Throws kWrongDimension otherwise.
StackRecipe cnot_recipe(const ConeBasis& basis,
                        const StackParameters& parameters);

/// For every moved mode S_i -> S_j: (S_i, R_j) in a first group, then
/// (R_j, S_j) in a second group, both in order of i. Fixed points get no
/// grating.
StackRecipe permutation_recipe(const Eigen::MatrixXcd& perm,
                               const ConeBasis& basis,
                               const StackParameters& parameters,
                               std::string name = "permutation");

/// |Tr(T^H U)|^2 / N^2.
double process_fidelity(const Eigen::MatrixXcd& target,
                        const Eigen::MatrixXcd& actual);

struct Verification {
  double fidelity = 0.0;
  bool passed = false;
};

/// Composes ideal operators and compares the signal block against the
/// intended target. Throws kNoTarget when the recipe carries none.
Verification verify_recipe(const StackRecipe& recipe, double tol = 1e-12);

/// Matrix-vector product. Throws kDimensionMismatch when the state lives on
/// a different mode list.
SuperpositionState apply(const ModeOperator& op,
                         const SuperpositionState& state);

}  // namespace gratestack
