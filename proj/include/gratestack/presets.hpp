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


// Parameters of the fabricated CNOT element: 532 nm, 1.64 mm PTR plates,
// signal cone 4.41 deg, reference cone 23.61 deg, efficiencies 0.88 and
// 0.93, and its measured tomography.

#pragma once

#include "gratestack/grating.hpp"
#include "gratestack/stack.hpp"
#include "gratestack/tomography.hpp"

namespace gratestack::presets {

inline constexpr double kWavelength = 532e-9;
inline constexpr double kThickness = 1.64e-3;
inline constexpr double kSignalConeDegrees = 4.41;
inline constexpr double kReferenceConeDegrees = 23.61;
inline constexpr double kFirstPairEfficiency = 0.88;
inline constexpr double kSecondPairEfficiency = 0.93;
inline constexpr double kMeasuredSelectivity = 2.4e-3;

/// Single grating: signal at 4.41 deg (azimuth pi/2), reference at
/// 23.61 deg on the opposite side (azimuth 3 pi/2), delta n set for
/// efficiency 0.88.
GratingSpec paper_grating(double base_index = 1.49);

/// Shared stack parameters with delta n set for unit efficiency on the
/// preset cones.
StackParameters paper_parameters(double base_index = 1.49);

ConeBasis paper_basis();

/// CNOT recipe with measured efficiencies 0.88, 0.88, 0.93, 0.93 attached.
StackRecipe paper_cnot();

/// Measured tomography, rows and columns 00, 01, 10, 11.
TomographyTable paper_table();

}  // namespace gratestack::presets
