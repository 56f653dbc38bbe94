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


#include "gratestack/presets.hpp"

#include <numbers>

#include "gratestack/units.hpp"

namespace gratestack::presets {

namespace {

double wavenumber() { return 2.0 * std::numbers::pi / kWavelength; }

}  // namespace

GratingSpec paper_grating(double base_index) {
  const double k = wavenumber();
  PlaneWaveState signal{k, from_degrees(kSignalConeDegrees),
                        std::numbers::pi / 2.0, "S", ModeRole::kSignal};
  PlaneWaveState reference{k, from_degrees(kReferenceConeDegrees),
                           3.0 * std::numbers::pi / 2.0, "R",
                           ModeRole::kReference};
  Material m;
  m.base_index = base_index;
  m.index_modulation = index_modulation_for_efficiency(
      signal, reference, kThickness, base_index, kWavelength,
      kFirstPairEfficiency);
  return record(signal, reference, kThickness, m, kWavelength);
}

ConeBasis paper_basis() {
  return make_cone_basis(4, from_degrees(kSignalConeDegrees),
                         from_degrees(kReferenceConeDegrees), wavenumber());
}

StackParameters paper_parameters(double base_index) {
  const ConeBasis basis = paper_basis();
  StackParameters p;
  p.wavelength = kWavelength;
  p.thickness = kThickness;
  p.material.base_index = base_index;
  p.material.index_modulation = index_modulation_for_efficiency(
      basis.signal(0), basis.reference(0), kThickness, base_index,
      kWavelength, 1.0);
  return p;
}

StackRecipe paper_cnot() {
  StackRecipe r = cnot_recipe(paper_basis(), paper_parameters());
  r.name = "paper-cnot";
  const double etas[] = {kFirstPairEfficiency, kFirstPairEfficiency,
                         kSecondPairEfficiency, kSecondPairEfficiency};
  for (std::size_t i = 0; i < r.gratings.size(); ++i) {
    r.gratings[i].efficiency = etas[i];
  }
  return r;
}

TomographyTable paper_table() {
  Eigen::MatrixXd m(4, 4);
  m << 0.99, 0.00, 0.00, 0.00,
       0.00, 0.99, 0.00, 0.00,
       0.00, 0.00, 0.15, 0.73,
       0.00, 0.00, 0.78, 0.12;
  return make_table(m);
}

}  // namespace gratestack::presets
