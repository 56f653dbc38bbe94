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

// A single two-wave transmission volume Bragg grating: recording geometry,
// two-wave coupled-mode response and its action on the mode list.
//
// Lengths are metres, angles radians. `wavelength` is the vacuum wavelength;
// geometry inside the glass uses Snell refraction with `Material::base_index`.

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gratestack/lm_basis.hpp"
#include "gratestack/mode_operator.hpp"

namespace gratestack {

struct Material {
  double index_modulation = 0.0;  // delta n
  double base_index = 1.49;       // n0, PTR glass
  std::string name = "PTR";
};

/// Phase attached to the diffracted amplitude.
///   kPhysical: coupled-mode -i times the recording phase; unitary for any
///              efficiency.
///   kIdeal:    phase-free redirection algebra. Exactly the mode swap at
///              unit efficiency; only unitary at efficiency 0 or 1.
enum class PhaseConvention { kPhysical, kIdeal };

/// Which recorded beam the light enters along.
enum class Port { kSignal, kReference };

struct GratingSpec {
  PlaneWaveState signal;
  PlaneWaveState reference;
  double thickness = 0.0;
  Material material;
  double wavelength = 0.0;
  double recording_phase = 0.0;
  double period = 0.0;  // derived at record time
  /// Measured on-Bragg efficiency; replaces the delta-n prediction when set.
  std::optional<double> efficiency;
};

struct RecordOptions {
  double recording_phase = 0.0;
  std::optional<double> efficiency;
  /// Skip the volume-hologram thickness check.
  bool force = false;
};

/// Ratio between thickness and Lambda^2 / lambda required for a grating to
/// count as a volume hologram.
inline constexpr double kVolumeCriterionFactor = 10.0;

/// Throws kIdenticalModes, kMismatchedWavenumber, kInvalidArgument, or
/// kThinHologram (d < 10 Lambda^2 / lambda, unless forced).
GratingSpec record(const PlaneWaveState& signal,
                   const PlaneWaveState& reference, double thickness,
                   const Material& material, double wavelength,
                   const RecordOptions& options = {});

/// K = k_signal - k_reference, both taken inside the medium.
Eigen::Vector3d grating_vector(const GratingSpec& g);

/// 2 pi / |k_signal - k_reference| inside a medium of index n0.
double grating_period(const PlaneWaveState& signal,
                      const PlaneWaveState& reference, double n0);

/// nu = pi dn d / (lambda sqrt(cos t_s cos t_r)), internal angles.
double coupling_strength(const GratingSpec& g);

/// Coupling used by the operator: the efficiency override inverted on the
/// undermodulated branch (nu <= pi/2), otherwise `coupling_strength`.
double effective_coupling(const GratingSpec& g);

/// Index modulation giving on-Bragg efficiency `efficiency` on the
/// undermodulated branch for this recording geometry.
double index_modulation_for_efficiency(const PlaneWaveState& signal,
                                       const PlaneWaveState& reference,
                                       double thickness, double base_index,
                                       double wavelength, double efficiency);

/// Dimensionless Bragg mismatch xi = theta d / (2 cos t_inc) for light
/// entering along `port`. theta = K . (k_inc - k_port) with unit internal
/// directions, which is the first-order mismatch K sin(angle(K, k)) dtheta
/// for a small tilt dtheta. Zero when the incident mode is the recorded
/// one.
double detuning(const GratingSpec& g, const PlaneWaveState& incident,
                Port port = Port::kSignal);

/// The recorded port mode tilted by `offset` inside the recording plane
/// (the plane spanned by the two recording beams, measured in air).
PlaneWaveState tilted_port_mode(const GratingSpec& g, double offset,
                                Port port = Port::kSignal);

/// eta = sin^2(sqrt(nu^2 + xi^2)) / (1 + xi^2 / nu^2); zero for nu == 0.
double diffraction_efficiency(double coupling, double detuning);

struct CoupledModeResponse {
  double coupling_strength = 0.0;
  double detuning = 0.0;
  double efficiency = 0.0;
};

CoupledModeResponse response(const GratingSpec& g,
                             const PlaneWaveState& incident,
                             Port port = Port::kSignal);

/// Complex transmitted (undiffracted) and diffracted amplitudes of the
/// lossless two-wave coupler, without the convention phase.
struct CouplerAmplitudes {
  Complex through;
  Complex diffracted;
};
CouplerAmplitudes coupler_amplitudes(double coupling, double detuning);

struct CouplerSettings {
  double coupling = 0.0;
  double signal_port_detuning = 0.0;
  /// Use the negated signal-port value for a rigid tilt of the grating;
  /// that choice keeps the block unitary.
  double reference_port_detuning = 0.0;
  double recording_phase = 0.0;
  PhaseConvention convention = PhaseConvention::kPhysical;
};

/// 2x2 block in (signal port, reference port) order.
Eigen::Matrix2cd coupler_block(const CouplerSettings& settings);

struct OperatorOptions {
  /// On-Bragg efficiency; defaults to the grating's own prediction.
  std::optional<double> efficiency;
  /// Per-mode detuning in basis order (2N entries) or empty for none. The
  /// entries at the grating's two recorded modes are used.
  std::vector<double> mode_detunings;
  PhaseConvention convention = PhaseConvention::kPhysical;
};

/// Identity on every mode except the recorded pair, where the coupler block
/// acts. Throws kUnknownMode if either recorded mode is not in the basis.
ModeOperator grating_operator(const GratingSpec& g, const ConeBasis& basis,
                              const OperatorOptions& options = {});

/// Efficiency versus angular offset of the incident port beam.
std::vector<std::pair<double, double>> selectivity_curve(
    const GratingSpec& g, std::span<const double> offsets,
    Port port = Port::kSignal);

/// Full width at half maximum of efficiency versus external angular offset
/// (radians). Throws kNonconvergent when there is no half-maximum crossing
/// within +-0.1 rad.
double fwhm_selectivity(const GratingSpec& g, Port port = Port::kSignal);

}  // namespace gratestack
