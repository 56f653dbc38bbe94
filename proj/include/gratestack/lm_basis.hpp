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

// Transverse linear-momentum (LM) plane-wave modes on a cone around the
// hologram normal (z axis). The hologram face is the x-y plane.
//
// All angles are radians and are measured in air (outside the medium).

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gratestack {

using Complex = std::complex<double>;

enum class ModeRole { kSignal, kReference };

struct PlaneWaveState {
  double wavenumber = 0.0;   // rad per metre
  double polar_angle = 0.0;  // angle to the hologram normal
  double azimuth = 0.0;      // in [0, 2*pi)
  std::string label;
  ModeRole role = ModeRole::kSignal;

  /// Same physical mode: equal (theta, phi, k). Labels are ignored.
  bool same_mode(const PlaneWaveState& other, double tol = 1e-12) const;
};

/// Throws kInvalidAngle / kInvalidArgument when the state violates
/// k > 0, 0 <= theta < pi/2.
void validate(const PlaneWaveState& state);

/// k (sin t cos p, sin t sin p, cos t).
Eigen::Vector3d wave_vector(const PlaneWaveState& state);

/// Wave vector inside a medium of index n0. The transverse component is
/// conserved across the face; the magnitude becomes n0 * k.
Eigen::Vector3d internal_wave_vector(const PlaneWaveState& state, double n0);

/// Polar angle inside the medium (Snell refraction at the x-y face).
double internal_polar_angle(const PlaneWaveState& state, double n0);

/// Signals S1..SN on the cone theta_s followed by references R1..RN on the
/// cone theta_r, both fans sharing the same azimuths.
class ConeBasis {
 public:
  ConeBasis(std::vector<double> azimuths, double signal_cone_angle,
            double reference_cone_angle, double wavenumber);

  std::size_t dimension() const noexcept { return signals_.size(); }
  std::size_t total_modes() const noexcept { return 2 * signals_.size(); }
  double signal_cone_angle() const noexcept { return signal_cone_angle_; }
  double reference_cone_angle() const noexcept { return reference_cone_angle_; }
  double wavenumber() const noexcept { return wavenumber_; }
  const std::vector<double>& azimuths() const noexcept { return azimuths_; }

  /// Mode list in operator order: signals, then references.
  std::vector<PlaneWaveState> states() const;
  std::vector<std::string> labels() const;

  const PlaneWaveState& signal(std::size_t i) const { return signals_.at(i); }
  const PlaneWaveState& reference(std::size_t i) const {
    return references_.at(i);
  }
  /// Index into `states()`, or nullopt when the label is not a member.
  std::optional<std::size_t> index_of(const std::string& label) const;
  /// Index into `states()` of the physical mode (labels ignored).
  std::optional<std::size_t> index_of(const PlaneWaveState& mode) const;
  /// Throws kUnknownMode.
  const PlaneWaveState& mode(const std::string& label) const;

  bool uniform_azimuths() const;

  friend bool operator==(const ConeBasis& a, const ConeBasis& b);

 private:
  std::vector<double> azimuths_;
  double signal_cone_angle_;
  double reference_cone_angle_;
  double wavenumber_;
  std::vector<PlaneWaveState> signals_;
  std::vector<PlaneWaveState> references_;
};

/// Uniformly spaced azimuths 2*pi*(i-1)/N starting at zero.
ConeBasis make_cone_basis(std::size_t n, double signal_cone_angle,
                          double reference_cone_angle, double wavenumber);

/// Default reference cone angle when none is given.
inline double default_reference_cone_angle(double signal_cone_angle) {
  return 5.0 * signal_cone_angle;
}

/// Normalized transverse L2 inner product <a|b> over a centred D x D square
/// aperture with uniform illumination.
Complex mode_overlap(const PlaneWaveState& a, const PlaneWaveState& b,
                     double aperture_breadth);

/// True iff the selectivity is strictly below the smallest azimuthal gap
/// between adjacent signal modes.
bool angular_selectivity_ok(const ConeBasis& basis, double selectivity_fwhm);

/// Smallest azimuthal gap between adjacent signal modes (wrapping at 2*pi).
double minimum_azimuthal_gap(const ConeBasis& basis);

/// Amplitudes over the full 2N mode list of a basis (signals then
/// references).
class SuperpositionState {
 public:
  /// `amplitudes` may hold N signal amplitudes (references are zero-filled)
  /// or all 2N amplitudes.
  SuperpositionState(const ConeBasis& basis, Eigen::VectorXcd amplitudes);

  static SuperpositionState basis_state(const ConeBasis& basis,
                                        std::size_t signal_index);

  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  const ConeBasis& basis() const noexcept { return basis_; }
  double norm() const { return amplitudes_.norm(); }
  bool is_normalized(double tol = 1e-12) const;
  Eigen::VectorXcd signal_amplitudes() const;
  Eigen::VectorXcd reference_amplitudes() const;

 private:
  ConeBasis basis_;
  Eigen::VectorXcd amplitudes_;
};

}  // namespace gratestack
