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

#include "gratestack/lm_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gratestack/error.hpp"

namespace gratestack {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_azimuth(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  // fmod can return exactly 2*pi after the correction for tiny negatives.
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

void check_cone_angle(double theta, const char* what) {
  if (!(theta > 0.0 && theta < std::numbers::pi / 2)) {
    throw Error(ErrorCode::kInvalidAngle,
                std::string(what) + " must lie in (0, pi/2), got " +
                    std::to_string(theta));
  }
}

PlaneWaveState make_state(double k, double theta, double phi, ModeRole role,
                          std::size_t i) {
  PlaneWaveState s;
  s.wavenumber = k;
  s.polar_angle = theta;
  s.azimuth = phi;
  s.role = role;
  s.label = (role == ModeRole::kSignal ? "S" : "R") + std::to_string(i + 1);
  return s;
}

}  // namespace

bool PlaneWaveState::same_mode(const PlaneWaveState& other, double tol) const {
  if (std::abs(wavenumber - other.wavenumber) > tol * wavenumber) return false;
  if (std::abs(polar_angle - other.polar_angle) > tol) return false;
  // On-axis modes have no meaningful azimuth.
  if (polar_angle == 0.0) return true;
  double d = std::abs(wrap_azimuth(azimuth) - wrap_azimuth(other.azimuth));
  return std::min(d, kTwoPi - d) <= tol;
}

void validate(const PlaneWaveState& state) {
  if (!(state.wavenumber > 0.0) || !std::isfinite(state.wavenumber)) {
    throw Error(ErrorCode::kInvalidArgument, "wavenumber must be positive");
  }
  if (!(state.polar_angle >= 0.0 && state.polar_angle < std::numbers::pi / 2)) {
    throw Error(ErrorCode::kInvalidAngle,
                "polar angle must lie in [0, pi/2) for " + state.label);
  }
  if (!std::isfinite(state.azimuth)) {
    throw Error(ErrorCode::kInvalidAngle, "azimuth must be finite");
  }
}

Eigen::Vector3d wave_vector(const PlaneWaveState& s) {
  const double st = std::sin(s.polar_angle);
  return s.wavenumber * Eigen::Vector3d(st * std::cos(s.azimuth),
                                        st * std::sin(s.azimuth),
                                        std::cos(s.polar_angle));
}

Eigen::Vector3d internal_wave_vector(const PlaneWaveState& s, double n0) {
  Eigen::Vector3d k = wave_vector(s);
  const double beta = n0 * s.wavenumber;
  const double kt2 = k.x() * k.x() + k.y() * k.y();
  k.z() = std::sqrt(beta * beta - kt2);
  return k;
}

double internal_polar_angle(const PlaneWaveState& s, double n0) {
  return std::asin(std::sin(s.polar_angle) / n0);
}

ConeBasis::ConeBasis(std::vector<double> azimuths, double signal_cone_angle,
                     double reference_cone_angle, double wavenumber)
    : signal_cone_angle_(signal_cone_angle),
      reference_cone_angle_(reference_cone_angle),
      wavenumber_(wavenumber) {
  if (azimuths.size() < 2) {
    throw Error(ErrorCode::kDimensionTooSmall,
                "a cone basis needs at least two modes");
  }
  check_cone_angle(signal_cone_angle, "signal cone angle");
  check_cone_angle(reference_cone_angle, "reference cone angle");
  if (std::abs(signal_cone_angle - reference_cone_angle) < 1e-12) {
    throw Error(ErrorCode::kInvalidAngle,
                "signal and reference cones must differ");
  }
  if (!(wavenumber > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "wavenumber must be positive");
  }
  azimuths_.reserve(azimuths.size());
  for (double phi : azimuths) azimuths_.push_back(wrap_azimuth(phi));
  for (std::size_t i = 0; i < azimuths_.size(); ++i) {
    for (std::size_t j = i + 1; j < azimuths_.size(); ++j) {
      double d = std::abs(azimuths_[i] - azimuths_[j]);
      if (std::min(d, kTwoPi - d) < 1e-12) {
        throw Error(ErrorCode::kInvalidAngle,
                    "azimuths must be distinct modulo 2*pi");
      }
    }
  }
  for (std::size_t i = 0; i < azimuths_.size(); ++i) {
    signals_.push_back(make_state(wavenumber, signal_cone_angle, azimuths_[i],
                                  ModeRole::kSignal, i));
    references_.push_back(make_state(wavenumber, reference_cone_angle,
                                     azimuths_[i], ModeRole::kReference, i));
  }
}

std::vector<PlaneWaveState> ConeBasis::states() const {
  std::vector<PlaneWaveState> out = signals_;
  out.insert(out.end(), references_.begin(), references_.end());
  return out;
}

std::vector<std::string> ConeBasis::labels() const {
  std::vector<std::string> out;
  out.reserve(total_modes());
  for (const auto& s : signals_) out.push_back(s.label);
  for (const auto& r : references_) out.push_back(r.label);
  return out;
}

std::optional<std::size_t> ConeBasis::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < signals_.size(); ++i) {
    if (signals_[i].label == label) return i;
    if (references_[i].label == label) return signals_.size() + i;
  }
  return std::nullopt;
}

std::optional<std::size_t> ConeBasis::index_of(
    const PlaneWaveState& mode) const {
  for (std::size_t i = 0; i < signals_.size(); ++i) {
    if (signals_[i].same_mode(mode)) return i;
    if (references_[i].same_mode(mode)) return signals_.size() + i;
  }
  return std::nullopt;
}

const PlaneWaveState& ConeBasis::mode(const std::string& label) const {
  auto idx = index_of(label);
  if (!idx) throw Error(ErrorCode::kUnknownMode, "no mode labelled " + label);
  return *idx < signals_.size() ? signals_[*idx]
                                 : references_[*idx - signals_.size()];
}

bool ConeBasis::uniform_azimuths() const {
  const double n = static_cast<double>(azimuths_.size());
  for (std::size_t i = 0; i < azimuths_.size(); ++i) {
    if (std::abs(azimuths_[i] - kTwoPi * static_cast<double>(i) / n) > 1e-12) {
      return false;
    }
  }
  return true;
}

bool operator==(const ConeBasis& a, const ConeBasis& b) {
  return a.azimuths_ == b.azimuths_ &&
         a.signal_cone_angle_ == b.signal_cone_angle_ &&
         a.reference_cone_angle_ == b.reference_cone_angle_ &&
         a.wavenumber_ == b.wavenumber_;
}

ConeBasis make_cone_basis(std::size_t n, double signal_cone_angle,
                          double reference_cone_angle, double wavenumber) {
  if (n < 2) {
    throw Error(ErrorCode::kDimensionTooSmall,
                "a cone basis needs at least two modes");
  }
  std::vector<double> azimuths(n);
  for (std::size_t i = 0; i < n; ++i) {
    azimuths[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
  }
  return ConeBasis(std::move(azimuths), signal_cone_angle,
                   reference_cone_angle, wavenumber);
}

Complex mode_overlap(const PlaneWaveState& a, const PlaneWaveState& b,
                     double aperture_breadth) {
  if (!(aperture_breadth > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "aperture breadth must be > 0");
  }
  if (std::abs(a.wavenumber - b.wavenumber) > 1e-12 * a.wavenumber) {
    throw Error(ErrorCode::kMismatchedWavenumber,
                a.label + " and " + b.label + " have different wavenumbers");
  }
  // (1/D^2) * integral over [-D/2, D/2]^2 of exp(i (kb - ka) . r).
  const Eigen::Vector3d dk = wave_vector(b) - wave_vector(a);
  const double half = 0.5 * aperture_breadth;
  return {sinc(dk.x() * half) * sinc(dk.y() * half), 0.0};
}

double minimum_azimuthal_gap(const ConeBasis& basis) {
  std::vector<double> phis = basis.azimuths();
  std::sort(phis.begin(), phis.end());
  double gap = kTwoPi - (phis.back() - phis.front());
  for (std::size_t i = 1; i < phis.size(); ++i) {
    gap = std::min(gap, phis[i] - phis[i - 1]);
  }
  return gap;
}

bool angular_selectivity_ok(const ConeBasis& basis, double selectivity_fwhm) {
  if (!(selectivity_fwhm > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "selectivity must be positive");
  }
  return selectivity_fwhm < minimum_azimuthal_gap(basis);
}

SuperpositionState::SuperpositionState(const ConeBasis& basis,
                                       Eigen::VectorXcd amplitudes)
    : basis_(basis) {
  const auto n = static_cast<Eigen::Index>(basis.dimension());
  if (amplitudes.size() == n) {
    amplitudes_ = Eigen::VectorXcd::Zero(2 * n);
    amplitudes_.head(n) = amplitudes;
  } else if (amplitudes.size() == 2 * n) {
    amplitudes_ = std::move(amplitudes);
  } else {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " + std::to_string(n) + " or " +
                    std::to_string(2 * n) + " amplitudes, got " +
                    std::to_string(amplitudes.size()));
  }
}

SuperpositionState SuperpositionState::basis_state(const ConeBasis& basis,
                                                   std::size_t signal_index) {
  if (signal_index >= basis.dimension()) {
    throw Error(ErrorCode::kUnknownMode, "signal index out of range");
  }
  Eigen::VectorXcd v =
      Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dimension()));
  v(static_cast<Eigen::Index>(signal_index)) = 1.0;
  return SuperpositionState(basis, std::move(v));
}

bool SuperpositionState::is_normalized(double tol) const {
  return std::abs(amplitudes_.squaredNorm() - 1.0) <= tol;
}

Eigen::VectorXcd SuperpositionState::signal_amplitudes() const {
  return amplitudes_.head(static_cast<Eigen::Index>(basis_.dimension()));
}

Eigen::VectorXcd SuperpositionState::reference_amplitudes() const {
  return amplitudes_.tail(static_cast<Eigen::Index>(basis_.dimension()));
}

}  // namespace gratestack
