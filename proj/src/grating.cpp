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

#include "gratestack/grating.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gratestack/error.hpp"

namespace gratestack {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_same_wavenumber(const PlaneWaveState& a, const PlaneWaveState& b) {
  if (std::abs(a.wavenumber - b.wavenumber) > 1e-9 * a.wavenumber) {
    throw Error(ErrorCode::kMismatchedWavenumber,
                a.label + " and " + b.label + " have different wavenumbers");
  }
}

double cos_internal(const PlaneWaveState& s, double n0) {
  return std::cos(internal_polar_angle(s, n0));
}

const PlaneWaveState& port_mode(const GratingSpec& g, Port port) {
  return port == Port::kSignal ? g.signal : g.reference;
}

}  // namespace

GratingSpec record(const PlaneWaveState& signal,
                   const PlaneWaveState& reference, double thickness,
                   const Material& material, double wavelength,
                   const RecordOptions& options) {
  validate(signal);
  validate(reference);
  check_same_wavenumber(signal, reference);
  if (signal.same_mode(reference)) {
    throw Error(ErrorCode::kIdenticalModes,
                "signal " + signal.label + " and reference " +
                    reference.label + " are the same mode");
  }
  if (!(thickness > 0.0) || !(wavelength > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "thickness and wavelength must be positive");
  }
  if (!(material.base_index >= 1.0) || !(material.index_modulation >= 0.0) ||
      material.index_modulation >= material.base_index) {
    throw Error(ErrorCode::kInvalidArgument,
                "material needs n0 >= 1 and 0 <= delta n < n0");
  }
  const double k_vacuum = 2.0 * std::numbers::pi / wavelength;
  if (std::abs(signal.wavenumber - k_vacuum) > 1e-9 * k_vacuum) {
    throw Error(ErrorCode::kMismatchedWavenumber,
                "mode wavenumber does not match the design wavelength");
  }
  if (options.efficiency &&
      !(*options.efficiency >= 0.0 && *options.efficiency <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "efficiency must lie in [0, 1]");
  }

  GratingSpec g;
  g.signal = signal;
  g.reference = reference;
  g.thickness = thickness;
  g.material = material;
  g.wavelength = wavelength;
  g.recording_phase = options.recording_phase;
  g.efficiency = options.efficiency;
  g.period = grating_period(signal, reference, material.base_index);

  const double threshold =
      kVolumeCriterionFactor * g.period * g.period / wavelength;
  if (!options.force && thickness < threshold) {
    throw Error(ErrorCode::kThinHologram,
                "thickness " + std::to_string(thickness) +
                    " m is below the volume limit " +
                    std::to_string(threshold) + " m");
  }
  return g;
}

double grating_period(const PlaneWaveState& signal,
                      const PlaneWaveState& reference, double n0) {
  const Eigen::Vector3d k =
      internal_wave_vector(signal, n0) - internal_wave_vector(reference, n0);
  return 2.0 * std::numbers::pi / k.norm();
}

Eigen::Vector3d grating_vector(const GratingSpec& g) {
  const double n0 = g.material.base_index;
  return internal_wave_vector(g.signal, n0) -
         internal_wave_vector(g.reference, n0);
}

double coupling_strength(const GratingSpec& g) {
  const double n0 = g.material.base_index;
  const double obliquity =
      std::sqrt(cos_internal(g.signal, n0) * cos_internal(g.reference, n0));
  return std::numbers::pi * g.material.index_modulation * g.thickness /
         (g.wavelength * obliquity);
}

double effective_coupling(const GratingSpec& g) {
  if (g.efficiency) return std::asin(std::sqrt(*g.efficiency));
  return coupling_strength(g);
}

double index_modulation_for_efficiency(const PlaneWaveState& signal,
                                       const PlaneWaveState& reference,
                                       double thickness, double base_index,
                                       double wavelength, double efficiency) {
  if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "efficiency must lie in [0, 1]");
  }
  const double nu = std::asin(std::sqrt(efficiency));
  const double obliquity = std::sqrt(cos_internal(signal, base_index) *
                                     cos_internal(reference, base_index));
  return nu * wavelength * obliquity / (std::numbers::pi * thickness);
}

double detuning(const GratingSpec& g, const PlaneWaveState& incident,
                Port port) {
  check_same_wavenumber(incident, g.signal);
  const double n0 = g.material.base_index;
  const Eigen::Vector3d k_inc = internal_wave_vector(incident, n0).normalized();
  const Eigen::Vector3d k_port =
      internal_wave_vector(port_mode(g, port), n0).normalized();
  const Eigen::Vector3d grating = grating_vector(g);
  const double sign = port == Port::kSignal ? 1.0 : -1.0;
  const double mismatch = sign * grating.dot(k_inc - k_port);
  return mismatch * g.thickness / (2.0 * k_inc.z());
}

PlaneWaveState tilted_port_mode(const GratingSpec& g, double offset,
                                Port port) {
  const PlaneWaveState& self = port_mode(g, port);
  const PlaneWaveState& other =
      port == Port::kSignal ? g.reference : g.signal;
  const Eigen::Vector3d u = wave_vector(self).normalized();
  const Eigen::Vector3d axis =
      u.cross(wave_vector(other).normalized()).normalized();
  // Rodrigues rotation about `axis`; axis is orthogonal to u.
  const Eigen::Vector3d r =
      u * std::cos(offset) + axis.cross(u) * std::sin(offset);

  PlaneWaveState out = self;
  out.polar_angle = std::acos(std::clamp(r.z(), -1.0, 1.0));
  out.azimuth = std::atan2(r.y(), r.x());
  if (out.azimuth < 0.0) out.azimuth += 2.0 * std::numbers::pi;
  out.label = self.label + "'";
  return out;
}

double diffraction_efficiency(double coupling, double detuning) {
  if (!(coupling >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "coupling strength must be >= 0");
  }
  if (coupling == 0.0) return 0.0;
  if (detuning == 0.0) {
    const double s = std::sin(coupling);
    return s * s;
  }
  const double root = std::hypot(coupling, detuning);
  const double s = std::sin(root);
  const double ratio = detuning / coupling;
  return s * s / (1.0 + ratio * ratio);
}

CoupledModeResponse response(const GratingSpec& g,
                             const PlaneWaveState& incident, Port port) {
  CoupledModeResponse r;
  r.coupling_strength = effective_coupling(g);
  r.detuning = detuning(g, incident, port);
  r.efficiency = diffraction_efficiency(r.coupling_strength, r.detuning);
  return r;
}

CouplerAmplitudes coupler_amplitudes(double coupling, double detuning) {
  const double root = std::hypot(coupling, detuning);
  if (root == 0.0) return {Complex{1.0, 0.0}, Complex{0.0, 0.0}};
  const double sinc = std::sin(root) / root;
  const Complex phase = std::exp(kI * detuning);
  return {phase * (std::cos(root) - kI * detuning * sinc),
          phase * (coupling * sinc)};
}

Eigen::Matrix2cd coupler_block(const CouplerSettings& s) {
  Eigen::Matrix2cd block;
  const Complex fwd = std::exp(-kI * s.recording_phase);
  const Complex back = std::exp(kI * s.recording_phase);
  if (s.convention == PhaseConvention::kPhysical) {
    const CouplerAmplitudes a = coupler_amplitudes(s.coupling,
                                                   s.signal_port_detuning);
    const CouplerAmplitudes b = coupler_amplitudes(s.coupling,
                                                   s.reference_port_detuning);
    block(0, 0) = a.through;
    block(1, 0) = -kI * a.diffracted * fwd;
    block(0, 1) = -kI * b.diffracted * back;
    block(1, 1) = b.through;
  } else {
    const double ea = diffraction_efficiency(s.coupling, s.signal_port_detuning);
    const double eb =
        diffraction_efficiency(s.coupling, s.reference_port_detuning);
    block(0, 0) = std::sqrt(1.0 - ea);
    block(1, 0) = std::sqrt(ea) * fwd;
    block(0, 1) = std::sqrt(eb) * back;
    block(1, 1) = std::sqrt(1.0 - eb);
  }
  return block;
}

ModeOperator grating_operator(const GratingSpec& g, const ConeBasis& basis,
                              const OperatorOptions& options) {
  const auto a = basis.index_of(g.signal);
  const auto b = basis.index_of(g.reference);
  if (!a || !b) {
    throw Error(ErrorCode::kUnknownMode,
                "grating modes " + g.signal.label + "/" + g.reference.label +
                    " are not members of the basis");
  }
  const std::size_t n = basis.total_modes();
  if (!options.mode_detunings.empty() && options.mode_detunings.size() != n) {
    throw Error(ErrorCode::kSizeMismatch,
                "expected one detuning per mode (" + std::to_string(n) + ")");
  }
  if (options.efficiency &&
      !(*options.efficiency >= 0.0 && *options.efficiency <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "efficiency must lie in [0, 1]");
  }

  CouplerSettings s;
  s.coupling = options.efficiency ? std::asin(std::sqrt(*options.efficiency))
                                  : effective_coupling(g);
  if (!options.mode_detunings.empty()) {
    s.signal_port_detuning = options.mode_detunings[*a];
    s.reference_port_detuning = options.mode_detunings[*b];
  }
  s.recording_phase = g.recording_phase;
  s.convention = options.convention;
  const Eigen::Matrix2cd block = coupler_block(s);

  const auto dim = static_cast<Eigen::Index>(n);
  const auto ia = static_cast<Eigen::Index>(*a);
  const auto ib = static_cast<Eigen::Index>(*b);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
  m(ia, ia) = block(0, 0);
  m(ib, ia) = block(1, 0);
  m(ia, ib) = block(0, 1);
  m(ib, ib) = block(1, 1);
  return ModeOperator(std::move(m), basis.labels());
}

std::vector<std::pair<double, double>> selectivity_curve(
    const GratingSpec& g, std::span<const double> offsets, Port port) {
  const double nu = effective_coupling(g);
  std::vector<std::pair<double, double>> out;
  out.reserve(offsets.size());
  for (double offset : offsets) {
    const double xi = detuning(g, tilted_port_mode(g, offset, port), port);
    out.emplace_back(offset, diffraction_efficiency(nu, xi));
  }
  return out;
}

double fwhm_selectivity(const GratingSpec& g, Port port) {
  const double nu = effective_coupling(g);
  if (!(nu > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "selectivity needs a nonzero coupling strength");
  }
  auto eta_at = [&](double offset) {
    return diffraction_efficiency(
        nu, detuning(g, tilted_port_mode(g, offset, port), port));
  };

  constexpr double kRange = 0.1;
  constexpr int kHalfSamples = 10000;
  constexpr double kStep = kRange / kHalfSamples;

  int peak_index = 0;
  double peak = eta_at(0.0);
  for (int i = -kHalfSamples; i <= kHalfSamples; ++i) {
    const double e = eta_at(i * kStep);
    if (e > peak) {
      peak = e;
      peak_index = i;
    }
  }
  const double half = 0.5 * peak;

  auto crossing = [&](int direction) {
    int i = peak_index;
    while (std::abs(i + direction) <= kHalfSamples) {
      const int next = i + direction;
      if (eta_at(next * kStep) < half) {
        double inside = i * kStep;
        double outside = next * kStep;
        for (int it = 0; it < 80; ++it) {
          const double mid = 0.5 * (inside + outside);
          (eta_at(mid) >= half ? inside : outside) = mid;
        }
        return 0.5 * (inside + outside);
      }
      i = next;
    }
    throw Error(ErrorCode::kNonconvergent,
                "no half-maximum crossing within +-0.1 rad");
  };
  return crossing(+1) - crossing(-1);
}

}  // namespace gratestack
