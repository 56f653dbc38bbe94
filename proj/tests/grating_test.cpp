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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <functional>
#include <random>

#include "gratestack/error.hpp"
#include "oracles.hpp"

namespace gratestack {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLambda = 532e-9;
constexpr double kD = 1.64e-3;
const double kK = 2.0 * kPi / kLambda;

double deg(double d) { return d * kPi / 180.0; }

PlaneWaveState signal_mode() {
  return {kK, deg(4.41), kPi / 2, "S", ModeRole::kSignal};
}
PlaneWaveState reference_mode() {
  return {kK, deg(23.61), 3 * kPi / 2, "R", ModeRole::kReference};
}

GratingSpec paper_grating(double efficiency = 0.88, double d = kD) {
  Material m;
  m.index_modulation = index_modulation_for_efficiency(
      signal_mode(), reference_mode(), d, m.base_index, kLambda, efficiency);
  return record(signal_mode(), reference_mode(), d, m, kLambda);
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(Record, PresetGeometryIsAVolumeGrating) {
  const GratingSpec g = paper_grating();
  EXPECT_GT(g.period, 0.0);
  EXPECT_GE(g.thickness, kVolumeCriterionFactor * g.period * g.period / kLambda);
}

TEST(Record, PeriodFromInternalWaveVectors) {
  const GratingSpec g = paper_grating();
  // Snell at the x-y face, computed independently.
  auto internal = [](const PlaneWaveState& s) {
    const double n0 = 1.49;
    const double st = std::sin(s.polar_angle) / n0;
    const double k = n0 * s.wavenumber;
    return Eigen::Vector3d(k * st * std::cos(s.azimuth),
                           k * st * std::sin(s.azimuth),
                           k * std::sqrt(1.0 - st * st));
  };
  const double want =
      2 * kPi / (internal(signal_mode()) - internal(reference_mode())).norm();
  EXPECT_NEAR(g.period / want, 1.0, 1e-12);
}

TEST(Record, Errors) {
  Material m;
  m.index_modulation = 1e-4;
  EXPECT_EQ(code_of([&] {
              record(signal_mode(), signal_mode(), kD, m, kLambda);
            }),
            ErrorCode::kIdenticalModes);
  PlaneWaveState off = reference_mode();
  off.wavenumber *= 1.01;
  EXPECT_EQ(code_of([&] { record(signal_mode(), off, kD, m, kLambda); }),
            ErrorCode::kMismatchedWavenumber);
  EXPECT_EQ(code_of([&] { record(signal_mode(), reference_mode(), 0.0, m, kLambda); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] {
              record(signal_mode(), reference_mode(), kD, m, kLambda * 1.1);
            }),
            ErrorCode::kMismatchedWavenumber);
}

TEST(Record, ThinHologramBoundary) {
  Material m;
  m.index_modulation = 1e-4;
  const double period = grating_period(signal_mode(), reference_mode(), 1.49);
  const double limit = kVolumeCriterionFactor * period * period / kLambda;
  EXPECT_EQ(code_of([&] {
              record(signal_mode(), reference_mode(), period * period / kLambda,
                     m, kLambda);
            }),
            ErrorCode::kThinHologram);
  EXPECT_EQ(code_of([&] {
              record(signal_mode(), reference_mode(), 0.999 * limit, m, kLambda);
            }),
            ErrorCode::kThinHologram);
  EXPECT_NO_THROW(record(signal_mode(), reference_mode(), limit * 1.0000001, m,
                         kLambda));
  RecordOptions forced;
  forced.force = true;
  EXPECT_NO_THROW(record(signal_mode(), reference_mode(),
                         period * period / kLambda, m, kLambda, forced));
}

TEST(CouplingStrength, QuarterWaveGivesUnitEfficiency) {
  const GratingSpec g = paper_grating(1.0);
  EXPECT_NEAR(coupling_strength(g), kPi / 2, 1e-12);
  EXPECT_NEAR(diffraction_efficiency(coupling_strength(g), 0.0), 1.0, 1e-12);
}

TEST(CouplingStrength, LinearInThicknessAndModulation) {
  GratingSpec g = paper_grating();
  const double nu = coupling_strength(g);
  g.thickness *= 2.0;
  EXPECT_NEAR(coupling_strength(g), 2.0 * nu, 1e-12);
  g.material.index_modulation *= 1.5;
  EXPECT_NEAR(coupling_strength(g), 3.0 * nu, 1e-12);
}

TEST(CouplingStrength, CalibratedToPresetEfficiency) {
  const GratingSpec g = paper_grating(0.88);
  EXPECT_NEAR(coupling_strength(g), 1.2171, 1e-4);
  EXPECT_NEAR(std::asin(std::sqrt(0.88)), coupling_strength(g), 1e-12);
}

TEST(CouplingStrength, EfficiencyOverrideWins) {
  GratingSpec g = paper_grating(0.5);
  g.efficiency = 0.93;
  EXPECT_NEAR(std::pow(std::sin(effective_coupling(g)), 2), 0.93, 1e-12);
  EXPECT_THROW(index_modulation_for_efficiency(signal_mode(), reference_mode(),
                                               kD, 1.49, kLambda, 1.2),
               Error);
}

TEST(DiffractionEfficiency, Examples) {
  EXPECT_NEAR(diffraction_efficiency(kPi / 2, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(diffraction_efficiency(kPi, 0.0), 0.0, 1e-15);
  EXPECT_NEAR(diffraction_efficiency(std::asin(std::sqrt(0.93)), 0.0), 0.93,
              1e-12);
  EXPECT_EQ(diffraction_efficiency(0.0, 3.0), 0.0);
  EXPECT_THROW(diffraction_efficiency(-0.1, 0.0), Error);
}

TEST(DiffractionEfficiency, MatchesCoupledWaveIntegration) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> nu(0.05, 4.0);
  std::uniform_real_distribution<double> xi(-6.0, 6.0);
  for (int i = 0; i < 60; ++i) {
    const double n = nu(rng);
    const double x = xi(rng);
    const auto [r, s] = oracle::coupled_waves(n, x);
    EXPECT_NEAR(diffraction_efficiency(n, x), std::norm(s), 1e-9);
    const CouplerAmplitudes a = coupler_amplitudes(n, x);
    EXPECT_NEAR(std::abs(a.through - r), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(-Complex(0, 1) * a.diffracted - s), 0.0, 1e-9);
  }
}

TEST(DiffractionEfficiency, EvenAndBoundedByOnBragg) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> nu(0.0, 5.0);
  std::uniform_real_distribution<double> xi(-20.0, 20.0);
  for (int i = 0; i < 1000; ++i) {
    const double n = nu(rng);
    const double x = xi(rng);
    const double e = diffraction_efficiency(n, x);
    EXPECT_GE(e, 0.0);
    EXPECT_LE(e, 1.0);
    EXPECT_NEAR(e, diffraction_efficiency(n, -x), 1e-14);
    // The on-Bragg bound only holds on the undermodulated branch.
    if (n <= kPi / 2) EXPECT_LE(e, diffraction_efficiency(n, 0.0) + 1e-14);
  }
  // Past pi/2 detuning can beat the on-Bragg value.
  EXPECT_GT(diffraction_efficiency(kPi, 1.0), diffraction_efficiency(kPi, 0.0));
}

TEST(Detuning, ZeroOnBragg) {
  const GratingSpec g = paper_grating();
  EXPECT_EQ(detuning(g, g.signal), 0.0);
  EXPECT_EQ(detuning(g, g.reference, Port::kReference), 0.0);
  const CoupledModeResponse r = response(g, g.signal);
  EXPECT_NEAR(r.efficiency, 0.88, 1e-12);
}

TEST(Detuning, OddAndLinearForSmallTilt) {
  const GratingSpec g = paper_grating();
  const double d = 1e-6;
  const double plus = detuning(g, tilted_port_mode(g, d));
  const double minus = detuning(g, tilted_port_mode(g, -d));
  const double twice = detuning(g, tilted_port_mode(g, 2 * d));
  EXPECT_NE(plus, 0.0);
  EXPECT_NEAR(minus / plus, -1.0, 1e-4);
  EXPECT_NEAR(twice / plus, 2.0, 1e-4);
}

TEST(Detuning, RigidTiltIsOppositeAtThePorts) {
  const GratingSpec g = paper_grating();
  const double d = 1e-6;
  const double at_signal = detuning(g, tilted_port_mode(g, d, Port::kSignal));
  // tilted_port_mode turns each port towards the other beam, so the same
  // rigid rotation is -d at the reference port.
  const double at_reference = detuning(
      g, tilted_port_mode(g, -d, Port::kReference), Port::kReference);
  EXPECT_LT(at_signal * at_reference, 0.0);
  EXPECT_NEAR(at_signal / at_reference, -1.0, 5e-2);
}

TEST(Detuning, RejectsOtherWavenumber) {
  const GratingSpec g = paper_grating();
  PlaneWaveState s = g.signal;
  s.wavenumber *= 2;
  EXPECT_EQ(code_of([&] { detuning(g, s); }), ErrorCode::kMismatchedWavenumber);
}

ConeBasis basis4() { return make_cone_basis(4, deg(4.41), deg(23.61), kK); }

GratingSpec on_basis(const ConeBasis& b, const std::string& s,
                     const std::string& r, double phase = 0.0) {
  Material m;
  m.index_modulation = 1e-4;
  RecordOptions o;
  o.recording_phase = phase;
  return record(b.mode(s), b.mode(r), kD, m, kLambda, o);
}

TEST(GratingOperator, IdealUnitEfficiencyIsTheSwap) {
  const ConeBasis b = basis4();
  OperatorOptions o;
  o.efficiency = 1.0;
  o.convention = PhaseConvention::kIdeal;
  const ModeOperator u = grating_operator(on_basis(b, "S3", "R4"), b, o);
  // |S1><S1| + |S2><S2| + |R4><S3| + |S3><R4| + remaining references fixed.
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Identity(8, 8);
  want(2, 2) = 0.0;
  want(7, 7) = 0.0;
  want(7, 2) = 1.0;
  want(2, 7) = 1.0;
  EXPECT_LT((u.matrix() - want).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((oracle::matmul(u.matrix(), u.matrix()) -
             Eigen::MatrixXcd::Identity(8, 8))
                .cwiseAbs()
                .maxCoeff(),
            1e-15);
}

TEST(GratingOperator, ZeroEfficiencyIsIdentity) {
  const ConeBasis b = basis4();
  OperatorOptions o;
  o.efficiency = 0.0;
  const ModeOperator u = grating_operator(on_basis(b, "S1", "R2"), b, o);
  EXPECT_LT((u.matrix() - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(GratingOperator, PhysicalConventionAtPresetEfficiency) {
  const ConeBasis b = basis4();
  OperatorOptions o;
  o.efficiency = 0.88;
  const ModeOperator u = grating_operator(on_basis(b, "S3", "R4", 0.7), b, o);
  EXPECT_TRUE(u.is_unitary(1e-12));
  EXPECT_NEAR(std::norm(u.matrix()(7, 2)), 0.88, 1e-12);
  EXPECT_NEAR(std::norm(u.matrix()(2, 7)), 0.88, 1e-12);
  EXPECT_NEAR(std::arg(u.matrix()(7, 2)), -kPi / 2 - 0.7, 1e-12);
}

TEST(GratingOperator, IdealConventionIsOnlyUnitaryAtTheEnds) {
  const ConeBasis b = basis4();
  OperatorOptions o;
  o.convention = PhaseConvention::kIdeal;
  o.efficiency = 0.5;
  EXPECT_FALSE(grating_operator(on_basis(b, "S1", "R1"), b, o).is_unitary(1e-3));
}

TEST(GratingOperator, SwappedRecordingGivesTranspose) {
  const ConeBasis b = basis4();
  OperatorOptions o;
  o.efficiency = 0.6;
  o.convention = PhaseConvention::kIdeal;
  const ModeOperator fwd = grating_operator(on_basis(b, "S2", "R3", 0.4), b, o);
  const ModeOperator back = grating_operator(on_basis(b, "R3", "S2", 0.4), b, o);
  EXPECT_LT((back.matrix() - fwd.matrix().transpose()).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(GratingOperator, Errors) {
  const ConeBasis b = basis4();
  const ConeBasis other = make_cone_basis(4, deg(3.0), deg(20.0), kK);
  const GratingSpec g = on_basis(other, "S1", "R2");
  EXPECT_EQ(code_of([&] { grating_operator(g, b); }), ErrorCode::kUnknownMode);
  OperatorOptions o;
  o.mode_detunings = {0.0, 1.0};
  EXPECT_EQ(code_of([&] { grating_operator(on_basis(b, "S1", "R2"), b, o); }),
            ErrorCode::kSizeMismatch);
  OperatorOptions bad;
  bad.efficiency = 1.5;
  EXPECT_EQ(code_of([&] { grating_operator(on_basis(b, "S1", "R2"), b, bad); }),
            ErrorCode::kInvalidArgument);
}

TEST(GratingOperator, RandomGratingsAreUnitary) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, 7);
  const ConeBasis b = basis4();
  const std::vector<std::string> labels = b.labels();
  for (int i = 0; i < 1000; ++i) {
    std::size_t s = pick(rng);
    std::size_t r = pick(rng);
    while (r == s) r = pick(rng);
    OperatorOptions o;
    o.efficiency = unit(rng);
    o.mode_detunings.assign(8, 0.0);
    const double xi = 6.0 * (unit(rng) - 0.5);
    o.mode_detunings[s] = xi;
    o.mode_detunings[r] = -xi;
    const ModeOperator u = grating_operator(
        on_basis(b, labels[s], labels[r], 2 * kPi * unit(rng)), b, o);
    EXPECT_TRUE(u.is_unitary(1e-12)) << u.unitarity_error();
  }
}

TEST(CouplerBlock, MismatchedPortDetuningLosesEnergy) {
  CouplerSettings s;
  s.coupling = 1.0;
  s.signal_port_detuning = 1.5;
  s.reference_port_detuning = 0.0;
  const Eigen::Matrix2cd m = coupler_block(s);
  EXPECT_GT((m.adjoint() * m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(),
            1e-3);
  s.reference_port_detuning = -1.5;
  const Eigen::Matrix2cd u = coupler_block(s);
  EXPECT_LT((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(),
            1e-14);
}

// Half-maximum width from a dense sweep with linear interpolation.
double brute_force_fwhm(const GratingSpec& g) {
  const double step = 2e-7;
  const int half = 50000;
  std::vector<double> offsets;
  for (int i = -half; i <= half; ++i) offsets.push_back(i * step);
  const auto curve = selectivity_curve(g, offsets);
  std::size_t peak = 0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (curve[i].second > curve[peak].second) peak = i;
  }
  const double level = 0.5 * curve[peak].second;
  auto cross = [&](int dir) {
    std::size_t i = peak;
    while (true) {
      const std::size_t j = dir > 0 ? i + 1 : i - 1;
      if (curve[j].second < level) {
        const double t = (curve[i].second - level) /
                         (curve[i].second - curve[j].second);
        return curve[i].first + t * (curve[j].first - curve[i].first);
      }
      i = j;
    }
  };
  return cross(+1) - cross(-1);
}

TEST(FwhmSelectivity, MatchesDenseSweep) {
  const GratingSpec g = paper_grating();
  const double w = fwhm_selectivity(g);
  EXPECT_GT(w, 0.0);
  EXPECT_NEAR(w / brute_force_fwhm(g), 1.0, 1e-4);
}

TEST(FwhmSelectivity, ScalesInverselyWithThickness) {
  const GratingSpec thin = paper_grating(0.88, kD);
  const GratingSpec thick = paper_grating(0.88, 2 * kD);
  EXPECT_NEAR(fwhm_selectivity(thin) / fwhm_selectivity(thick), 2.0, 0.05);
}

TEST(FwhmSelectivity, Errors) {
  GratingSpec g = paper_grating();
  g.material.index_modulation = 0.0;
  EXPECT_EQ(code_of([&] { fwhm_selectivity(g); }), ErrorCode::kInvalidArgument);

  Material m;
  m.index_modulation = 0.05;
  RecordOptions forced;
  forced.force = true;
  const GratingSpec flat =
      record(signal_mode(), reference_mode(), 1e-6, m, kLambda, forced);
  EXPECT_EQ(code_of([&] { fwhm_selectivity(flat); }), ErrorCode::kNonconvergent);
}

TEST(SelectivityCurve, PeaksOnBragg) {
  const GratingSpec g = paper_grating();
  const double offsets[] = {-1e-3, 0.0, 1e-3};
  const auto c = selectivity_curve(g, offsets);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_NEAR(c[1].second, 0.88, 1e-12);
  EXPECT_LT(c[0].second, c[1].second);
  EXPECT_LT(c[2].second, c[1].second);
}

}  // namespace
}  // namespace gratestack
