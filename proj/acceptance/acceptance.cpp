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


// Acceptance suite. Prints one PASS/FAIL line per criterion; exits non-zero
// when any selected criterion fails. `--only N` runs a single criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "gratestack/error.hpp"
#include "gratestack/grating.hpp"
#include "gratestack/lm_basis.hpp"
#include "gratestack/presets.hpp"
#include "gratestack/stack.hpp"
#include "gratestack/tomography.hpp"
#include "oracles.hpp"

namespace {

using namespace gratestack;

constexpr double kPi = std::numbers::pi;
constexpr double kLambda = 532e-9;
constexpr double kK = 2.0 * kPi / kLambda;

// Pinned tolerances.
constexpr double kGateTol = 1e-12;
constexpr double kGateSeconds = 1.0;
constexpr double kTableTol = 0.05;
constexpr double kTableSeconds = 10.0;
constexpr double kKogelnikTol = 1e-12;
constexpr double kKogelnikSeconds = 1.0;
constexpr double kUnitaryTol = 1e-12;
constexpr double kNormTol = 1e-10;
constexpr double kOffDiagonalTol = 1e-10;
constexpr double kDiagonalTol = 1e-8;
constexpr double kSelectivityTarget = 2.4e-3;
constexpr double kSelectivityBand = 0.30;
constexpr double kStackingTol = 1e-12;
constexpr double kPermutationTol = 1e-12;
constexpr double kPermutationSeconds = 5.0;
constexpr double kRoundTripTol = 0.02;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), f, a, b);
  return buf;
}

double deg(double d) { return d * kPi / 180.0; }

Outcome ideal_gate() {
  const auto t0 = Clock::now();
  const StackRecipe r = cnot_recipe(presets::paper_basis(), presets::paper_parameters());
  const Eigen::MatrixXcd block = ideal_composition(r).signal_block(4);
  Eigen::MatrixXcd want(4, 4);
  want << 1, 0, 0, 0,
          0, 1, 0, 0,
          0, 0, 0, 1,
          0, 0, 1, 0;
  const double err = (block - want).cwiseAbs().maxCoeff();
  const double dt = seconds_since(t0);
  return {err <= kGateTol && dt < kGateSeconds,
          fmt("max |U - CNOT| = %.3e, %.3f s", err, dt)};
}

Outcome table_reproduction() {
  const auto t0 = Clock::now();
  const StackRecipe r = presets::paper_cnot();
  const TomographyTable paper = presets::paper_table();
  const CalibrationResult fit = fit_calibration(paper, r);
  const TomographyTable sim = run_tomography(r, fit.model);
  const double err = (sim.intensities - paper.intensities).cwiseAbs().maxCoeff();
  const auto sums = column_sums(sim);
  const double sum_err =
      std::max(std::abs(sums[2].sum - 0.93), std::abs(sums[3].sum - 0.85));
  const double dt = seconds_since(t0);
  Outcome o;
  o.pass = err <= kTableTol && sum_err <= kTableTol && dt < kTableSeconds;
  o.detail = fmt("max entry error %.4f, ", err) +
             fmt("column sums %.4f/", sums[2].sum) + fmt("%.4f, ", sums[3].sum) +
             fmt("eta %.3f/%.3f, ", fit.parameters.eta_a, fit.parameters.eta_b) +
             fmt("%.2f s", dt);
  return o;
}

Outcome kogelnik() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> nu_dist(0.0, 3.0 * kPi);
  std::uniform_real_distribution<double> xi_dist(-20.0, 20.0);
  double err = std::abs(diffraction_efficiency(kPi / 2, 0.0) - 1.0);
  err = std::max(err, std::abs(diffraction_efficiency(kPi, 0.0)));
  for (int i = 0; i < 100; ++i) {
    const double nu = nu_dist(rng);
    err = std::max(err, std::abs(diffraction_efficiency(nu, 0.0) -
                                 std::pow(std::sin(nu), 2)));
  }
  // The on-Bragg bound holds on the undermodulated branch only.
  std::uniform_real_distribution<double> under(0.0, kPi / 2);
  bool shape_ok = true;
  for (int i = 0; i < 1000; ++i) {
    const double nu = under(rng);
    const double xi = xi_dist(rng);
    const double a = diffraction_efficiency(nu, xi);
    shape_ok = shape_ok && a == diffraction_efficiency(nu, -xi) &&
               a <= diffraction_efficiency(nu, 0.0) + kKogelnikTol &&
               a >= 0.0;
  }
  const double dt = seconds_since(t0);
  return {err <= kKogelnikTol && shape_ok && dt < kKogelnikSeconds,
          fmt("max identity error %.3e, ", err) +
              (shape_ok ? "even and bounded" : "shape violated") +
              fmt(", %.3f s", dt)};
}

GratingSpec random_grating(std::mt19937_64& rng, const ConeBasis& b,
                           std::size_t* a_out, std::size_t* b_out) {
  const std::vector<PlaneWaveState> states = b.states();
  std::uniform_int_distribution<std::size_t> pick(0, states.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t s = pick(rng);
  std::size_t r = pick(rng);
  while (r == s) r = pick(rng);
  Material m;
  m.index_modulation = 1e-4 * unit(rng);
  RecordOptions ro;
  ro.force = true;
  ro.recording_phase = 2.0 * kPi * unit(rng);
  if (unit(rng) < 0.5) ro.efficiency = unit(rng);
  if (a_out) *a_out = s;
  if (b_out) *b_out = r;
  return record(states[s], states[r], 0.5e-3 + 2e-3 * unit(rng), m, kLambda, ro);
}

ConeBasis random_basis(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double ts = deg(1.0 + 10.0 * unit(rng));
  return make_cone_basis(n, ts, ts + deg(5.0 + 30.0 * unit(rng)), kK);
}

Outcome unitarity() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const ConeBasis b = random_basis(rng, 2 + i % 5);
    std::size_t s = 0;
    std::size_t r = 0;
    const GratingSpec g = random_grating(rng, b, &s, &r);
    OperatorOptions oo;
    oo.mode_detunings.assign(b.total_modes(), 0.0);
    const double xi = 10.0 * unit(rng) - 5.0;
    oo.mode_detunings[s] = xi;
    oo.mode_detunings[r] = -xi;
    worst = std::max(worst, grating_operator(g, b, oo).unitarity_error());
  }
  double worst_norm = 0.0;
  std::uniform_int_distribution<int> count(0, 8);
  for (int i = 0; i < 100; ++i) {
    const ConeBasis b = random_basis(rng, 2 + i % 5);
    std::vector<ModeOperator> ops;
    const int n = count(rng);
    for (int k = 0; k < n; ++k) {
      ops.push_back(grating_operator(random_grating(rng, b, nullptr, nullptr), b));
    }
    const ModeOperator u = compose(ops, b.labels());
    const SuperpositionState in(
        b, oracle::random_state(rng, static_cast<Eigen::Index>(b.total_modes())));
    worst_norm = std::max(worst_norm, std::abs(apply(u, in).norm() - 1.0));
  }
  return {worst <= kUnitaryTol && worst_norm <= kNormTol,
          fmt("max |U^H U - I| = %.3e, max norm drift %.3e", worst, worst_norm)};
}

Outcome orthogonality() {
  const ConeBasis b = presets::paper_basis();
  const double waves = 8.0;
  const double d = waves * 2.0 * kPi / (b.wavenumber() * std::sin(b.signal_cone_angle()));
  double off = 0.0;
  double diag = 0.0;
  double lib = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const Eigen::Vector3d ka = wave_vector(b.signal(i));
      const Eigen::Vector3d kb = wave_vector(b.signal(j));
      const oracle::Complex q =
          oracle::overlap_quadrature(ka.x(), ka.y(), kb.x(), kb.y(), d, 32, 24);
      lib = std::max(lib, std::abs(q - mode_overlap(b.signal(i), b.signal(j), d)));
      if (i == j) {
        diag = std::max(diag, std::abs(std::abs(q) - 1.0));
      } else {
        off = std::max(off, std::abs(q));
      }
    }
  }
  return {off < kOffDiagonalTol && diag < kDiagonalTol && lib < kDiagonalTol,
          fmt("max off-diagonal %.3e, diagonal error %.3e", off, diag) +
              fmt(", library vs quadrature %.3e", lib)};
}

Outcome selectivity() {
  const double fwhm = fwhm_selectivity(presets::paper_grating());
  const double rel = std::abs(fwhm - kSelectivityTarget) / kSelectivityTarget;
  return {rel <= kSelectivityBand,
          fmt("fwhm %.4f mrad vs 2.4 mrad, relative deviation %.1f%%",
              fwhm * 1e3, rel * 100.0)};
}

Outcome stacking() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const ConeBasis b = random_basis(rng, 2 + i % 4);
    std::vector<std::size_t> idx(b.total_modes());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    std::shuffle(idx.begin(), idx.end(), rng);
    const std::vector<PlaneWaveState> states = b.states();
    Material m;
    m.index_modulation = 1e-4 * unit(rng);
    std::vector<GratingSpec> gs;
    for (std::size_t p = 0; p < 2; ++p) {
      RecordOptions ro;
      ro.force = true;
      ro.recording_phase = 2.0 * kPi * unit(rng);
      ro.efficiency = unit(rng);
      gs.push_back(record(states[idx[2 * p]], states[idx[2 * p + 1]], 1.64e-3, m,
                          kLambda, ro));
    }
    OperatorOptions oo;
    for (std::size_t k = 0; k < b.total_modes(); ++k) {
      oo.mode_detunings.push_back(4.0 * unit(rng) - 2.0);
    }
    const std::vector<ModeOperator> ops = {grating_operator(gs[0], b, oo),
                                           grating_operator(gs[1], b, oo)};
    const Eigen::MatrixXcd stacked = compose(ops, b.labels()).matrix();
    const Eigen::MatrixXcd joint = multiplexed_operator(gs, b, oo).matrix();
    worst = std::max(worst, (stacked - joint).cwiseAbs().maxCoeff());
  }
  return {worst <= kStackingTol, fmt("max |stacked - multiplexed| = %.3e", worst)};
}

Outcome permutations() {
  const auto t0 = Clock::now();
  const ConeBasis b = presets::paper_basis();
  const StackParameters p = presets::paper_parameters();
  std::vector<std::size_t> image = {0, 1, 2, 3};
  int count = 0;
  double worst_fidelity = 0.0;
  double worst_entry = 0.0;
  do {
    const Eigen::MatrixXcd target = oracle::permutation(image);
    const StackRecipe r = permutation_recipe(target, b, p);
    const Verification v = verify_recipe(r, kPermutationTol);
    worst_fidelity = std::max(worst_fidelity, std::abs(1.0 - v.fidelity));
    Eigen::MatrixXcd product = Eigen::MatrixXcd::Identity(8, 8);
    for (const GratingSpec& g : r.gratings) {
      product = oracle::matmul(ideal_operator(g, b).matrix(), product);
    }
    worst_entry = std::max(
        worst_entry, (product.topLeftCorner(4, 4) - target).cwiseAbs().maxCoeff());
    ++count;
  } while (std::next_permutation(image.begin(), image.end()));
  const double dt = seconds_since(t0);
  return {count == 24 && worst_fidelity <= kPermutationTol &&
              worst_entry <= kPermutationTol && dt < kPermutationSeconds,
          std::to_string(count) + " permutations, " +
              fmt("max 1 - F = %.3e, max entry error %.3e", worst_fidelity,
                  worst_entry) +
              fmt(", %.2f s", dt)};
}

Outcome round_trip() {
  const StackRecipe r = presets::paper_cnot();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> eta(0.55, 0.99);
  std::uniform_real_distribution<double> xi(0.0, 3.0);
  std::uniform_real_distribution<double> loss(0.9, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const CalibrationParameters truth{eta(rng), eta(rng), xi(rng), loss(rng)};
    const TomographyTable t = run_tomography(r, model_from_parameters(r, truth));
    const CalibrationResult fit = fit_calibration(t, r);
    worst = std::max({worst, std::abs(fit.parameters.eta_a - truth.eta_a),
                      std::abs(fit.parameters.eta_b - truth.eta_b)});
  }
  return {worst <= kRoundTripTol, fmt("20 models, max eta error %.3e", worst)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--only N]\n");
      return 2;
    }
  }
  const std::vector<Criterion> criteria = {
      {1, "ideal CNOT equality", ideal_gate},
      {2, "measured table reproduction", table_reproduction},
      {3, "Kogelnik identities", kogelnik},
      {4, "unitarity and norm preservation", unitarity},
      {5, "cone basis orthogonality", orthogonality},
      {6, "selectivity within 30% of 2.4 mrad", selectivity},
      {7, "stacking equals multiplexing", stacking},
      {8, "all 24 permutations synthesize", permutations},
      {9, "calibration round trip", round_trip},
  };
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  bool all = true;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("criterion %d: %s  %s (%s)\n", c.id, o.pass ? "PASS" : "FAIL",
                c.name, o.detail.c_str());
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
