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


// Independent reference computations for the tests. Nothing here calls the
// library's own closed forms.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(
    int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

/// (1/D^2) \int\int conj(e^{i ka.r}) e^{i kb.r} dx dy over [-D/2, D/2]^2,
/// with `panels` Gauss-Legendre panels of `order` nodes per axis.
inline Complex overlap_quadrature(double kax, double kay, double kbx,
                                  double kby, double d, int panels = 16,
                                  int order = 24) {
  const auto [x, w] = gauss_legendre(order);
  const double h = d / panels;
  std::vector<double> nodes;
  std::vector<double> weights;
  for (int p = 0; p < panels; ++p) {
    const double mid = -0.5 * d + (p + 0.5) * h;
    for (std::size_t i = 0; i < x.size(); ++i) {
      nodes.push_back(mid + 0.5 * h * x[i]);
      weights.push_back(0.5 * h * w[i]);
    }
  }
  Complex ix{};
  Complex iy{};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    ix += weights[i] * std::exp(Complex{0.0, (kbx - kax) * nodes[i]});
    iy += weights[i] * std::exp(Complex{0.0, (kby - kay) * nodes[i]});
  }
  return ix * iy / (d * d);
}

/// Triple-loop product.
inline Eigen::MatrixXcd matmul(const Eigen::MatrixXcd& a,
                               const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      Complex s{};
      for (Eigen::Index k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  }
  return c;
}

/// Two-wave coupled equations through a normalized thickness,
///   R' = -i nu S,   S' = -i nu R + 2 i xi S,
/// integrated with classical RK4 from (R, S) = (1, 0).
inline std::pair<Complex, Complex> coupled_waves(double nu, double xi,
                                                 int steps = 4000) {
  const Complex i{0.0, 1.0};
  auto f = [&](Complex r, Complex s) {
    return std::pair<Complex, Complex>{-i * nu * s, -i * nu * r + 2.0 * i * xi * s};
  };
  Complex r{1.0, 0.0};
  Complex s{0.0, 0.0};
  const double h = 1.0 / steps;
  for (int k = 0; k < steps; ++k) {
    const auto [r1, s1] = f(r, s);
    const auto [r2, s2] = f(r + 0.5 * h * r1, s + 0.5 * h * s1);
    const auto [r3, s3] = f(r + 0.5 * h * r2, s + 0.5 * h * s2);
    const auto [r4, s4] = f(r + h * r3, s + h * s3);
    r += h / 6.0 * (r1 + 2.0 * r2 + 2.0 * r3 + r4);
    s += h / 6.0 * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
  }
  return {r, s};
}

/// Permutation matrix from an image list, built entry by entry.
inline Eigen::MatrixXcd permutation(const std::vector<std::size_t>& image) {
  const auto n = static_cast<Eigen::Index>(image.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    m(static_cast<Eigen::Index>(image[static_cast<std::size_t>(c)]), c) = 1.0;
  }
  return m;
}

inline Eigen::VectorXcd random_state(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex{g(rng), g(rng)};
  return v / v.norm();
}

}  // namespace oracle
