// Copyright 2026 the antideg authors
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

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "antideg/channels.hpp"
#include "antideg/games.hpp"
#include "antideg/matkernel.hpp"

namespace antideg {

// Deterministic random source. mt19937_64 has a sequence pinned by the
// standard, and all derived transforms below are hand-rolled, so a seed
// reproduces results bitwise on every platform (identifier in reports:
// "mt19937_64/53-bit"). std::distributions are avoided on purpose — their
// output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1) with 53 bits of mantissa.
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (the cosine branch only, for simplicity).
  double gaussian() {
    double u = uniform();
    while (u == 0.0) u = uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
  }

  // Index sampled from a finite distribution via inverse CDF. Weights need
  // not be perfectly normalized; the tail index absorbs rounding.
  int sample(const std::vector<double>& weights) {
    const double u = uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
  }

  CMat gaussian_matrix(int rows, int cols) {
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = cxd(gaussian(), gaussian());
    return m;
  }

  // Haar-ish isometry of shape rows×cols (rows ≥ cols) via QR.
  CMat isometry(int rows, int cols) {
    const CMat g = gaussian_matrix(rows, cols);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    CMat q = Eigen::MatrixXcd(qr.householderQ()).leftCols(cols);
    return q;
  }

  CMat unitary(int d) { return isometry(d, d); }

  // Random density matrix, full rank almost surely.
  CMat density(int d) {
    const CMat g = gaussian_matrix(d, d);
    CMat rho = g * g.adjoint();
    rho /= rho.trace().real();
    return herm_part(rho);
  }

  // Random channel from a Haar-ish Stinespring isometry with dim_env
  // environment dimensions (defaults to dim_out).
  Channel channel(int dim_in, int dim_out, int dim_env = 0) {
    if (dim_env <= 0) dim_env = dim_out;
    const CMat v = isometry(dim_out * dim_env, dim_in);
    std::vector<CMat> kraus;
    kraus.reserve(static_cast<std::size_t>(dim_env));
    for (int e = 0; e < dim_env; ++e) {
      CMat k(dim_out, dim_in);
      for (int b = 0; b < dim_out; ++b)
        for (int i = 0; i < dim_in; ++i) k(b, i) = v(b * dim_env + e, i);
      kraus.push_back(std::move(k));
    }
    return Channel::from_kraus(KrausRep{dim_in, dim_out, std::move(kraus)});
  }

  // Random full POVM with `outcomes` elements: Gram-normalized Wishart ops.
  Povm povm(int dim, int outcomes) {
    std::vector<CMat> raw;
    CMat total = cmat_zero(dim, dim);
    for (int x = 0; x < outcomes; ++x) {
      const CMat g = gaussian_matrix(dim, dim);
      raw.push_back(herm_part(g * g.adjoint()) +
                    1e-6 * cmat_identity(dim));
      total += raw.back();
    }
    const CMat fix = inv_sqrt_psd(total);
    Povm out;
    out.dim = dim;
    for (CMat& op : raw) out.elements.push_back(herm_part(fix * op * fix));
    return out;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace antideg
