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

#include "antideg/games.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "antideg/sdp.hpp"

namespace antideg {

namespace {
// Completion keeps the scaled family strictly inside the identity.
constexpr double kCompletionSlack = 1e-9;
constexpr double kPositivitySlack = 1e-12;
}  // namespace

void validate_ensemble(const Ensemble& e, const Tolerances& tol) {
  if (e.dim <= 0) throw std::invalid_argument("ensemble dimension must be positive");
  if (e.items.empty()) throw std::invalid_argument("ensemble must be non-empty");
  double total = 0.0;
  for (const auto& it : e.items) {
    if (it.p < -tol.clamp_floor)
      throw std::invalid_argument("ensemble probabilities must be non-negative");
    total += it.p;
    if (it.rho.rows() != e.dim || it.rho.cols() != e.dim)
      throw std::invalid_argument("ensemble state has wrong dimension");
    if (!is_hermitian(it.rho, tol.validation))
      throw std::invalid_argument("ensemble state is not Hermitian");
    if (min_eigenvalue(it.rho) < -tol.validation)
      throw std::invalid_argument("ensemble state is not positive semidefinite");
    if (std::abs(it.rho.trace().real() - 1.0) > tol.validation)
      throw std::invalid_argument("ensemble state must have unit trace");
  }
  if (std::abs(total - 1.0) > tol.validation)
    throw std::invalid_argument("ensemble probabilities must sum to one");
}

void validate_povm(const Povm& p, const Tolerances& tol) {
  if (p.dim <= 0) throw std::invalid_argument("POVM dimension must be positive");
  if (p.elements.empty()) throw std::invalid_argument("POVM must be non-empty");
  CMat sum = cmat_zero(p.dim, p.dim);
  for (const CMat& el : p.elements) {
    if (el.rows() != p.dim || el.cols() != p.dim)
      throw std::invalid_argument("POVM element has wrong dimension");
    if (!is_hermitian(el, tol.validation))
      throw std::invalid_argument("POVM element is not Hermitian");
    if (min_eigenvalue(el) < -tol.validation)
      throw std::invalid_argument("POVM element is not positive semidefinite");
    sum += el;
  }
  if ((sum - cmat_identity(p.dim)).cwiseAbs().maxCoeff() > tol.validation)
    throw std::invalid_argument("POVM elements do not sum to the identity");
}

void validate_state(const BipartiteState& s, const Tolerances& tol) {
  if (s.dim_a <= 0 || s.dim_b <= 0)
    throw std::invalid_argument("state dimensions must be positive");
  const int n = s.dim_a * s.dim_b;
  if (s.matrix.rows() != n || s.matrix.cols() != n)
    throw std::invalid_argument("state matrix size does not match dimensions");
  if (!is_hermitian(s.matrix, tol.validation))
    throw std::invalid_argument("state is not Hermitian");
  if (min_eigenvalue(s.matrix) < -tol.validation)
    throw std::invalid_argument("state is not positive semidefinite");
  if (std::abs(s.matrix.trace().real() - 1.0) > tol.validation)
    throw std::invalid_argument("state must have unit trace");
}

BipartiteState max_entangled(int d) {
  if (d <= 0) throw std::invalid_argument("dimension must be positive");
  CVec v = CVec::Zero(d * d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) v(i * d + i) = a;
  return BipartiteState{d, d, projector(v)};
}

CMat weyl_unitary(int d, int a, int b) {
  if (d <= 0) throw std::invalid_argument("dimension must be positive");
  CMat u = cmat_zero(d, d);
  const double w = 2.0 * std::numbers::pi / static_cast<double>(d);
  for (int j = 0; j < d; ++j)
    u((j + a) % d, j) = std::exp(cxd(0.0, w * static_cast<double>(b * j)));
  return u;
}

Povm bell_povm(int d) {
  const BipartiteState phi = max_entangled(d);
  const CMat eye = cmat_identity(d);
  Povm out;
  out.dim = d * d;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const CMat u = tensor(weyl_unitary(d, a, b), eye);
      out.elements.push_back(u * phi.matrix * u.adjoint());
    }
  return out;
}

std::vector<CMat> tomography_frame(int d) {
  if (d <= 0) throw std::invalid_argument("dimension must be positive");
  std::vector<CMat> ops;
  for (int i = 0; i < d; ++i) ops.push_back(projector(basis_ket(d, i)));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      CVec plus = inv_sqrt2 * (basis_ket(d, i) + basis_ket(d, j));
      CVec right = inv_sqrt2 * (basis_ket(d, i) + cxd(0, 1) * basis_ket(d, j));
      ops.push_back(projector(plus));
      ops.push_back(projector(right));
    }
  return ops;
}

Povm complete_povm_from_positive_ops(int dim, const std::vector<CMat>& ops) {
  if (dim <= 0) throw std::invalid_argument("dimension must be positive");
  if (ops.empty()) throw std::invalid_argument("operator family must be non-empty");
  CMat sum = cmat_zero(dim, dim);
  for (const CMat& op : ops) {
    if (op.rows() != dim || op.cols() != dim)
      throw std::invalid_argument("operator has wrong dimension");
    if (!is_hermitian(op, kDefaultTol.validation))
      throw std::invalid_argument("operator is not Hermitian");
    if (min_eigenvalue(op) < -kDefaultTol.validation)
      throw std::invalid_argument("operator is not positive semidefinite");
    sum += op;
  }
  const double norm = op_norm(sum);
  if (norm <= kDefaultTol.clamp_floor)
    throw std::invalid_argument("operator family sums to zero");

  const double lambda = (1.0 - kCompletionSlack) / norm;
  Povm out;
  out.dim = dim;
  for (const CMat& op : ops) out.elements.push_back(lambda * op);
  const CMat rest = cmat_identity(dim) - lambda * sum;
  if (op_norm(rest) > kDefaultTol.clamp_floor) out.elements.push_back(rest);
  validate_povm(out);
  return out;
}

Povm ic_povm(int d) {
  if (d <= 0) throw std::invalid_argument("dimension must be positive");
  if (d == 1) return Povm{1, {cmat_identity(1)}};
  return complete_povm_from_positive_ops(d, tomography_frame(d));
}

Povm renormalized_povm(const Povm& p) {
  if (p.dim <= 0 || p.elements.empty())
    throw std::invalid_argument("POVM must have a dimension and elements");
  CMat sum = cmat_zero(p.dim, p.dim);
  for (const CMat& el : p.elements) sum += el;
  const CMat fix = inv_sqrt_psd(herm_part(sum));
  Povm out;
  out.dim = p.dim;
  out.elements.reserve(p.elements.size());
  for (const CMat& el : p.elements)
    out.elements.push_back(herm_part(fix * el * fix));
  return out;
}

CMat steer(const BipartiteState& rho, const CMat& op_on_a) {
  const int da = rho.dim_a;
  const int db = rho.dim_b;
  if (op_on_a.rows() != da || op_on_a.cols() != da)
    throw std::invalid_argument("operator dimension mismatch");
  CMat out = cmat_zero(db, db);
  for (int k = 0; k < db; ++k)
    for (int l = 0; l < db; ++l) {
      cxd acc = 0.0;
      for (int i = 0; i < da; ++i)
        for (int ip = 0; ip < da; ++ip)
          acc += op_on_a(i, ip) * rho.matrix(ip * db + k, i * db + l);
      out(k, l) = acc;
    }
  return out;
}

Ensemble ensemble_from_povm(const Povm& p, const Channel& c) {
  validate_povm(p);
  if (p.dim != c.dim_in())
    throw std::invalid_argument("POVM dimension must match the channel input");
  const double d = static_cast<double>(p.dim);
  Ensemble e;
  e.dim = p.dim;
  for (const CMat& el : p.elements) {
    const double weight = el.trace().real() / d;
    if (weight <= kDefaultTol.clamp_floor) continue;
    Ensemble::Item it;
    it.p = weight;
    it.rho = el.transpose() / el.trace().real();
    e.items.push_back(std::move(it));
  }
  validate_ensemble(e);
  return e;
}

Povm povm_from_ensemble(const Ensemble& e, const Tolerances& tol) {
  validate_ensemble(e, tol);
  const double d = static_cast<double>(e.dim);
  CMat avg = cmat_zero(e.dim, e.dim);
  for (const auto& it : e.items) avg += it.p * it.rho;
  if ((avg - cmat_identity(e.dim) / d).cwiseAbs().maxCoeff() > tol.validation)
    throw std::invalid_argument(
        "ensemble average must be maximally mixed to steer from a POVM");
  Povm p;
  p.dim = e.dim;
  for (const auto& it : e.items)
    p.elements.push_back(d * it.p * it.rho.transpose());
  validate_povm(p, tol);
  return p;
}

ObservableFamily observables_from_utility(const Povm& p, const Utility& u) {
  validate_povm(p);
  const auto nx = static_cast<Eigen::Index>(p.elements.size());
  if (u.values.rows() != nx)
    throw std::invalid_argument("utility rows must match the POVM outcome count");
  if (u.values.cols() <= 0)
    throw std::invalid_argument("utility must have at least one column");
  ObservableFamily obs;
  obs.dim = p.dim;
  for (Eigen::Index y = 0; y < u.values.cols(); ++y) {
    CMat o = cmat_zero(p.dim, p.dim);
    for (Eigen::Index x = 0; x < nx; ++x)
      o += u.values(x, y) * p.elements[static_cast<std::size_t>(x)];
    obs.elements.push_back(std::move(o));
  }
  return obs;
}

PovmFromObservables povm_from_observables(const ObservableFamily& obs) {
  if (obs.dim <= 0 || obs.elements.empty())
    throw std::invalid_argument("observable family must be non-empty");
  const int nx = static_cast<int>(obs.elements.size());
  CMat sigma = cmat_zero(obs.dim, obs.dim);
  for (const CMat& o : obs.elements) {
    if (o.rows() != obs.dim || o.cols() != obs.dim)
      throw std::invalid_argument("observable has wrong dimension");
    if (!is_hermitian(o, kDefaultTol.validation))
      throw std::invalid_argument("observable is not Hermitian");
    sigma += o;
  }

  double lambda = 0.0;
  for (const CMat& o : obs.elements) {
    const CMat shifted = o - sigma / static_cast<double>(nx);
    lambda = std::max(lambda, -min_eigenvalue(shifted));
  }
  lambda += kPositivitySlack;

  PovmFromObservables conv;
  conv.lambda = lambda;
  conv.sigma = sigma;
  conv.povm.dim = obs.dim;
  const double scale = 1.0 / (lambda * static_cast<double>(nx));
  for (const CMat& o : obs.elements)
    conv.povm.elements.push_back(
        scale * (o + lambda * cmat_identity(obs.dim) -
                 sigma / static_cast<double>(nx)));
  validate_povm(conv.povm);
  return conv;
}

ObservableFamily observables_from_povm(const PovmFromObservables& conv) {
  const int nx = static_cast<int>(conv.povm.elements.size());
  if (nx == 0) throw std::invalid_argument("conversion holds no POVM");
  ObservableFamily obs;
  obs.dim = conv.povm.dim;
  for (const CMat& el : conv.povm.elements)
    obs.elements.push_back(conv.lambda * static_cast<double>(nx) * el -
                           conv.lambda * cmat_identity(conv.povm.dim) +
                           conv.sigma / static_cast<double>(nx));
  return obs;
}

namespace {

std::vector<CMat> steer_family(const BipartiteState& rho,
                               const std::vector<CMat>& ops) {
  std::vector<CMat> out;
  out.reserve(ops.size());
  for (const CMat& op : ops) out.push_back(herm_part(steer(rho, op)));
  return out;
}

}  // namespace

std::pair<double, Povm> static_guessing_payoff(const BipartiteState& rho,
                                               const Povm& p,
                                               const SolverConfig& cfg) {
  validate_state(rho);
  validate_povm(p);
  if (p.dim != rho.dim_a)
    throw std::invalid_argument("POVM must act on the A side of the state");
  return discrimination_sdp(steer_family(rho, p.elements), cfg);
}

double decision_game_payoff(const BipartiteState& rho,
                            const ObservableFamily& obs,
                            const SolverConfig& cfg) {
  validate_state(rho);
  if (obs.dim != rho.dim_a)
    throw std::invalid_argument("observables must act on the A side");
  for (const CMat& o : obs.elements)
    if (!is_hermitian(o, kDefaultTol.validation))
      throw std::invalid_argument("observable is not Hermitian");
  return discrimination_sdp(steer_family(rho, obs.elements), cfg).first;
}

double decision_problem_payoff(const BipartiteState& rho, const Povm& p,
                               const Utility& u, const SolverConfig& cfg) {
  validate_state(rho);
  validate_povm(p);
  if (p.dim != rho.dim_a)
    throw std::invalid_argument("POVM must act on the A side of the state");
  const auto nx = static_cast<Eigen::Index>(p.elements.size());
  if (u.values.rows() != nx)
    throw std::invalid_argument("utility rows must match the POVM outcome count");

  const std::vector<CMat> steered = steer_family(rho, p.elements);
  std::vector<CMat> coeffs;
  for (Eigen::Index y = 0; y < u.values.cols(); ++y) {
    CMat c = cmat_zero(rho.dim_b, rho.dim_b);
    for (Eigen::Index x = 0; x < nx; ++x)
      c += u.values(x, y) * steered[static_cast<std::size_t>(x)];
    coeffs.push_back(std::move(c));
  }
  return discrimination_sdp(coeffs, cfg).first;
}

double helstrom(double p0, const CMat& rho0, double p1, const CMat& rho1) {
  return 0.5 * (1.0 + trace_norm(p0 * rho0 - p1 * rho1));
}

}  // namespace antideg
