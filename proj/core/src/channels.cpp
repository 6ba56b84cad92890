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

#include "antideg/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace antideg {

namespace {

void check_prob(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

Channel::Channel(int din, int dout, CMat choi)
    : dim_in_(din), dim_out_(dout), choi_(std::move(choi)) {}

Channel Channel::from_choi(int dim_in, int dim_out, CMat choi,
                           const Tolerances& tol) {
  if (dim_in <= 0 || dim_out <= 0)
    throw std::invalid_argument("channel dimensions must be positive");
  const int n = dim_in * dim_out;
  if (choi.rows() != n || choi.cols() != n)
    throw std::invalid_argument("Choi matrix size does not match dimensions");
  if (!is_finite(choi))
    throw std::invalid_argument("Choi matrix has non-finite entries");
  if (!is_hermitian(choi, tol.validation))
    throw std::invalid_argument("Choi matrix is not Hermitian");
  if (min_eigenvalue(choi) < -tol.validation)
    throw std::invalid_argument("Choi matrix is not positive semidefinite");
  if (std::abs(choi.trace().real() - 1.0) > tol.validation ||
      std::abs(choi.trace().imag()) > tol.validation)
    throw std::invalid_argument("Choi matrix must have unit trace");

  const CMat marg = partial_trace(choi, {{dim_in, dim_out}}, {0});
  const CMat want = cmat_identity(dim_in) / static_cast<double>(dim_in);
  if ((marg - want).cwiseAbs().maxCoeff() > tol.validation)
    throw std::invalid_argument(
        "Choi matrix is not trace-preserving (A-marginal is not I/d)");

  return Channel(dim_in, dim_out, herm_part(choi));
}

Channel Channel::from_kraus(const KrausRep& k, const Tolerances& tol) {
  if (k.dim_in <= 0 || k.dim_out <= 0)
    throw std::invalid_argument("channel dimensions must be positive");
  if (k.operators.empty())
    throw std::invalid_argument("Kraus family must be non-empty");
  CMat gram = cmat_zero(k.dim_in, k.dim_in);
  for (const CMat& op : k.operators) {
    if (op.rows() != k.dim_out || op.cols() != k.dim_in)
      throw std::invalid_argument("Kraus operator has wrong shape");
    if (!is_finite(op))
      throw std::invalid_argument("Kraus operator has non-finite entries");
    gram += op.adjoint() * op;
  }
  if ((gram - cmat_identity(k.dim_in)).cwiseAbs().maxCoeff() > tol.validation)
    throw std::invalid_argument("Kraus family is not trace-preserving");

  const int n = k.dim_in * k.dim_out;
  CMat choi = cmat_zero(n, n);
  for (const CMat& op : k.operators) {
    CVec v(n);  // v[(i,b)] = K(b,i), input index most significant
    for (int i = 0; i < k.dim_in; ++i)
      for (int b = 0; b < k.dim_out; ++b) v(i * k.dim_out + b) = op(b, i);
    choi += v * v.adjoint();
  }
  choi /= static_cast<double>(k.dim_in);
  return Channel(k.dim_in, k.dim_out, herm_part(choi));
}

KrausRep to_kraus(const Channel& c) {
  const int da = c.dim_in();
  const int db = c.dim_out();
  const EigResult eig = hermitian_eig(static_cast<double>(da) * c.choi());

  KrausRep rep;
  rep.dim_in = da;
  rep.dim_out = db;
  for (int m = 0; m < eig.values.size(); ++m) {
    if (eig.values(m) <= kDefaultTol.clamp_floor) continue;
    const double s = std::sqrt(eig.values(m));
    CMat op(db, da);
    for (int i = 0; i < da; ++i)
      for (int b = 0; b < db; ++b) op(b, i) = s * eig.vectors(i * db + b, m);
    rep.operators.push_back(std::move(op));
  }
  return rep;
}

StinespringRep stinespring(const Channel& c) {
  const KrausRep k = to_kraus(c);
  const int de = static_cast<int>(k.operators.size());

  StinespringRep rep;
  rep.dim_in = k.dim_in;
  rep.dim_out = k.dim_out;
  rep.dim_env = de;
  rep.isometry = cmat_zero(k.dim_out * de, k.dim_in);
  for (int e = 0; e < de; ++e)
    for (int b = 0; b < k.dim_out; ++b)
      for (int i = 0; i < k.dim_in; ++i)
        rep.isometry(b * de + e, i) = k.operators[static_cast<std::size_t>(e)](b, i);
  return rep;
}

Channel complementary(const Channel& c) {
  const KrausRep k = to_kraus(c);
  const int de = static_cast<int>(k.operators.size());

  // Tr_B[V ρ V†] has Kraus operators E_b with (E_b)_{e,i} = (K_e)_{b,i}.
  KrausRep env;
  env.dim_in = k.dim_in;
  env.dim_out = de;
  for (int b = 0; b < k.dim_out; ++b) {
    CMat op(de, k.dim_in);
    for (int e = 0; e < de; ++e)
      for (int i = 0; i < k.dim_in; ++i)
        op(e, i) = k.operators[static_cast<std::size_t>(e)](b, i);
    env.operators.push_back(std::move(op));
  }
  return Channel::from_kraus(env);
}

CMat apply(const Channel& c, const CMat& x) {
  const int da = c.dim_in();
  const int db = c.dim_out();
  if (x.rows() != da || x.cols() != da)
    throw std::invalid_argument("input dimension mismatch");

  const CMat& j = c.choi();
  CMat out = cmat_zero(db, db);
  for (int k = 0; k < db; ++k)
    for (int l = 0; l < db; ++l) {
      cxd acc = 0.0;
      for (int i = 0; i < da; ++i)
        for (int jj = 0; jj < da; ++jj)
          acc += x(jj, i) * j(jj * db + k, i * db + l);
      out(k, l) = static_cast<double>(da) * acc;
    }
  return out;
}

CMat compose_choi(const CMat& choi_n, int dim_in, int dim_mid,
                  const CMat& choi_d, int dim_out) {
  const int n = dim_in * dim_out;
  CMat out = cmat_zero(n, n);
  for (int a = 0; a < dim_in; ++a)
    for (int ap = 0; ap < dim_in; ++ap)
      for (int k = 0; k < dim_out; ++k)
        for (int l = 0; l < dim_out; ++l) {
          cxd acc = 0.0;
          for (int b = 0; b < dim_mid; ++b)
            for (int bp = 0; bp < dim_mid; ++bp)
              acc += choi_n(a * dim_mid + b, ap * dim_mid + bp) *
                     choi_d(b * dim_out + k, bp * dim_out + l);
          out(a * dim_out + k, ap * dim_out + l) =
              static_cast<double>(dim_mid) * acc;
        }
  return out;
}

Channel compose(const Channel& d, const Channel& n) {
  if (d.dim_in() != n.dim_out())
    throw std::invalid_argument("composition dimension mismatch");
  return Channel::from_choi(
      n.dim_in(), d.dim_out(),
      compose_choi(n.choi(), n.dim_in(), n.dim_out(), d.choi(), d.dim_out()));
}

Channel tensor_channels(const Channel& a, const Channel& b) {
  const CMat raw = tensor(a.choi(), b.choi());
  const SubsystemShape shape{{a.dim_in(), a.dim_out(), b.dim_in(), b.dim_out()}};
  const CMat joint = permute_factors(raw, shape, {0, 2, 1, 3});
  return Channel::from_choi(a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out(),
                            joint);
}

Channel identity_channel(int d) {
  if (d <= 0) throw std::invalid_argument("dimension must be positive");
  KrausRep k;
  k.dim_in = d;
  k.dim_out = d;
  k.operators.push_back(cmat_identity(d));
  return Channel::from_kraus(k);
}

Channel erasure(double p) {
  check_prob(p, "erasure probability");
  KrausRep k;
  k.dim_in = 2;
  k.dim_out = 3;
  CMat keep = cmat_zero(3, 2);
  keep(0, 0) = std::sqrt(1.0 - p);
  keep(1, 1) = std::sqrt(1.0 - p);
  CMat flag0 = cmat_zero(3, 2);
  flag0(2, 0) = std::sqrt(p);
  CMat flag1 = cmat_zero(3, 2);
  flag1(2, 1) = std::sqrt(p);
  k.operators = {keep, flag0, flag1};
  return Channel::from_kraus(k);
}

Channel amplitude_damping(double gamma) {
  check_prob(gamma, "damping probability");
  KrausRep k;
  k.dim_in = 2;
  k.dim_out = 2;
  CMat stay = cmat_zero(2, 2);
  stay(0, 0) = 1.0;
  stay(1, 1) = std::sqrt(1.0 - gamma);
  CMat decay = cmat_zero(2, 2);
  decay(0, 1) = std::sqrt(gamma);
  k.operators = {stay, decay};
  return Channel::from_kraus(k);
}

Channel depolarizing(double p) {
  check_prob(p, "depolarizing probability");
  KrausRep k;
  k.dim_in = 2;
  k.dim_out = 2;
  const double s = std::sqrt(p) / 2.0;
  CMat x = cmat_zero(2, 2), y = cmat_zero(2, 2), z = cmat_zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  y(0, 1) = cxd(0, -1);
  y(1, 0) = cxd(0, 1);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  k.operators = {std::sqrt(1.0 - 0.75 * p) * cmat_identity(2), s * x, s * y,
                 s * z};
  return Channel::from_kraus(k);
}

Channel symmetric_channel(int d) {
  if (d <= 0) throw std::invalid_argument("dimension must be positive");
  const int din = d * (d + 1) / 2;

  // Isometry columns: |ii>, then (|ij>+|ji>)/√2 for i<j lexicographic.
  CMat v = cmat_zero(d * d, din);
  for (int i = 0; i < d; ++i) v(i * d + i, i) = 1.0;
  int col = d;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j, ++col) {
      v(i * d + j, col) = inv_sqrt2;
      v(j * d + i, col) = inv_sqrt2;
    }

  KrausRep k;
  k.dim_in = din;
  k.dim_out = d;
  for (int e = 0; e < d; ++e) {
    CMat op(d, din);
    for (int b = 0; b < d; ++b)
      for (int a = 0; a < din; ++a) op(b, a) = v(b * d + e, a);
    k.operators.push_back(std::move(op));
  }
  return Channel::from_kraus(k);
}

Channel flagged_mixture(const std::vector<Channel>& channels,
                        const std::vector<double>& probs) {
  if (channels.empty() || channels.size() != probs.size())
    throw std::invalid_argument("channel and probability counts must match");
  const int da = channels.front().dim_in();
  const int db = channels.front().dim_out();
  double total = 0.0;
  for (std::size_t i = 0; i < channels.size(); ++i) {
    if (channels[i].dim_in() != da || channels[i].dim_out() != db)
      throw std::invalid_argument("all branch channels must share dimensions");
    if (probs[i] < -kDefaultTol.clamp_floor)
      throw std::invalid_argument("branch probabilities must be non-negative");
    total += probs[i];
  }
  if (std::abs(total - 1.0) > kDefaultTol.validation)
    throw std::invalid_argument("branch probabilities must sum to one");

  const int flags = static_cast<int>(channels.size());
  KrausRep out;
  out.dim_in = da;
  out.dim_out = db * flags;
  for (std::size_t i = 0; i < channels.size(); ++i) {
    if (probs[i] <= 0.0) continue;  // zero branches keep the flag dimension only
    const double s = std::sqrt(probs[i]);
    CMat flag = cmat_zero(flags, 1);
    flag(static_cast<int>(i), 0) = 1.0;
    for (const CMat& op : to_kraus(channels[i]).operators)
      out.operators.push_back(tensor(s * op, flag));
  }
  return Channel::from_kraus(out);
}

Channel mixture(const std::vector<Channel>& channels,
                const std::vector<double>& probs) {
  if (channels.empty() || channels.size() != probs.size())
    throw std::invalid_argument("channel and probability counts must match");
  const int da = channels.front().dim_in();
  const int db = channels.front().dim_out();
  CMat choi = cmat_zero(da * db, da * db);
  double total = 0.0;
  for (std::size_t i = 0; i < channels.size(); ++i) {
    if (channels[i].dim_in() != da || channels[i].dim_out() != db)
      throw std::invalid_argument("all mixed channels must share dimensions");
    if (probs[i] < -kDefaultTol.clamp_floor)
      throw std::invalid_argument("mixture probabilities must be non-negative");
    choi += probs[i] * channels[i].choi();
    total += probs[i];
  }
  if (std::abs(total - 1.0) > kDefaultTol.validation)
    throw std::invalid_argument("mixture probabilities must sum to one");
  return Channel::from_choi(da, db, choi);
}

CompletenessCheck is_complete_channel(const Channel& c) {
  const int da = c.dim_in();
  const int db = c.dim_out();
  const CMat& j = c.choi();

  // Transfer map of P ↦ Tr_A[(P ⊗ I) choi], flattened: column (i,ip) holds
  // the output produced by the matrix unit |i><ip|.
  CMat transfer(db * db, da * da);
  for (int i = 0; i < da; ++i)
    for (int ip = 0; ip < da; ++ip)
      for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l)
          transfer(k * db + l, i * da + ip) = j(ip * db + k, i * db + l);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(transfer);
  const auto& sv = svd.singularValues();
  CompletenessCheck res;
  res.required = db * db;
  if (sv.size() > 0) {
    const double cut = kDefaultTol.rank_cut * sv(0);
    for (Eigen::Index s = 0; s < sv.size(); ++s)
      if (sv(s) > cut) ++res.rank;
  }
  res.complete = (res.rank == res.required);
  return res;
}

}  // namespace antideg
