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

#include "antideg/matkernel.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace antideg {

namespace {

// Flat offsets of every multi-index over the given dims, using the
// most-significant-leftmost convention and the strides of `full`.
std::vector<int> enumerate_offsets(const std::vector<int>& dims,
                                   const std::vector<int>& strides) {
  int count = 1;
  for (int d : dims) count *= d;
  std::vector<int> offs(static_cast<std::size_t>(count), 0);
  for (int flat = 0; flat < count; ++flat) {
    int rem = flat;
    int off = 0;
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
      off += (rem % dims[k]) * strides[static_cast<std::size_t>(k)];
      rem /= dims[k];
    }
    offs[static_cast<std::size_t>(flat)] = off;
  }
  return offs;
}

std::vector<int> factor_strides(const std::vector<int>& dims) {
  std::vector<int> strides(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
    strides[static_cast<std::size_t>(k)] =
        strides[static_cast<std::size_t>(k + 1)] * dims[static_cast<std::size_t>(k + 1)];
  return strides;
}

void check_shape(const CMat& m, const SubsystemShape& shape) {
  const int n = shape.total();
  if (m.rows() != n || m.cols() != n)
    throw std::invalid_argument("matrix size does not match subsystem shape");
  for (int d : shape.dims)
    if (d <= 0) throw std::invalid_argument("subsystem dimensions must be positive");
}

}  // namespace

int SubsystemShape::total() const {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>());
}

CMat cmat_zero(int rows, int cols) { return CMat::Zero(rows, cols); }

CMat cmat_identity(int n) { return CMat::Identity(n, n); }

CVec basis_ket(int d, int i) {
  if (i < 0 || i >= d) throw std::invalid_argument("basis index out of range");
  CVec v = CVec::Zero(d);
  v(i) = 1.0;
  return v;
}

CMat projector(const CVec& v) { return v * v.adjoint(); }

CMat dagger(const CMat& m) { return m.adjoint(); }

CMat herm_part(const CMat& m) { return 0.5 * (m + m.adjoint()); }

bool is_finite(const CMat& m) { return m.allFinite(); }

bool is_hermitian(const CMat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

CMat tensor(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVec tensor_vec(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CMat partial_trace(const CMat& m, const SubsystemShape& shape,
                   const std::vector<int>& keep) {
  check_shape(m, shape);
  const int nfac = static_cast<int>(shape.dims.size());
  if (keep.empty()) throw std::invalid_argument("keep set must be non-empty");
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] < 0 || keep[k] >= nfac)
      throw std::invalid_argument("keep index out of range");
    if (k > 0 && keep[k] <= keep[k - 1])
      throw std::invalid_argument("keep set must be strictly increasing");
  }

  const auto strides = factor_strides(shape.dims);
  std::vector<int> kept_dims, traced_dims, kept_strides, traced_strides;
  std::size_t ki = 0;
  for (int f = 0; f < nfac; ++f) {
    if (ki < keep.size() && keep[ki] == f) {
      kept_dims.push_back(shape.dims[static_cast<std::size_t>(f)]);
      kept_strides.push_back(strides[static_cast<std::size_t>(f)]);
      ++ki;
    } else {
      traced_dims.push_back(shape.dims[static_cast<std::size_t>(f)]);
      traced_strides.push_back(strides[static_cast<std::size_t>(f)]);
    }
  }
  const auto kept_offs = enumerate_offsets(kept_dims, kept_strides);
  const auto traced_offs = traced_dims.empty()
                               ? std::vector<int>{0}
                               : enumerate_offsets(traced_dims, traced_strides);

  const int dk = static_cast<int>(kept_offs.size());
  CMat out = CMat::Zero(dk, dk);
  for (int r = 0; r < dk; ++r)
    for (int c = 0; c < dk; ++c) {
      cxd acc = 0.0;
      for (int t : traced_offs)
        acc += m(kept_offs[static_cast<std::size_t>(r)] + t,
                 kept_offs[static_cast<std::size_t>(c)] + t);
      out(r, c) = acc;
    }
  return out;
}

CMat partial_transpose(const CMat& m, const SubsystemShape& shape, int which) {
  check_shape(m, shape);
  const int nfac = static_cast<int>(shape.dims.size());
  if (which < 0 || which >= nfac)
    throw std::invalid_argument("factor index out of range");

  const auto strides = factor_strides(shape.dims);
  const int d = shape.dims[static_cast<std::size_t>(which)];
  const int s = strides[static_cast<std::size_t>(which)];
  const int n = shape.total();

  CMat out(n, n);
  for (int r = 0; r < n; ++r) {
    const int rd = (r / s) % d;
    const int rbase = r - rd * s;
    for (int c = 0; c < n; ++c) {
      const int cd = (c / s) % d;
      const int cbase = c - cd * s;
      out(rbase + cd * s, cbase + rd * s) = m(r, c);
    }
  }
  return out;
}

CMat permute_factors(const CMat& m, const SubsystemShape& shape,
                     const std::vector<int>& perm) {
  check_shape(m, shape);
  const std::size_t nfac = shape.dims.size();
  if (perm.size() != nfac) throw std::invalid_argument("permutation size mismatch");
  std::vector<bool> seen(nfac, false);
  for (int p : perm) {
    if (p < 0 || p >= static_cast<int>(nfac) || seen[static_cast<std::size_t>(p)])
      throw std::invalid_argument("not a permutation");
    seen[static_cast<std::size_t>(p)] = true;
  }

  std::vector<int> out_dims(nfac);
  for (std::size_t k = 0; k < nfac; ++k)
    out_dims[k] = shape.dims[static_cast<std::size_t>(perm[k])];
  const auto in_strides = factor_strides(shape.dims);
  const auto out_strides = factor_strides(out_dims);

  const int n = shape.total();
  // map[r] = flat output index of input index r
  std::vector<int> map(static_cast<std::size_t>(n), 0);
  for (int r = 0; r < n; ++r) {
    int off = 0;
    for (std::size_t k = 0; k < nfac; ++k) {
      const std::size_t src = static_cast<std::size_t>(perm[k]);
      const int digit = (r / in_strides[src]) % shape.dims[src];
      off += digit * out_strides[k];
    }
    map[static_cast<std::size_t>(r)] = off;
  }

  CMat out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      out(map[static_cast<std::size_t>(r)], map[static_cast<std::size_t>(c)]) = m(r, c);
  return out;
}

EigResult hermitian_eig(const CMat& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  if (!is_finite(m)) throw std::invalid_argument("matrix has non-finite entries");
  if (!is_hermitian(m, tol)) throw std::invalid_argument("matrix is not Hermitian");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm_part(m));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed to converge");

  const int n = static_cast<int>(m.rows());
  EigResult res;
  res.values = RVec(n);
  res.vectors = CMat(n, n);
  for (int k = 0; k < n; ++k) {  // Eigen sorts ascending; flip to descending
    res.values(k) = es.eigenvalues()(n - 1 - k);
    res.vectors.col(k) = es.eigenvectors().col(n - 1 - k);
  }
  return res;
}

double trace_norm(const CMat& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().sum();
}

double frob_norm(const CMat& m) { return m.norm(); }

double op_norm(const CMat& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double min_eigenvalue(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm_part(m),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

CMat psd_project(const CMat& m) {
  const EigResult eig = hermitian_eig(herm_part(m), 1e300);  // symmetrize first
  CMat out = CMat::Zero(m.rows(), m.cols());
  for (int k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) > kDefaultTol.clamp_floor)
      out += eig.values(k) * projector(eig.vectors.col(k));
  }
  return out;
}

CMat inv_sqrt_psd(const CMat& m) {
  const EigResult eig = hermitian_eig(m);
  CMat out = CMat::Zero(m.rows(), m.cols());
  for (int k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) > kDefaultTol.clamp_floor)
      out += (1.0 / std::sqrt(eig.values(k))) * projector(eig.vectors.col(k));
  }
  return out;
}

}  // namespace antideg
