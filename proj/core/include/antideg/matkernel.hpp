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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "antideg/config.hpp"

namespace antideg {

using cxd = std::complex<double>;

// Dense complex matrix, row-major. Composite-space indexing is positional:
// the leftmost tensor factor is the most significant digit of a flat index,
// matching the Kronecker convention of tensor().
using CMat = Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Factor dimensions of a composite space.
struct SubsystemShape {
  std::vector<int> dims;
  int total() const;
};

// ── basic constructions ─────────────────────────────────────────────────────

CMat cmat_zero(int rows, int cols);
CMat cmat_identity(int n);
CVec basis_ket(int d, int i);
CMat projector(const CVec& v);  // |v><v|
CMat dagger(const CMat& m);
CMat herm_part(const CMat& m);  // (M + M†)/2

bool is_finite(const CMat& m);
bool is_hermitian(const CMat& m, double tol = kDefaultTol.validation);

// ── tensor algebra ──────────────────────────────────────────────────────────

CMat tensor(const CMat& a, const CMat& b);
CVec tensor_vec(const CVec& a, const CVec& b);

// Trace out every factor not listed in `keep`; kept factors retain their
// relative order. `keep` must be strictly increasing and non-empty.
CMat partial_trace(const CMat& m, const SubsystemShape& shape,
                   const std::vector<int>& keep);

// Transpose factor `which` in place, leaving the others untouched.
CMat partial_transpose(const CMat& m, const SubsystemShape& shape, int which);

// Reorder tensor factors: factor perm[k] of the input becomes factor k of the
// output.
CMat permute_factors(const CMat& m, const SubsystemShape& shape,
                     const std::vector<int>& perm);

// ── spectral operations ─────────────────────────────────────────────────────

// Eigendecomposition of a Hermitian matrix. Eigenvalues are sorted in
// descending order; column k of `vectors` belongs to values[k]. Throws
// std::invalid_argument when the input is not Hermitian within `tol`.
struct EigResult {
  RVec values;
  CMat vectors;
};
EigResult hermitian_eig(const CMat& m, double tol = kDefaultTol.validation);

double trace_norm(const CMat& m);  // sum of singular values
double frob_norm(const CMat& m);
double op_norm(const CMat& m);  // largest singular value
double min_eigenvalue(const CMat& m);

// Nearest positive semidefinite matrix in Frobenius norm; eigenvalues at or
// below the clamp floor are zeroed.
CMat psd_project(const CMat& m);

// Hermitian inverse square root restricted to the support (eigenvalues at or
// below the clamp floor are dropped).
CMat inv_sqrt_psd(const CMat& m);

}  // namespace antideg
