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

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "antideg/channels.hpp"
#include "antideg/config.hpp"
#include "antideg/games.hpp"
#include "antideg/matkernel.hpp"

namespace antideg {

// Small conic program over Hermitian positive semidefinite blocks:
//
//   minimize   Σ_b Tr[C_b X_b] + ‖map(X_q) - target‖_F²
//   subject to Σ_b Tr[A_{r,b} X_b] = rhs_r   for every row r
//              X_b ⪰ 0                        for every block b
//
// (`maximize` flips the sign of the linear part). Solved by operator
// splitting: alternating projection onto the positive cone (blockwise
// eigendecomposition) and onto the affine subspace (prefactored
// equality-constrained least squares), with over-relaxation.
struct ConicProblem {
  std::vector<int> block_dims;

  struct Term {
    int block = 0;
    CMat coeff;  // Hermitian, same size as the block
  };
  struct Row {
    std::vector<Term> terms;
    double rhs = 0.0;
  };
  std::vector<Row> equalities;

  std::vector<Term> objective;
  bool maximize = false;

  // Optional least-squares objective over one block; `map` must be
  // real-linear and send Hermitian matrices to Hermitian matrices.
  struct QuadMap {
    int block = -1;
    std::function<CMat(const CMat&)> map;
    CMat target;
  };
  std::optional<QuadMap> quadratic;
};

enum class SolveStatus { optimal, max_iters, infeasible_hint };

struct SdpSolution {
  std::vector<CMat> blocks;
  double objective = 0.0;
  // Both residuals are recomputed from the returned blocks, never read off
  // solver internals: primal = max of equality violation and cone violation,
  // dual = splitting stationarity at exit.
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  SolveStatus status = SolveStatus::max_iters;
  int iterations = 0;
};

SdpSolution solve(const ConicProblem& prob, const SolverConfig& cfg = {});

// ── canned programs used by the comparison layer ────────────────────────────

// Minimum-error discrimination of Hermitian payoff operators: maximize
// Σ_x Tr[Q^x ops_x] over POVMs {Q^x}. Returns the value and the POVM.
std::pair<double, Povm> discrimination_sdp(const std::vector<CMat>& ops,
                                           const SolverConfig& cfg = {});

// Feasible dual certificate Y ⪰ ops_x for all x, built from the returned
// primal blocks and shifted to exact feasibility.
CMat discrimination_dual(const std::vector<CMat>& ops, const Povm& primal);

struct GuessResult {
  double pstar = 0.0;
  Povm povm;
  CMat dual;            // Y ⪰ p_x N(rho^x) for every x
  double dual_gap = 0;  // Tr[Y] - pstar, recomputed
  int iterations = 0;
};

// Optimal guessing probability for the ensemble sent through the channel.
GuessResult guessing_probability(const Channel& c, const Ensemble& e,
                                 const SolverConfig& cfg = {});

struct DegradabilityResult {
  double residual = 0.0;  // ‖choi(D∘alpha) - choi(beta)‖₁, recomputed
  Channel degrader;
  SolveStatus status = SolveStatus::max_iters;
  int iterations = 0;
};

// Best CPTP D minimizing ‖choi(D ∘ alpha) - choi(beta)‖_F². Near-feasible
// fits are refined through an exact-match feasibility solve, so certificates
// for genuinely degradable pairs come out at solver precision.
DegradabilityResult degradability_sdp(const Channel& alpha, const Channel& beta,
                                      const SolverConfig& cfg = {});

// State-level variant: best CPTP D on the B side minimizing
// ‖(id ⊗ D)(rho) - sigma‖_F², reported with the trace-norm residual. The
// channel-level problem is this one applied to the two Choi states.
DegradabilityResult local_degrading_sdp(const BipartiteState& rho,
                                        const BipartiteState& sigma,
                                        const SolverConfig& cfg = {});

struct SimulatingPovmResult {
  bool feasible = false;
  Povm r;                 // on the B side of rho
  double residual = 0.0;  // max-abs statistic mismatch, recomputed
  int iterations = 0;
};

// Find {R^y} on rho's B side reproducing the statistics Tr[(P^x ⊗ Q^y) sigma]
// of {Q^y} on sigma's B side, posed as cone/affine feasibility; the reported
// residual is the worst statistic mismatch of the returned family. Requires
// equal A-marginals.
SimulatingPovmResult simulating_povm_sdp(const BipartiteState& rho,
                                         const BipartiteState& sigma,
                                         const Povm& p, const Povm& q,
                                         const SolverConfig& cfg = {});

}  // namespace antideg
