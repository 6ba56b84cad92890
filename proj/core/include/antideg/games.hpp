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

#include <utility>
#include <vector>

#include "antideg/channels.hpp"
#include "antideg/config.hpp"
#include "antideg/matkernel.hpp"

namespace antideg {

// ── game data types ─────────────────────────────────────────────────────────

struct Ensemble {
  struct Item {
    double p = 0.0;
    CMat rho;
  };
  int dim = 0;
  std::vector<Item> items;
};

// Throws when probabilities or states violate their invariants.
void validate_ensemble(const Ensemble& e, const Tolerances& tol = kDefaultTol);

struct Povm {
  int dim = 0;
  std::vector<CMat> elements;
};

void validate_povm(const Povm& p, const Tolerances& tol = kDefaultTol);

// Hermitian payoff operators, one per outcome; not necessarily positive.
struct ObservableFamily {
  int dim = 0;
  std::vector<CMat> elements;
};

// Real payoff table u(x, y): row = hidden label, column = announced label.
struct Utility {
  Eigen::MatrixXd values;
};

struct BipartiteState {
  int dim_a = 0;
  int dim_b = 0;
  CMat matrix;
};

void validate_state(const BipartiteState& s, const Tolerances& tol = kDefaultTol);

// ── fixed constructions ─────────────────────────────────────────────────────

BipartiteState max_entangled(int d);

// Discrete shift-and-phase unitary X^a Z^b on dimension d.
CMat weyl_unitary(int d, int a, int b);

// The d² orthogonal maximally entangled projectors (U_{ab} ⊗ I)|Φ+><Φ+|(·)†,
// ordered z = a·d + b. This ordering is shared with the teleportation-style
// degrader construction in comparison.hpp.
Povm bell_povm(int d);

// Canonical tomography frame: d² rank-one positive operators spanning the
// operator space ({|i><i|} plus +/right superposition projectors per pair).
std::vector<CMat> tomography_frame(int d);

// Scale positive operators by λ = (1 - 1e-9)/‖Σ ops‖ and append the
// remainder I - λΣ so the family sums to the identity. Throws when the sum
// is zero or an operator fails positivity.
Povm complete_povm_from_positive_ops(int dim, const std::vector<CMat>& ops);

// Informationally complete POVM built from the canonical tomography frame.
Povm ic_povm(int d);

// Restore exact completeness of a nearly complete family by conjugating
// every element with (Σ_x E_x)^{-1/2}. Positivity is preserved; intended to
// clean up numerically-optimal families whose element sum drifted from the
// identity by a solver tolerance.
Povm renormalized_povm(const Povm& p);

// ── steering between POVMs and ensembles ────────────────────────────────────

// Tr_A[(op ⊗ I) rho].
CMat steer(const BipartiteState& rho, const CMat& op_on_a);

// Measuring P^x on the A half of the channel's Choi state prepares the
// ensemble p_x = Tr[P^x]/d, rho^x = (P^x)ᵀ/Tr[P^x]. Zero-weight outcomes are
// dropped from the ensemble.
Ensemble ensemble_from_povm(const Povm& p, const Channel& c);

// Inverse direction; requires the ensemble average to be I/d.
Povm povm_from_ensemble(const Ensemble& e, const Tolerances& tol = kDefaultTol);

// ── observable/POVM conversions ─────────────────────────────────────────────

ObservableFamily observables_from_utility(const Povm& p, const Utility& u);

// Shift-and-rescale conversion P^x = (O^x + λI - Σ/|X|)/(λ|X|) with minimal
// λ > 0 making every element positive (1e-12 slack). λ and Σ = Σ_x O^x are
// retained so the conversion can be inverted exactly.
struct PovmFromObservables {
  Povm povm;
  double lambda = 0.0;
  CMat sigma;
};
PovmFromObservables povm_from_observables(const ObservableFamily& obs);

// Exact inverse O^x = λ|X| P^x - λI + Σ/|X| of the conversion above.
ObservableFamily observables_from_povm(const PovmFromObservables& conv);

// ── payoffs (discrimination-type optimizations over the B side) ─────────────

// Optimal guessing payoff max_Q Σ_x Tr[(P^x ⊗ Q^x) rho] together with the
// optimizing B-side POVM.
std::pair<double, Povm> static_guessing_payoff(const BipartiteState& rho,
                                               const Povm& p,
                                               const SolverConfig& cfg = {});

// max_Q Σ_x Tr[(O^x ⊗ Q^x) rho] over B-side POVMs with |X| outcomes.
double decision_game_payoff(const BipartiteState& rho,
                            const ObservableFamily& obs,
                            const SolverConfig& cfg = {});

// max_Q Σ_{x,y} u(x,y) Tr[(P^x ⊗ Q^y) rho] over B-side POVMs with |Y| outcomes.
double decision_problem_payoff(const BipartiteState& rho, const Povm& p,
                               const Utility& u, const SolverConfig& cfg = {});

// Closed-form optimum for discriminating two states with priors:
// (1 + ‖p0·rho0 - p1·rho1‖₁)/2.
double helstrom(double p0, const CMat& rho0, double p1, const CMat& rho1);

}  // namespace antideg
