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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "antideg/channels.hpp"
#include "antideg/config.hpp"
#include "antideg/games.hpp"
#include "antideg/sdp.hpp"

namespace antideg {

// Certificate that beta = D ∘ alpha (up to the reported residual).
struct DegradabilityCertificate {
  Channel degrader;
  double residual = 0.0;  // trace norm on Choi matrices, recomputed
};

// A guessing game on which Bob, receiving through `bob_channel` ⊗ the
// symmetric side channel, strictly beats Eve receiving through
// `eve_channel` ⊗ the same side channel. Both probabilities are the optima
// of fresh discrimination solves; the stored decoders achieve them.
struct GameWitness {
  Channel bob_channel;
  Channel eve_channel;
  Channel side_channel;
  Ensemble ensemble;  // on the joint input A ⊗ A0
  Povm bob_povm;      // on B ⊗ B0
  Povm eve_povm;      // on E ⊗ B0
  double p_bob = 0.0;
  double p_eve = 0.0;
  double gap = 0.0;  // p_bob − p_eve, strictly positive for emitted witnesses
  std::uint64_t restart_seed = 0;
};

enum class VerdictKind { degradable, not_degradable, inconclusive };

struct VerdictDiagnostics {
  double residual = 0.0;  // best degrading approximation, trace norm
  double best_gap = 0.0;  // best verified game gap encountered
  int sdp_iterations = 0;
  int restarts_used = 0;
  std::string note;
};

// Exactly one payload is populated: certificate for degradable, witness for
// not_degradable, neither for inconclusive. Diagnostics ride along always.
struct OrderingVerdict {
  VerdictKind kind = VerdictKind::inconclusive;
  std::optional<DegradabilityCertificate> certificate;
  std::optional<GameWitness> witness;
  VerdictDiagnostics diagnostics;
};

struct CompletenessReport {
  int steering_rank = 0;
  int required = 0;  // d_B²
  bool complete = false;
};

struct WitnessSearchResult {
  std::optional<GameWitness> witness;  // populated only when gap > min_gap
  double best_gap = 0.0;               // best verified gap over all restarts
  double best_p_bob = 0.0;
  double best_p_eve = 0.0;
  int restarts_used = 0;
};

struct ConsistencyReport {
  double residual = 0.0;
  double gap_bound = 0.0;  // (d_in / 2) · residual, from the diamond-norm sandwich
  bool witness_found = false;
  double gap = 0.0;
  double p_bob = 0.0;
  double p_eve = 0.0;
  std::vector<std::string> flags;
  bool consistent = true;
};

struct TeleportationDegrader {
  Channel degrader;
  // Worst-case trace norm, over measurement outcomes z, of the mismatch
  // between the teleported operator family and the Bell-measured reference;
  // bounds every probe-statistic mismatch of the simulation premise.
  double premise_residual = 0.0;
};

struct SimulationReport {
  long long rounds = 0;
  long long bob_hits = 0;
  long long eve_hits = 0;
  double bob_rate = 0.0;
  double eve_rate = 0.0;
  double bob_se = 0.0;  // binomial standard error at the reference value
  double eve_se = 0.0;
  double p_bob = 0.0;  // reference optima from the witness
  double p_eve = 0.0;
  bool bob_within_3se = false;
  bool eve_within_3se = false;
  std::uint64_t seed = 0;
};

// The channel's Choi matrix viewed as a bipartite state on input ⊗ output.
// Its A marginal is maximally mixed, and steering it with a POVM on A
// prepares exactly the channel outputs on the matching input ensemble.
BipartiteState choi_state(const Channel& c);

// Does alpha extend beta, i.e. does some CPTP D give beta = D ∘ alpha?
// Degradable when the degrading SDP residual passes the certificate
// threshold; otherwise a guessing-game witness is searched for, and
// NotDegradable is emitted only with a verified positive gap.
OrderingVerdict is_extension(const Channel& alpha, const Channel& beta,
                             const CompareConfig& cfg = {});

// Antidegradability: can the environment output be post-processed into the
// channel output? Equivalent to is_extension(complementary(n), n).
OrderingVerdict is_antidegradable(const Channel& n, const CompareConfig& cfg = {});

// Can rho be turned into sigma by a channel on the B side alone? For uniform
// A-marginals this is decided through the Choi correspondence (the states
// are Choi states of channels); otherwise the state-level SDP decides
// Degradable, and failures are Inconclusive (no witness machinery exists for
// non-uniform marginals).
OrderingVerdict local_degradable(const BipartiteState& rho,
                                 const BipartiteState& sigma,
                                 const CompareConfig& cfg = {});

// Rank of the steering map P ↦ Tr_A[(P ⊗ 1)rho] over all A-side operators,
// against the d_B² needed for completeness.
CompletenessReport is_complete_state(const BipartiteState& rho);

// Number of linearly independent operators steered by the given POVM —
// the operational cross-check of is_complete_state.
int steered_family_rank(const BipartiteState& rho, const Povm& p);

// See-saw search for a guessing game separating beta (Bob) from alpha (Eve),
// both extended by the canonical symmetric side channel on beta's output
// dimension. Heuristic: restarts are independent and deterministic; the
// lowest restart index wins ties. Never fabricates: the returned gap comes
// from two fresh discrimination solves on the emitted ensemble.
WitnessSearchResult witness_search(const Channel& alpha, const Channel& beta,
                                   const SeesawConfig& cfg = {});

// Recompute a witness's gap from scratch (two fresh solves).
double verify_witness_gap(const GameWitness& w, const SolverConfig& cfg = {});

// Degrader built from a simulating POVM family by teleportation: the family
// element R^z is measured on B ⊗ B0 of X ⊗ Φ⁺, and the Weyl correction U_z
// (in bell_povm outcome order z = a·d + b) is applied to the output half.
// CPTP by construction; when the family simulates the Bell statistics of
// sigma, (id ⊗ D)(rho) ≈ sigma.
TeleportationDegrader degrader_from_simulating_povm(const BipartiteState& rho,
                                                    const BipartiteState& sigma,
                                                    const Povm& r_family);

// Cross-consistency run: the degrading SDP and the witness search are both
// executed unconditionally, and contradictions between them are flagged
// (a verified witness next to a certificate-level residual, or a verified
// gap exceeding the (d_in/2)·residual bound).
ConsistencyReport consistency_harness(const Channel& alpha, const Channel& beta,
                                      const CompareConfig& cfg = {});

// Monte-Carlo play of the guessing game: i.i.d. rounds, letters sampled from
// the ensemble, outcome distributions computed by the Born rule and sampled.
SimulationReport simulate_witness(const GameWitness& w, long long rounds,
                                  std::uint64_t seed);

}  // namespace antideg
