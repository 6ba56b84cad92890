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

#include <vector>

#include "antideg/config.hpp"
#include "antideg/matkernel.hpp"

namespace antideg {

struct KrausRep {
  int dim_in = 0;
  int dim_out = 0;
  std::vector<CMat> operators;  // each dim_out x dim_in
};

struct StinespringRep {
  int dim_in = 0;
  int dim_out = 0;
  int dim_env = 0;
  CMat isometry;  // (dim_out * dim_env) x dim_in, output factors ordered (B, E)
};

// A completely positive trace-preserving map, stored by its Choi state on
// A ⊗ B: the channel applied to one half of the maximally entangled state,
// normalized to trace one. The A-marginal of the stored state is I/dim_in.
class Channel {
 public:
  static Channel from_choi(int dim_in, int dim_out, CMat choi,
                           const Tolerances& tol = kDefaultTol);
  static Channel from_kraus(const KrausRep& k,
                            const Tolerances& tol = kDefaultTol);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const CMat& choi() const { return choi_; }

 private:
  Channel(int din, int dout, CMat choi);
  int dim_in_;
  int dim_out_;
  CMat choi_;
};

// ── representation changes ──────────────────────────────────────────────────

// Kraus operators from the eigendecomposition of the rescaled Choi state,
// ordered by descending eigenvalue; eigenvalues at or below the clamp floor
// are dropped. This fixed ordering also pins the environment basis used by
// complementary().
KrausRep to_kraus(const Channel& c);

// V = Σ_k K_k ⊗ |k>_E built from to_kraus(c).
StinespringRep stinespring(const Channel& c);

// The channel into the environment: ρ ↦ Tr_B[V ρ V†] with the canonical V
// above. Any other isometric dilation yields the same channel up to an
// isometry on the environment, so complements should be compared through
// extension tests, not entrywise.
Channel complementary(const Channel& c);

// ── action and combination ──────────────────────────────────────────────────

// N(X) = dim_in · Tr_A[(Xᵀ ⊗ I) · choi], the inverse of the Choi encoding.
CMat apply(const Channel& c, const CMat& x);

// d ∘ n (first n, then d).
Channel compose(const Channel& d, const Channel& n);

Channel tensor_channels(const Channel& a, const Channel& b);

// ── builtin channels ────────────────────────────────────────────────────────

Channel identity_channel(int d);

// Qubit in, qutrit out: with probability p the input is replaced by the
// orthogonal flag |2>.
Channel erasure(double p);

// Qubit decay channel with decay probability gamma.
Channel amplitude_damping(double gamma);

// ρ ↦ (1-p)ρ + p·I/2 on a qubit.
Channel depolarizing(double p);

// Isometric embedding of a d(d+1)/2-dimensional input into the symmetric
// subspace of two d-dimensional registers, then discarding one register.
// Basis order of the input: |ii> for ascending i, then (|ij>+|ji>)/√2 for
// i<j in lexicographic order. The two output registers play interchangeable
// roles, so the channel equals its own complement up to environment basis.
Channel symmetric_channel(int d);

// Σ_i p_i N_i(ρ) ⊗ |i><i| on B ⊗ flag. Zero-probability branches still
// contribute a flag dimension.
Channel flagged_mixture(const std::vector<Channel>& channels,
                        const std::vector<double>& probs);

// Σ_i p_i N_i(ρ): plain convex combination, all channels with equal dims.
Channel mixture(const std::vector<Channel>& channels,
                const std::vector<double>& probs);

// ── structural predicates ───────────────────────────────────────────────────

struct CompletenessCheck {
  int rank = 0;      // numerical rank of the input→output transfer map
  int required = 0;  // dim_out²
  bool complete = false;
};

// A channel is complete when its image spans the full output operator space,
// i.e. the transfer map has rank dim_out².
CompletenessCheck is_complete_channel(const Channel& c);

// Choi state of the composite d ∘ n expressed directly from the two Choi
// states (link contraction). Exposed for the solver, which needs the map
// J_d ↦ choi(d ∘ n) to be linear in J_d.
CMat compose_choi(const CMat& choi_n, int dim_in, int dim_mid,
                  const CMat& choi_d, int dim_out);

}  // namespace antideg
