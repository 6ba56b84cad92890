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

namespace antideg {

// Centralized numerical tolerances. Tests and call sites reference these
// fields instead of repeating magic numbers.
struct Tolerances {
  double validation = 1e-8;       // type invariants: hermiticity, traces, completeness
  double reconstruction = 1e-10;  // factorization round-trip residuals
  double clamp_floor = 1e-12;     // eigenvalues at or below this are treated as zero
  double rank_cut = 1e-9;         // relative singular-value cutoff for numerical rank
  double extension_pass = 1e-6;   // Choi trace-norm residual <= this: degrading map accepted
  double extension_fail = 1e-4;   // residual >= this: degrading map ruled out, search for witness
  double statistic_match = 1e-6;  // max-abs statistic mismatch for a simulating POVM
};

inline constexpr Tolerances kDefaultTol{};

// Conic solver knobs (operator-splitting method, see sdp.hpp).
struct SolverConfig {
  double abs_tol = 1e-9;    // stopping tolerance on splitting residuals
  int max_iters = 100000;   // hard iteration cap
  double over_relax = 1.5;  // over-relaxation factor
  double rho = 1.0;         // initial penalty parameter
  bool adapt_rho = true;    // residual-balancing penalty adaptation
};

// Alternating-optimization search for a guessing-game witness.
struct SeesawConfig {
  int restarts = 10;         // independent initial POVMs
  int rounds = 200;          // cap on alternation rounds per restart
  double min_gap = 1e-3;     // verified payoff gap required to accept a witness
  int outcomes = 0;          // ensemble size |X|; 0 selects d_B * d_B0
  std::uint64_t seed = 1;    // drives every random choice of the search
  double plateau_eps = 1e-7; // stop a restart once round-to-round gain falls below this
  // Skip remaining restarts once a verified gap reaches this (a witness only
  // needs gap > min_gap; chasing the global optimum is not the goal).
  double early_stop_gap = 0.01;
  // Inner alternation rounds run at a loosened tolerance for speed;
  // emitted gaps always come from fresh verification solves at or below
  // 1e-9 regardless of this setting.
  SolverConfig solver{1e-7};
};

// Bundle used by the ordering/verdict entry points.
struct CompareConfig {
  Tolerances tol{};
  SolverConfig solver{};
  SeesawConfig seesaw{};
};

}  // namespace antideg
