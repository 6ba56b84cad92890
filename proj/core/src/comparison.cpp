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

#include "antideg/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "antideg/rng.hpp"

namespace antideg {

BipartiteState choi_state(const Channel& c) {
  return BipartiteState{c.dim_in(), c.dim_out(), c.choi()};
}

namespace {

std::vector<CMat> steered_family(const BipartiteState& st, const Povm& p) {
  std::vector<CMat> ops;
  ops.reserve(p.elements.size());
  for (const CMat& el : p.elements) ops.push_back(herm_part(steer(st, el)));
  return ops;
}

// A-side reduction of the decoder against the game state: the operator F
// with Tr[P F] = Σ_x-slice payoff, i.e. F = Tr_B[state · (1 ⊗ decoder)].
CMat decoder_pullback(const BipartiteState& st, const CMat& decoder) {
  const CMat prod =
      st.matrix * tensor(cmat_identity(st.dim_a), decoder);
  return herm_part(
      partial_trace(prod, SubsystemShape{{st.dim_a, st.dim_b}}, {0}));
}

struct SeesawContext {
  Channel bob;   // beta ⊗ S
  Channel eve;   // alpha ⊗ S
  Channel side;  // S
  BipartiteState rho_bob;
  BipartiteState rho_eve;
  int din = 0;  // d_A · d_A0
  int nx = 0;   // outcome count
};

// Deterministic initial POVM for one restart. Restart 0 follows the
// directions left unexplained by the best degrading map; restart 1 is the
// canonical product frame; later restarts are random.
Povm initial_povm(const SeesawContext& ctx, const Channel& alpha,
                  const Channel& beta, const SeesawConfig& cfg, int restart) {
  const int da = beta.dim_in();
  const int da0 = ctx.side.dim_in();
  if (restart >= 2) {
    Rng rng(cfg.seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(restart)));
    return rng.povm(ctx.din, ctx.nx);
  }

  const std::vector<CMat> frame_a = tomography_frame(da);
  const std::vector<CMat> frame_a0 = tomography_frame(da0);
  std::vector<CMat> ops;

  if (restart == 0) {
    // Mismatch directions of the degrading fit, reduced to the input side
    // and paired with tomography elements on the auxiliary input.
    const DegradabilityResult deg = degradability_sdp(alpha, beta, cfg.solver);
    const CMat delta = herm_part(
        beta.choi() - compose_choi(alpha.choi(), alpha.dim_in(),
                                   alpha.dim_out(), deg.degrader.choi(),
                                   beta.dim_out()));
    const EigResult eig = hermitian_eig(delta, 1e-6);
    std::vector<int> order(static_cast<std::size_t>(eig.values.size()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::abs(eig.values(a)) > std::abs(eig.values(b));
    });
    const SubsystemShape shape{{da, beta.dim_out()}};
    for (std::size_t k = 0; k < order.size() && ops.size() + 1 <
                                static_cast<std::size_t>(ctx.nx);
         ++k) {
      const CMat red = herm_part(partial_trace(
          projector(eig.vectors.col(order[k])), shape, {0}));
      if (op_norm(red) < 1e-12) continue;
      ops.push_back(tensor(red, frame_a0[k % frame_a0.size()]));
    }
  }

  // Product tomography elements fill whatever room is left (restart 1 is
  // built from them exclusively).
  for (std::size_t i = 0; i < frame_a.size(); ++i)
    for (std::size_t j = 0; j < frame_a0.size(); ++j) {
      if (ops.size() + 1 >= static_cast<std::size_t>(ctx.nx)) break;
      ops.push_back(tensor(frame_a[i], frame_a0[j]));
    }
  if (ops.empty()) ops.push_back(0.5 * cmat_identity(ctx.din));
  return complete_povm_from_positive_ops(ctx.din, ops);
}

struct RestartOutcome {
  double gap = -std::numeric_limits<double>::infinity();
  double p_bob = 0.0;
  double p_eve = 0.0;
  Ensemble ensemble;
  Povm bob_povm;
  Povm eve_povm;
};

RestartOutcome run_restart(const SeesawContext& ctx, Povm povm,
                           const SeesawConfig& cfg,
                           const SolverConfig& verify_cfg) {
  double best_inner = -std::numeric_limits<double>::infinity();
  Povm best_povm = povm;
  int stall = 0;

  for (int round = 0; round < std::max(1, cfg.rounds); ++round) {
    const std::vector<CMat> ops_bob = steered_family(ctx.rho_bob, povm);
    const std::vector<CMat> ops_eve = steered_family(ctx.rho_eve, povm);
    const auto [vb, bob_dec] = discrimination_sdp(ops_bob, cfg.solver);
    const auto [ve, eve_dec] = discrimination_sdp(ops_eve, cfg.solver);
    const double gap_now = vb - ve;

    if (gap_now > best_inner + cfg.plateau_eps) {
      best_inner = gap_now;
      best_povm = povm;
      stall = 0;
    } else {
      if (gap_now > best_inner) {
        best_inner = gap_now;
        best_povm = povm;
      }
      if (++stall >= 3) break;
    }

    // Encoder step: with both decoders frozen, the payoff difference is
    // linear in the encoding POVM, so the optimum is another discrimination.
    std::vector<CMat> ops_enc;
    ops_enc.reserve(povm.elements.size());
    for (std::size_t x = 0; x < povm.elements.size(); ++x)
      ops_enc.push_back(
          herm_part(decoder_pullback(ctx.rho_bob, bob_dec.elements[x]) -
                    decoder_pullback(ctx.rho_eve, eve_dec.elements[x])));
    povm = discrimination_sdp(ops_enc, cfg.solver).second;
  }

  RestartOutcome out;
  // discrimination solves hand back exactly complete POVMs, so the emitted
  // ensemble and decoders re-validate strictly.
  out.ensemble = ensemble_from_povm(best_povm, ctx.bob);
  const GuessResult gb = guessing_probability(ctx.bob, out.ensemble, verify_cfg);
  const GuessResult ge = guessing_probability(ctx.eve, out.ensemble, verify_cfg);
  out.p_bob = gb.pstar;
  out.p_eve = ge.pstar;
  out.gap = gb.pstar - ge.pstar;
  out.bob_povm = gb.povm;
  out.eve_povm = ge.povm;
  return out;
}

}  // namespace

WitnessSearchResult witness_search(const Channel& alpha, const Channel& beta,
                                   const SeesawConfig& cfg) {
  if (alpha.dim_in() != beta.dim_in())
    throw std::invalid_argument("channels must share their input space");

  const int db = beta.dim_out();
  const Channel side = symmetric_channel(db);
  const Channel bob = tensor_channels(beta, side);
  const Channel eve = tensor_channels(alpha, side);
  SeesawContext ctx{bob,           eve,
                    side,          choi_state(bob),
                    choi_state(eve), bob.dim_in(),
                    cfg.outcomes > 0 ? cfg.outcomes : db * side.dim_out()};

  SolverConfig verify_cfg = cfg.solver;
  verify_cfg.abs_tol = std::min(verify_cfg.abs_tol, 1e-9);

  WitnessSearchResult result;
  result.best_gap = -std::numeric_limits<double>::infinity();
  std::optional<RestartOutcome> best;
  std::uint64_t best_restart = 0;

  const int restarts = std::max(1, cfg.restarts);
  for (int r = 0; r < restarts; ++r) {
    RestartOutcome cand = run_restart(
        ctx, initial_povm(ctx, alpha, beta, cfg, r), cfg, verify_cfg);
    result.restarts_used = r + 1;
    if (cand.gap > result.best_gap) {
      result.best_gap = cand.gap;
      result.best_p_bob = cand.p_bob;
      result.best_p_eve = cand.p_eve;
      best = std::move(cand);
      best_restart = static_cast<std::uint64_t>(r);
    }
    if (result.best_gap >= cfg.early_stop_gap) break;
  }

  if (best && best->gap > cfg.min_gap) {
    result.witness = GameWitness{beta,
                                 alpha,
                                 ctx.side,
                                 std::move(best->ensemble),
                                 std::move(best->bob_povm),
                                 std::move(best->eve_povm),
                                 best->p_bob,
                                 best->p_eve,
                                 best->gap,
                                 best_restart};
  }
  return result;
}

double verify_witness_gap(const GameWitness& w, const SolverConfig& cfg) {
  const Channel bob = tensor_channels(w.bob_channel, w.side_channel);
  const Channel eve = tensor_channels(w.eve_channel, w.side_channel);
  const double pb = guessing_probability(bob, w.ensemble, cfg).pstar;
  const double pe = guessing_probability(eve, w.ensemble, cfg).pstar;
  return pb - pe;
}

OrderingVerdict is_extension(const Channel& alpha, const Channel& beta,
                             const CompareConfig& cfg) {
  if (alpha.dim_in() != beta.dim_in())
    throw std::invalid_argument("channels must share their input space");

  const DegradabilityResult deg = degradability_sdp(alpha, beta, cfg.solver);
  OrderingVerdict verdict;
  verdict.diagnostics.residual = deg.residual;
  verdict.diagnostics.sdp_iterations = deg.iterations;

  if (deg.residual <= cfg.tol.extension_pass) {
    verdict.kind = VerdictKind::degradable;
    verdict.certificate = DegradabilityCertificate{deg.degrader, deg.residual};
    return verdict;
  }

  WitnessSearchResult search = witness_search(alpha, beta, cfg.seesaw);
  verdict.diagnostics.best_gap = search.best_gap;
  verdict.diagnostics.restarts_used = search.restarts_used;
  if (search.witness) {
    verdict.kind = VerdictKind::not_degradable;
    verdict.witness = std::move(search.witness);
    return verdict;
  }

  verdict.kind = VerdictKind::inconclusive;
  verdict.diagnostics.note =
      "degrading residual above the certificate threshold, but no verified "
      "game witness was found";
  return verdict;
}

OrderingVerdict is_antidegradable(const Channel& n, const CompareConfig& cfg) {
  return is_extension(complementary(n), n, cfg);
}

OrderingVerdict local_degradable(const BipartiteState& rho,
                                 const BipartiteState& sigma,
                                 const CompareConfig& cfg) {
  validate_state(rho, cfg.tol);
  validate_state(sigma, cfg.tol);
  if (rho.dim_a != sigma.dim_a)
    throw std::invalid_argument("states must share their A space");
  const int da = rho.dim_a;
  const SubsystemShape shape_rho{{da, rho.dim_b}};
  const SubsystemShape shape_sigma{{da, sigma.dim_b}};
  const CMat marg = partial_trace(rho.matrix, shape_rho, {0});
  const CMat marg_sigma = partial_trace(sigma.matrix, shape_sigma, {0});
  if ((marg - marg_sigma).cwiseAbs().maxCoeff() > cfg.tol.validation)
    throw std::invalid_argument("states must have equal A-marginals");

  const bool uniform =
      (marg - cmat_identity(da) / static_cast<double>(da)).cwiseAbs().maxCoeff() <=
      cfg.tol.validation;
  if (uniform) {
    // The states are Choi states of channels; decide at the channel level,
    // where the witness machinery is available.
    const Channel a = Channel::from_choi(da, rho.dim_b, rho.matrix, cfg.tol);
    const Channel b = Channel::from_choi(da, sigma.dim_b, sigma.matrix, cfg.tol);
    return is_extension(a, b, cfg);
  }

  const DegradabilityResult deg = local_degrading_sdp(rho, sigma, cfg.solver);
  OrderingVerdict verdict;
  verdict.diagnostics.residual = deg.residual;
  verdict.diagnostics.sdp_iterations = deg.iterations;
  if (deg.residual <= cfg.tol.extension_pass) {
    verdict.kind = VerdictKind::degradable;
    verdict.certificate = DegradabilityCertificate{deg.degrader, deg.residual};
    return verdict;
  }
  verdict.kind = VerdictKind::inconclusive;
  verdict.diagnostics.note =
      "state-level degrading fit failed and the game witness machinery "
      "requires uniform A-marginals";
  return verdict;
}

CompletenessReport is_complete_state(const BipartiteState& rho) {
  validate_state(rho);
  const int da = rho.dim_a;
  const int db = rho.dim_b;
  // Column (i·d_A + i') holds the steered operator of the matrix unit
  // |i><i'|, which spans the image of the steering map as P varies.
  Eigen::MatrixXcd t(db * db, da * da);
  for (int i = 0; i < da; ++i)
    for (int ip = 0; ip < da; ++ip)
      for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l)
          t(k * db + l, i * da + ip) = rho.matrix(ip * db + k, i * db + l);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t);
  CompletenessReport report;
  report.required = db * db;
  const auto& sv = svd.singularValues();
  if (sv.size() > 0 && sv(0) > 0.0) {
    const double cut = kDefaultTol.rank_cut * sv(0);
    for (int k = 0; k < sv.size(); ++k)
      if (sv(k) > cut) ++report.steering_rank;
  }
  report.complete = report.steering_rank == report.required;
  return report;
}

int steered_family_rank(const BipartiteState& rho, const Povm& p) {
  validate_state(rho);
  validate_povm(p);
  if (p.dim != rho.dim_a)
    throw std::invalid_argument("POVM must act on the A side");
  const int db = rho.dim_b;
  Eigen::MatrixXcd t(db * db, static_cast<int>(p.elements.size()));
  for (std::size_t x = 0; x < p.elements.size(); ++x) {
    const CMat s = steer(rho, p.elements[x]);
    for (int k = 0; k < db; ++k)
      for (int l = 0; l < db; ++l)
        t(k * db + l, static_cast<int>(x)) = s(k, l);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t);
  const auto& sv = svd.singularValues();
  int rank = 0;
  if (sv.size() > 0 && sv(0) > 0.0) {
    const double cut = kDefaultTol.rank_cut * sv(0);
    for (int k = 0; k < sv.size(); ++k)
      if (sv(k) > cut) ++rank;
  }
  return rank;
}

TeleportationDegrader degrader_from_simulating_povm(const BipartiteState& rho,
                                                    const BipartiteState& sigma,
                                                    const Povm& r_family) {
  validate_state(rho);
  validate_state(sigma);
  validate_povm(r_family);
  if (rho.dim_a != sigma.dim_a)
    throw std::invalid_argument("states must share their A space");
  const int d = sigma.dim_b;
  const int db = rho.dim_b;
  if (static_cast<int>(r_family.elements.size()) != d * d)
    throw std::invalid_argument(
        "the simulating family must have one element per Bell outcome");
  if (r_family.dim != db * d)
    throw std::invalid_argument(
        "the simulating family must act on B ⊗ B0 with d_B0 = sigma's B dimension");

  // Premise: teleporting rho's B side through {R^z} reproduces, outcome by
  // outcome, the Bell-measured family of sigma's B side.
  const BipartiteState phi = max_entangled(d);
  const Povm bell = bell_povm(d);
  const CMat big_rho = tensor(rho.matrix, phi.matrix);
  const CMat big_sigma = tensor(sigma.matrix, phi.matrix);
  const SubsystemShape shape_rho{{rho.dim_a, db, d, d}};
  const SubsystemShape shape_sigma{{sigma.dim_a, d, d, d}};
  const CMat eye_a = cmat_identity(rho.dim_a);
  const CMat eye_d = cmat_identity(d);
  double premise = 0.0;
  for (int z = 0; z < d * d; ++z) {
    const CMat w = partial_trace(
        tensor(tensor(eye_a, r_family.elements[static_cast<std::size_t>(z)]), eye_d) *
            big_rho,
        shape_rho, {0, 3});
    const CMat v = partial_trace(
        tensor(tensor(eye_a, bell.elements[static_cast<std::size_t>(z)]), eye_d) *
            big_sigma,
        shape_sigma, {0, 3});
    premise = std::max(premise, trace_norm(w - v));
  }

  // Choi matrix of X ↦ Σ_z U_z · Tr_{B,B0}[(R^z ⊗ 1)(X ⊗ Φ⁺)] · U_z†.
  // For a matrix unit X = |i><j| the traced-out block is
  // (1/d) · R^z[(j, n'), (i, m')] as an operator in (m', n').
  CMat choi = cmat_zero(db * d, db * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const CMat u = weyl_unitary(d, a, b);
      const CMat& rz = r_family.elements[static_cast<std::size_t>(a * d + b)];
      for (int i = 0; i < db; ++i)
        for (int j = 0; j < db; ++j) {
          CMat block(d, d);
          for (int mp = 0; mp < d; ++mp)
            for (int np = 0; np < d; ++np)
              block(mp, np) = rz(j * d + np, i * d + mp);
          const CMat out = u * block * u.adjoint() / static_cast<double>(d);
          for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l)
              choi(i * d + k, j * d + l) += out(k, l) / static_cast<double>(db);
        }
    }

  return TeleportationDegrader{Channel::from_choi(db, d, choi), premise};
}

ConsistencyReport consistency_harness(const Channel& alpha, const Channel& beta,
                                      const CompareConfig& cfg) {
  if (alpha.dim_in() != beta.dim_in())
    throw std::invalid_argument("channels must share their input space");

  ConsistencyReport report;
  const DegradabilityResult deg = degradability_sdp(alpha, beta, cfg.solver);
  report.residual = deg.residual;
  report.gap_bound =
      0.5 * static_cast<double>(alpha.dim_in()) * deg.residual;

  // The witness search runs unconditionally: on degradable pairs it is a
  // falsification attempt that must come back empty.
  const WitnessSearchResult search = witness_search(alpha, beta, cfg.seesaw);
  report.witness_found = search.witness.has_value();
  report.gap = search.best_gap;
  report.p_bob = search.best_p_bob;
  report.p_eve = search.best_p_eve;

  if (report.witness_found && report.residual <= cfg.tol.extension_pass)
    report.flags.push_back(
        "verified witness coexists with a certificate-level residual");
  if (report.residual >= cfg.tol.extension_fail &&
      report.gap > report.gap_bound + 1e-7)
    report.flags.push_back(
        "verified gap exceeds the residual's guessing-gap bound");
  report.consistent = report.flags.empty();
  return report;
}

SimulationReport simulate_witness(const GameWitness& w, long long rounds,
                                  std::uint64_t seed) {
  if (rounds <= 0) throw std::invalid_argument("round count must be positive");
  validate_ensemble(w.ensemble);
  validate_povm(w.bob_povm);
  validate_povm(w.eve_povm);
  const Channel bob = tensor_channels(w.bob_channel, w.side_channel);
  const Channel eve = tensor_channels(w.eve_channel, w.side_channel);
  if (w.ensemble.dim != bob.dim_in())
    throw std::invalid_argument("ensemble does not match the witness channels");
  const std::size_t n = w.ensemble.items.size();
  if (w.bob_povm.elements.size() != n || w.eve_povm.elements.size() != n)
    throw std::invalid_argument("decoders must have one outcome per letter");
  if (w.bob_povm.dim != bob.dim_out() || w.eve_povm.dim != eve.dim_out())
    throw std::invalid_argument("decoder dimensions do not match the channels");

  // Born-rule outcome distributions, one row per letter.
  std::vector<double> priors;
  std::vector<std::vector<double>> bob_dist, eve_dist;
  for (const auto& item : w.ensemble.items) {
    priors.push_back(item.p);
    const CMat out_b = apply(bob, item.rho);
    const CMat out_e = apply(eve, item.rho);
    std::vector<double> row_b, row_e;
    for (std::size_t r = 0; r < n; ++r) {
      row_b.push_back(std::max(
          0.0, (w.bob_povm.elements[r] * out_b).trace().real()));
      row_e.push_back(std::max(
          0.0, (w.eve_povm.elements[r] * out_e).trace().real()));
    }
    bob_dist.push_back(std::move(row_b));
    eve_dist.push_back(std::move(row_e));
  }

  Rng rng(seed);
  SimulationReport report;
  report.rounds = rounds;
  report.seed = seed;
  report.p_bob = w.p_bob;
  report.p_eve = w.p_eve;
  for (long long g = 0; g < rounds; ++g) {
    const int x = rng.sample(priors);
    if (rng.sample(bob_dist[static_cast<std::size_t>(x)]) == x) ++report.bob_hits;
    if (rng.sample(eve_dist[static_cast<std::size_t>(x)]) == x) ++report.eve_hits;
  }
  const double g = static_cast<double>(rounds);
  report.bob_rate = static_cast<double>(report.bob_hits) / g;
  report.eve_rate = static_cast<double>(report.eve_hits) / g;
  report.bob_se = std::sqrt(std::max(0.0, w.p_bob * (1.0 - w.p_bob)) / g);
  report.eve_se = std::sqrt(std::max(0.0, w.p_eve * (1.0 - w.p_eve)) / g);
  report.bob_within_3se = std::abs(report.bob_rate - w.p_bob) <= 3.0 * report.bob_se;
  report.eve_within_3se = std::abs(report.eve_rate - w.p_eve) <= 3.0 * report.eve_se;
  return report;
}

}  // namespace antideg
