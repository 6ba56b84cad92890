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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "antideg/channels.hpp"
#include "antideg/rng.hpp"

using namespace antideg;

namespace {
constexpr double kEps = 1e-11;
}

TEST_CASE("erasure output has the analytic block structure") {
  Rng rng(21);
  const CMat rho = rng.density(2);
  const double p = 0.3;
  const CMat out = antideg::apply(erasure(p), rho);
  REQUIRE(out.rows() == 3);
  // Top-left 2x2 block carries (1-p)·rho, the flag carries p.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(out(i, j) - (1.0 - p) * rho(i, j)) < kEps);
  CHECK(std::abs(out(2, 2) - cxd(p, 0)) < kEps);
  CHECK(std::abs(out(0, 2)) < kEps);
  CHECK_THROWS_AS(erasure(1.5), std::invalid_argument);
}

TEST_CASE("amplitude damping oracle values") {
  const double g = 0.36;
  const Channel ad = amplitude_damping(g);
  // Frozen Choi entries, basis (input, output): J[0,0]=1/2, J[2,2]=gamma/2,
  // J[3,3]=(1-gamma)/2, J[0,3]=sqrt(1-gamma)/2 = 0.4.
  const CMat& j = ad.choi();
  CHECK(std::abs(j(0, 0) - cxd(0.5, 0)) < kEps);
  CHECK(std::abs(j(2, 2) - cxd(0.18, 0)) < kEps);
  CHECK(std::abs(j(3, 3) - cxd(0.32, 0)) < kEps);
  CHECK(std::abs(j(0, 3) - cxd(0.4, 0)) < kEps);
  CHECK(std::abs(j(1, 1)) < kEps);

  // Full damping resets every state to |0><0|.
  Rng rng(22);
  const CMat rho = rng.density(2);
  const CMat reset = antideg::apply(amplitude_damping(1.0), rho);
  CHECK(std::abs(reset(0, 0) - cxd(1, 0)) < kEps);
  CHECK(std::abs(reset(1, 1)) < kEps);
}

TEST_CASE("amplitude damping composes inside its own family") {
  // AD(g2) after AD(g1) equals AD(1 - (1-g1)(1-g2)).
  const double g1 = 0.2, g2 = 0.45;
  const Channel combined = compose(amplitude_damping(g2), amplitude_damping(g1));
  const Channel direct = amplitude_damping(1.0 - (1.0 - g1) * (1.0 - g2));
  CHECK(frob_norm(combined.choi() - direct.choi()) < kEps);
}

TEST_CASE("depolarizing oracle") {
  const Channel full = depolarizing(1.0);
  CHECK(frob_norm(full.choi() - 0.25 * cmat_identity(4)) < kEps);

  Rng rng(23);
  const CMat rho = rng.density(2);
  const double p = 0.37;
  const CMat out = antideg::apply(depolarizing(p), rho);
  CHECK(frob_norm(out - ((1.0 - p) * rho + p * 0.5 * cmat_identity(2))) < kEps);
}

TEST_CASE("identity channel and Choi state") {
  const Channel id = identity_channel(3);
  Rng rng(24);
  const CMat rho = rng.density(3);
  CHECK(frob_norm(antideg::apply(id, rho) - rho) < kEps);
  // Trace-one Choi of the identity is the maximally entangled projector.
  CMat phi = cmat_zero(9, 1);
  for (int i = 0; i < 3; ++i) phi(i * 3 + i, 0) = 1.0 / std::sqrt(3.0);
  CHECK(frob_norm(id.choi() - CMat(phi * phi.adjoint())) < kEps);
}

TEST_CASE("choi apply agrees with Kraus apply") {
  Rng rng(25);
  for (int trial = 0; trial < 5; ++trial) {
    const Channel c = rng.channel(3, 2);
    const CMat rho = rng.density(3);
    const KrausRep kr = to_kraus(c);
    CMat out = cmat_zero(2, 2);
    for (const CMat& k : kr.operators) out += k * rho * k.adjoint();
    CHECK(frob_norm(antideg::apply(c, rho) - out) < 1e-10);
  }
}

TEST_CASE("kraus round trip preserves the Choi matrix") {
  Rng rng(26);
  for (int trial = 0; trial < 5; ++trial) {
    const Channel c = rng.channel(2, 3);
    const Channel back = Channel::from_kraus(to_kraus(c));
    CHECK(frob_norm(back.choi() - c.choi()) < 1e-10);
  }
}

TEST_CASE("stinespring splits into channel and complement") {
  Rng rng(27);
  const Channel c = rng.channel(2, 3, 2);
  const StinespringRep st = stinespring(c);
  const Channel comp = complementary(c);
  const CMat rho = rng.density(2);
  const CMat joint = st.isometry * rho * st.isometry.adjoint();
  const SubsystemShape shape{{st.dim_out, st.dim_env}};
  CHECK(frob_norm(partial_trace(joint, shape, {0}) - antideg::apply(c, rho)) < 1e-10);
  CHECK(frob_norm(partial_trace(joint, shape, {1}) - antideg::apply(comp, rho)) < 1e-10);
}

TEST_CASE("amplitude damping complement is the reflected damping") {
  for (double g : {0.15, 0.5, 0.85}) {
    const Channel comp = complementary(amplitude_damping(g));
    CHECK(frob_norm(comp.choi() - amplitude_damping(1.0 - g).choi()) < 1e-10);
  }
}

TEST_CASE("composition matches sequential application") {
  Rng rng(28);
  const Channel f = rng.channel(2, 3);
  const Channel g = rng.channel(3, 2);
  const Channel gf = compose(g, f);
  const CMat rho = rng.density(2);
  CHECK(frob_norm(antideg::apply(gf, rho) - antideg::apply(g, antideg::apply(f, rho))) < 1e-10);

  // The raw Choi-level link product agrees with compose().
  const CMat linked = compose_choi(f.choi(), f.dim_in(), f.dim_out(),
                                   g.choi(), g.dim_out());
  CHECK(frob_norm(linked - gf.choi()) < 1e-10);
}

TEST_CASE("tensor_channels acts factor-wise") {
  Rng rng(29);
  const Channel f = rng.channel(2, 2);
  const Channel g = rng.channel(2, 3);
  const Channel fg = tensor_channels(f, g);
  const CMat ra = rng.density(2);
  const CMat rb = rng.density(2);
  CHECK(frob_norm(antideg::apply(fg, tensor(ra, rb)) -
                  tensor(antideg::apply(f, ra), antideg::apply(g, rb))) < 1e-10);
}

TEST_CASE("symmetric channel treats receiver and environment identically") {
  for (int d : {2, 3}) {
    const Channel s = symmetric_channel(d);
    const int din = d * (d + 1) / 2;
    CHECK(s.dim_in() == din);
    CHECK(s.dim_out() == d);

    // Independent reference isometry into the symmetric subspace, columns
    // |ii> for ascending i, then (|ij>+|ji>)/sqrt(2) for i<j lexicographic.
    CMat v = cmat_zero(d * d, din);
    for (int i = 0; i < d; ++i) v(i * d + i, i) = 1.0;
    int col = d;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j, ++col) {
        v(i * d + j, col) = 1.0 / std::sqrt(2.0);
        v(j * d + i, col) = 1.0 / std::sqrt(2.0);
      }

    Rng rng(30 + d);
    const CMat rho = rng.density(din);
    const CMat joint = v * rho * v.adjoint();
    const SubsystemShape two{{d, d}};

    // The joint output is swap invariant, so receiver and environment hold
    // the same state, and it is exactly the channel output.
    CHECK(frob_norm(joint - permute_factors(joint, two, {1, 0})) < 1e-11);
    CHECK(frob_norm(partial_trace(joint, two, {0}) - antideg::apply(s, rho)) < 1e-10);
    CHECK(frob_norm(partial_trace(joint, two, {1}) - antideg::apply(s, rho)) < 1e-10);

    // Environment-basis freedom aside, the complement must share the Choi
    // spectrum (it differs by a unitary on the output register only).
    const EigResult es = hermitian_eig(s.choi());
    const EigResult ec = hermitian_eig(complementary(s).choi());
    CHECK((es.values - ec.values).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("mixtures and flagged mixtures") {
  Rng rng(31);
  const Channel a = rng.channel(2, 2);
  const Channel b = rng.channel(2, 2);
  const std::vector<double> w{0.25, 0.75};
  const Channel mix = mixture({a, b}, w);
  const Channel flagged = flagged_mixture({a, b}, w);
  REQUIRE(flagged.dim_out() == 4);

  const CMat rho = rng.density(2);
  CHECK(frob_norm(antideg::apply(mix, rho) -
                  (w[0] * antideg::apply(a, rho) + w[1] * antideg::apply(b, rho))) < 1e-10);

  // Flag lives in the second factor; branch i sits at flag |i><i|.
  const CMat fout = antideg::apply(flagged, rho);
  const SubsystemShape shape{{2, 2}};
  CHECK(frob_norm(partial_trace(fout, shape, {0}) - antideg::apply(mix, rho)) < 1e-10);
  const CMat expected = tensor(antideg::apply(a, rho), w[0] * projector(basis_ket(2, 0))) +
                        tensor(antideg::apply(b, rho), w[1] * projector(basis_ket(2, 1)));
  CHECK(frob_norm(fout - expected) < 1e-10);

  CHECK_THROWS_AS(mixture({a, b}, {0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(flagged_mixture({a}, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("channel validation rejects broken Choi inputs") {
  // Not trace preserving: all-zero matrix.
  CHECK_THROWS_AS(Channel::from_choi(2, 2, cmat_zero(4, 4)),
                  std::invalid_argument);
  // Not completely positive: partial transpose of the identity Choi.
  const Channel id = identity_channel(2);
  const CMat bad = partial_transpose(id.choi(), SubsystemShape{{2, 2}}, 0);
  CHECK_THROWS_AS(Channel::from_choi(2, 2, bad), std::invalid_argument);
  // Kraus shape mismatch.
  CHECK_THROWS_AS(Channel::from_kraus(KrausRep{2, 2, {cmat_zero(3, 2)}}),
                  std::invalid_argument);
}

TEST_CASE("completeness ranks across the zoo") {
  // The erasure image is pinned to the 4-dim input operator space: the flag
  // weight is tr(rho), not an independent direction.
  const CompletenessCheck er = is_complete_channel(erasure(0.3));
  CHECK(er.rank == 4);
  CHECK(er.required == 9);
  CHECK(!er.complete);

  CHECK(is_complete_channel(identity_channel(2)).complete);
  CHECK(is_complete_channel(identity_channel(3)).complete);
  CHECK(is_complete_channel(symmetric_channel(2)).complete);
  CHECK(is_complete_channel(amplitude_damping(0.4)).complete);
  // Fully depolarizing collapses everything onto the identity: rank 1.
  const CompletenessCheck dep = is_complete_channel(depolarizing(1.0));
  CHECK(dep.rank == 1);
  CHECK(!dep.complete);
}

TEST_CASE("completeness check validates channels") {
  Rng rng(33);
  for (int trial = 0; trial < 3; ++trial) {
    const Channel c = rng.channel(2, 2);
    const CompletenessCheck chk = is_complete_channel(c);
    CHECK(chk.required == 4);
    CHECK(chk.rank >= 1);
    CHECK(chk.rank <= 4);
  }
}
