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

#include <nlohmann/json.hpp>

#include "antideg/json_io.hpp"
#include "antideg/rng.hpp"

using namespace antideg;

TEST_CASE("matrix serialization is a bitwise round trip") {
  Rng rng(71);
  const CMat m = rng.gaussian_matrix(3, 4);
  const CMat back = matrix_from_json(matrix_to_json(m));
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 4);
  CHECK(frob_norm(m - back) == 0.0);  // shortest-round-trip doubles
}

TEST_CASE("zoo channel specs parse to the builtin constructions") {
  const Channel er = channel_from_json(Json{{"zoo", "erasure"}, {"p", 0.4}});
  CHECK(er.dim_in() == 2);
  CHECK(er.dim_out() == 3);
  CHECK(frob_norm(er.choi() - erasure(0.4).choi()) == 0.0);

  const Channel ad =
      channel_from_json(Json{{"zoo", "amplitude_damping"}, {"gamma", 0.3}});
  CHECK(frob_norm(ad.choi() - amplitude_damping(0.3).choi()) == 0.0);

  const Channel dep = channel_from_json(Json{{"zoo", "depolarizing"}, {"p", 0.2}});
  CHECK(frob_norm(dep.choi() - depolarizing(0.2).choi()) == 0.0);

  const Channel sym = channel_from_json(Json{{"zoo", "symmetric"}, {"d", 2}});
  CHECK(frob_norm(sym.choi() - symmetric_channel(2).choi()) == 0.0);

  const Channel id = channel_from_json(Json{{"zoo", "identity"}, {"d", 3}});
  CHECK(frob_norm(id.choi() - identity_channel(3).choi()) == 0.0);

  CHECK_THROWS_AS(channel_from_json(Json{{"zoo", "unknown"}}),
                  std::invalid_argument);
}

TEST_CASE("explicit channel encodings round trip") {
  Rng rng(72);
  const Channel c = rng.channel(2, 3);
  const Channel back = channel_from_json(channel_to_json(c));
  CHECK(back.dim_in() == 2);
  CHECK(back.dim_out() == 3);
  CHECK(frob_norm(back.choi() - c.choi()) == 0.0);

  // Kraus form.
  const KrausRep kr = to_kraus(c);
  Json j;
  j["dim_in"] = kr.dim_in;
  j["dim_out"] = kr.dim_out;
  j["kraus"] = Json::array();
  for (const CMat& k : kr.operators) j["kraus"].push_back(matrix_to_json(k));
  const Channel from_kraus_json = channel_from_json(j);
  CHECK(frob_norm(from_kraus_json.choi() - c.choi()) < 1e-10);

  // Mixtures, flagged and plain.
  Json mix;
  mix["mixture"] = Json::array();
  mix["mixture"].push_back(
      {{"p", 0.5}, {"channel", Json{{"zoo", "erasure"}, {"p", 0.2}}}});
  mix["mixture"].push_back(
      {{"p", 0.5}, {"channel", Json{{"zoo", "erasure"}, {"p", 0.8}}}});
  const Channel plain = channel_from_json(mix);
  CHECK(frob_norm(plain.choi() -
                  mixture({erasure(0.2), erasure(0.8)}, {0.5, 0.5}).choi()) <
        1e-12);
  mix["flagged"] = true;
  const Channel flagged = channel_from_json(mix);
  CHECK(frob_norm(flagged.choi() -
                  flagged_mixture({erasure(0.2), erasure(0.8)}, {0.5, 0.5})
                      .choi()) < 1e-12);
}

TEST_CASE("channel parsing validates structure") {
  // Broken Choi: not trace preserving.
  Json bad;
  bad["dim_in"] = 2;
  bad["dim_out"] = 2;
  bad["choi"] = matrix_to_json(cmat_zero(4, 4));
  CHECK_THROWS(channel_from_json(bad));
  // Missing fields.
  CHECK_THROWS(channel_from_json(Json{{"dim_in", 2}}));
}

TEST_CASE("ensemble, povm and state round trips validate on load") {
  Rng rng(73);
  const Povm p = rng.povm(2, 3);
  const Povm p2 = povm_from_json(povm_to_json(p));
  REQUIRE(p2.elements.size() == p.elements.size());
  for (std::size_t i = 0; i < p.elements.size(); ++i)
    CHECK(frob_norm(p2.elements[i] - p.elements[i]) == 0.0);

  Ensemble e;
  e.dim = 2;
  e.items.push_back({0.25, rng.density(2)});
  e.items.push_back({0.75, rng.density(2)});
  const Ensemble e2 = ensemble_from_json(ensemble_to_json(e));
  REQUIRE(e2.items.size() == 2);
  CHECK(e2.items[0].p == 0.25);
  CHECK(frob_norm(e2.items[1].rho - e.items[1].rho) == 0.0);

  const BipartiteState s{2, 3, tensor(rng.density(2), rng.density(3))};
  const BipartiteState s2 = state_from_json(state_to_json(s));
  CHECK(s2.dim_a == 2);
  CHECK(s2.dim_b == 3);
  CHECK(frob_norm(s2.matrix - s.matrix) == 0.0);

  // Loading runs the validators.
  Json neg = povm_to_json(p);
  neg["elements"][0][0][0][0] = -5.0;
  CHECK_THROWS(povm_from_json(neg));
}

TEST_CASE("witness round trip preserves every field") {
  const OrderingVerdict v = is_antidegradable(erasure(0.3));
  REQUIRE(v.witness.has_value());
  const GameWitness& w = *v.witness;
  const GameWitness back = witness_from_json(witness_to_json(w));
  CHECK(back.p_bob == w.p_bob);
  CHECK(back.p_eve == w.p_eve);
  CHECK(back.gap == w.gap);
  CHECK(back.restart_seed == w.restart_seed);
  CHECK(frob_norm(back.bob_channel.choi() - w.bob_channel.choi()) == 0.0);
  CHECK(frob_norm(back.side_channel.choi() - w.side_channel.choi()) == 0.0);
  REQUIRE(back.ensemble.items.size() == w.ensemble.items.size());
  REQUIRE(back.bob_povm.elements.size() == w.bob_povm.elements.size());

  // And the deserialized witness still verifies.
  const double gap = verify_witness_gap(back, SolverConfig{1e-9});
  CHECK(std::abs(gap - w.gap) < 1e-6);
}

TEST_CASE("run config embeds solver, see-saw and rng provenance") {
  RunConfig cfg;
  cfg.seed = 42;
  cfg.compare.solver.abs_tol = 1e-8;
  const Json j = run_config_to_json(cfg);
  CHECK(j["seed"] == 42);
  CHECK(j["solver"]["abs_tol"] == 1e-8);
  CHECK(j["rng"] == "mt19937_64/53-bit");
  CHECK(j.contains("seesaw"));
  CHECK(j.contains("tolerances"));

  const RunConfig back = run_config_from_json(j);
  CHECK(back.seed == 42);
  CHECK(back.compare.solver.abs_tol == 1e-8);
}

TEST_CASE("verdict reports carry the full decision context") {
  const OrderingVerdict v = is_antidegradable(erasure(0.5));
  const Json j = verdict_to_json(v, RunConfig{});
  CHECK(j["verdict"] == "Degradable");
  CHECK(j.contains("certificate"));
  CHECK(!j.contains("witness"));
  CHECK(j["diagnostics"].contains("residual"));
  CHECK(j.contains("config"));

  // Deterministic serialization: two runs, identical bytes.
  const OrderingVerdict v2 = is_antidegradable(erasure(0.5));
  CHECK(verdict_to_json(v2, RunConfig{}).dump() == j.dump());
}

TEST_CASE("malformed json raises parse errors with location info") {
  const std::string truncated = R"({"zoo": "erasure", "p": 0.)";
  bool threw = false;
  try {
    (void)Json::parse(truncated);
  } catch (const std::exception& ex) {
    threw = true;
    CHECK(std::string(ex.what()).find("parse error") != std::string::npos);
  }
  CHECK(threw);
}
