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

#include "antideg/json_io.hpp"

#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace antideg {

Json matrix_to_json(const CMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix JSON must be a non-empty array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j.at(0).size());
  CMat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j.at(static_cast<std::size_t>(r));
    if (static_cast<int>(row.size()) != cols)
      throw std::invalid_argument("matrix JSON rows must have equal length");
    for (int c = 0; c < cols; ++c) {
      const Json& cell = row.at(static_cast<std::size_t>(c));
      if (!cell.is_array() || cell.size() != 2)
        throw std::invalid_argument("matrix entries must be [re, im] pairs");
      m(r, c) = cxd(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return m;
}

Json channel_to_json(const Channel& c) {
  Json j;
  j["dim_in"] = c.dim_in();
  j["dim_out"] = c.dim_out();
  j["choi"] = matrix_to_json(c.choi());
  return j;
}

namespace {

double zoo_param(const Json& j, const char* primary, const char* alt) {
  if (j.contains(primary)) return j.at(primary).get<double>();
  if (alt && j.contains(alt)) return j.at(alt).get<double>();
  throw std::invalid_argument(std::string("zoo channel needs parameter '") +
                              primary + "'");
}

}  // namespace

Channel channel_from_json(const Json& j, const Tolerances& tol) {
  if (!j.is_object()) throw std::invalid_argument("channel spec must be an object");

  if (j.contains("zoo")) {
    const std::string name = j.at("zoo").get<std::string>();
    if (name == "erasure") return erasure(zoo_param(j, "p", nullptr));
    if (name == "amplitude_damping")
      return amplitude_damping(zoo_param(j, "gamma", "p"));
    if (name == "depolarizing") return depolarizing(zoo_param(j, "p", nullptr));
    if (name == "symmetric")
      return symmetric_channel(j.at("d").get<int>());
    if (name == "identity") return identity_channel(j.at("d").get<int>());
    throw std::invalid_argument("unknown zoo channel: " + name);
  }

  if (j.contains("mixture")) {
    std::vector<Channel> parts;
    std::vector<double> weights;
    for (const Json& item : j.at("mixture")) {
      weights.push_back(item.at("p").get<double>());
      parts.push_back(channel_from_json(item.at("channel"), tol));
    }
    const bool flagged = j.value("flagged", false);
    return flagged ? flagged_mixture(parts, weights) : mixture(parts, weights);
  }

  const int din = j.at("dim_in").get<int>();
  const int dout = j.at("dim_out").get<int>();
  if (j.contains("kraus")) {
    KrausRep rep;
    rep.dim_in = din;
    rep.dim_out = dout;
    for (const Json& k : j.at("kraus")) rep.operators.push_back(matrix_from_json(k));
    return Channel::from_kraus(rep, tol);
  }
  if (j.contains("choi"))
    return Channel::from_choi(din, dout, matrix_from_json(j.at("choi")), tol);
  throw std::invalid_argument("channel spec needs 'kraus', 'choi', 'zoo' or 'mixture'");
}

Json ensemble_to_json(const Ensemble& e) {
  Json j;
  j["dim"] = e.dim;
  Json items = Json::array();
  for (const auto& it : e.items) {
    Json item;
    item["p"] = it.p;
    item["rho"] = matrix_to_json(it.rho);
    items.push_back(std::move(item));
  }
  j["items"] = std::move(items);
  return j;
}

Ensemble ensemble_from_json(const Json& j) {
  Ensemble e;
  e.dim = j.at("dim").get<int>();
  for (const Json& item : j.at("items"))
    e.items.push_back({item.at("p").get<double>(),
                       matrix_from_json(item.at("rho"))});
  validate_ensemble(e);
  return e;
}

Json povm_to_json(const Povm& p) {
  Json j;
  j["dim"] = p.dim;
  Json els = Json::array();
  for (const CMat& el : p.elements) els.push_back(matrix_to_json(el));
  j["elements"] = std::move(els);
  return j;
}

Povm povm_from_json(const Json& j) {
  Povm p;
  p.dim = j.at("dim").get<int>();
  for (const Json& el : j.at("elements")) p.elements.push_back(matrix_from_json(el));
  validate_povm(p);
  return p;
}

Json state_to_json(const BipartiteState& s) {
  Json j;
  j["dim_a"] = s.dim_a;
  j["dim_b"] = s.dim_b;
  j["matrix"] = matrix_to_json(s.matrix);
  return j;
}

BipartiteState state_from_json(const Json& j) {
  BipartiteState s{j.at("dim_a").get<int>(), j.at("dim_b").get<int>(),
                   matrix_from_json(j.at("matrix"))};
  validate_state(s);
  return s;
}

Json witness_to_json(const GameWitness& w) {
  Json j;
  j["bob_channel"] = channel_to_json(w.bob_channel);
  j["eve_channel"] = channel_to_json(w.eve_channel);
  j["side_channel"] = channel_to_json(w.side_channel);
  j["ensemble"] = ensemble_to_json(w.ensemble);
  j["bob_povm"] = povm_to_json(w.bob_povm);
  j["eve_povm"] = povm_to_json(w.eve_povm);
  j["p_bob"] = w.p_bob;
  j["p_eve"] = w.p_eve;
  j["gap"] = w.gap;
  j["restart_seed"] = w.restart_seed;
  return j;
}

GameWitness witness_from_json(const Json& j, const Tolerances& tol) {
  return GameWitness{channel_from_json(j.at("bob_channel"), tol),
                     channel_from_json(j.at("eve_channel"), tol),
                     channel_from_json(j.at("side_channel"), tol),
                     ensemble_from_json(j.at("ensemble")),
                     povm_from_json(j.at("bob_povm")),
                     povm_from_json(j.at("eve_povm")),
                     j.at("p_bob").get<double>(),
                     j.at("p_eve").get<double>(),
                     j.at("gap").get<double>(),
                     j.at("restart_seed").get<std::uint64_t>()};
}

Json run_config_to_json(const RunConfig& cfg) {
  Json j;
  j["seed"] = cfg.seed;
  j["sim_rounds"] = cfg.sim_rounds;
  j["solver"] = {{"abs_tol", cfg.compare.solver.abs_tol},
                 {"max_iters", cfg.compare.solver.max_iters},
                 {"over_relax", cfg.compare.solver.over_relax},
                 {"rho", cfg.compare.solver.rho},
                 {"adapt_rho", cfg.compare.solver.adapt_rho}};
  j["seesaw"] = {{"restarts", cfg.compare.seesaw.restarts},
                 {"rounds", cfg.compare.seesaw.rounds},
                 {"min_gap", cfg.compare.seesaw.min_gap},
                 {"outcomes", cfg.compare.seesaw.outcomes},
                 {"seed", cfg.compare.seesaw.seed},
                 {"plateau_eps", cfg.compare.seesaw.plateau_eps},
                 {"early_stop_gap", cfg.compare.seesaw.early_stop_gap},
                 {"inner_abs_tol", cfg.compare.seesaw.solver.abs_tol}};
  j["tolerances"] = {{"validation", cfg.compare.tol.validation},
                     {"extension_pass", cfg.compare.tol.extension_pass},
                     {"extension_fail", cfg.compare.tol.extension_fail},
                     {"statistic_match", cfg.compare.tol.statistic_match}};
  j["rng"] = "mt19937_64/53-bit";
  return j;
}

RunConfig run_config_from_json(const Json& j) {
  RunConfig cfg;
  cfg.seed = j.value("seed", cfg.seed);
  cfg.sim_rounds = j.value("sim_rounds", cfg.sim_rounds);
  if (j.contains("solver")) {
    const Json& s = j.at("solver");
    cfg.compare.solver.abs_tol = s.value("abs_tol", cfg.compare.solver.abs_tol);
    cfg.compare.solver.max_iters = s.value("max_iters", cfg.compare.solver.max_iters);
    cfg.compare.solver.over_relax =
        s.value("over_relax", cfg.compare.solver.over_relax);
    cfg.compare.solver.rho = s.value("rho", cfg.compare.solver.rho);
    cfg.compare.solver.adapt_rho = s.value("adapt_rho", cfg.compare.solver.adapt_rho);
  }
  if (j.contains("seesaw")) {
    const Json& s = j.at("seesaw");
    auto& sw = cfg.compare.seesaw;
    sw.restarts = s.value("restarts", sw.restarts);
    sw.rounds = s.value("rounds", sw.rounds);
    sw.min_gap = s.value("min_gap", sw.min_gap);
    sw.outcomes = s.value("outcomes", sw.outcomes);
    sw.seed = s.value("seed", sw.seed);
    sw.plateau_eps = s.value("plateau_eps", sw.plateau_eps);
    sw.early_stop_gap = s.value("early_stop_gap", sw.early_stop_gap);
    sw.solver.abs_tol = s.value("inner_abs_tol", sw.solver.abs_tol);
  }
  if (j.contains("tolerances")) {
    const Json& t = j.at("tolerances");
    auto& tol = cfg.compare.tol;
    tol.validation = t.value("validation", tol.validation);
    tol.extension_pass = t.value("extension_pass", tol.extension_pass);
    tol.extension_fail = t.value("extension_fail", tol.extension_fail);
    tol.statistic_match = t.value("statistic_match", tol.statistic_match);
  }
  cfg.seed = j.value("seed", cfg.seed);
  return cfg;
}

namespace {

const char* verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::degradable:
      return "Degradable";
    case VerdictKind::not_degradable:
      return "NotDegradable";
    case VerdictKind::inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

}  // namespace

Json verdict_to_json(const OrderingVerdict& v, const RunConfig& cfg) {
  Json j;
  j["verdict"] = verdict_name(v.kind);
  j["diagnostics"] = {{"residual", v.diagnostics.residual},
                      {"best_gap", v.diagnostics.best_gap},
                      {"sdp_iterations", v.diagnostics.sdp_iterations},
                      {"restarts_used", v.diagnostics.restarts_used},
                      {"note", v.diagnostics.note}};
  if (v.certificate) {
    Json c;
    c["degrader"] = channel_to_json(v.certificate->degrader);
    c["residual"] = v.certificate->residual;
    j["certificate"] = std::move(c);
  }
  if (v.witness) j["witness"] = witness_to_json(*v.witness);
  j["config"] = run_config_to_json(cfg);
  return j;
}

Json simulation_to_json(const SimulationReport& r, const RunConfig& cfg) {
  Json j;
  j["rounds"] = r.rounds;
  j["bob_hits"] = r.bob_hits;
  j["eve_hits"] = r.eve_hits;
  j["bob_rate"] = r.bob_rate;
  j["eve_rate"] = r.eve_rate;
  j["bob_se"] = r.bob_se;
  j["eve_se"] = r.eve_se;
  j["p_bob"] = r.p_bob;
  j["p_eve"] = r.p_eve;
  j["bob_within_3se"] = r.bob_within_3se;
  j["eve_within_3se"] = r.eve_within_3se;
  j["seed"] = r.seed;
  j["config"] = run_config_to_json(cfg);
  return j;
}

Json consistency_to_json(const ConsistencyReport& r, const RunConfig& cfg) {
  Json j;
  j["residual"] = r.residual;
  j["gap_bound"] = r.gap_bound;
  j["witness_found"] = r.witness_found;
  j["gap"] = r.gap;
  j["p_bob"] = r.p_bob;
  j["p_eve"] = r.p_eve;
  j["flags"] = r.flags;
  j["consistent"] = r.consistent;
  j["config"] = run_config_to_json(cfg);
  return j;
}

}  // namespace antideg
