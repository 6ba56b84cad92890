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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "antideg/comparison.hpp"
#include "antideg/json_io.hpp"

namespace {

using antideg::Json;

constexpr int kExitDegradable = 0;
constexpr int kExitNotDegradable = 10;
constexpr int kExitInconclusive = 20;
constexpr int kExitInputError = 1;

int verdict_exit(antideg::VerdictKind k) {
  switch (k) {
    case antideg::VerdictKind::degradable:
      return kExitDegradable;
    case antideg::VerdictKind::not_degradable:
      return kExitNotDegradable;
    case antideg::VerdictKind::inconclusive:
      return kExitInconclusive;
  }
  return kExitInconclusive;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return Json::parse(in);  // parse errors carry the byte position
}

void emit(const Json& j, const std::string& out_path) {
  const std::string text = j.dump(2);
  std::cout << text << "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << text << "\n";
  }
}

struct CommonFlags {
  double tol = 1e-9;
  std::uint64_t seed = 1;
  int rounds = 0;    // see-saw rounds (0 = default), or G for simulate
  int restarts = 0;  // see-saw restarts (0 = default)
  std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--tol", flags.tol, "solver stopping tolerance");
  cmd->add_option("--seed", flags.seed, "seed for every stochastic choice");
  cmd->add_option("--rounds", flags.rounds,
                  "see-saw rounds (or Monte-Carlo rounds for simulate)");
  cmd->add_option("--restarts", flags.restarts, "see-saw restarts");
  cmd->add_option("--out", flags.out, "also write the report to this file");
}

antideg::RunConfig make_config(const CommonFlags& flags, bool rounds_are_mc) {
  antideg::RunConfig cfg;
  cfg.seed = flags.seed;
  cfg.compare.solver.abs_tol = flags.tol;
  cfg.compare.seesaw.seed = flags.seed;
  if (flags.restarts > 0) cfg.compare.seesaw.restarts = flags.restarts;
  if (flags.rounds > 0) {
    if (rounds_are_mc)
      cfg.sim_rounds = flags.rounds;
    else
      cfg.compare.seesaw.rounds = flags.rounds;
  }
  return cfg;
}

int run_threshold(const std::string& family, double lo, double hi,
                  const antideg::RunConfig& cfg, const std::string& out_path) {
  auto make = [&](double p) -> antideg::Channel {
    if (family == "erasure") return antideg::erasure(p);
    if (family == "amplitude_damping") return antideg::amplitude_damping(p);
    throw std::invalid_argument("threshold supports 'erasure' and 'amplitude_damping'");
  };
  auto verdict_at = [&](double p) {
    return antideg::is_antidegradable(make(p), cfg.compare).kind;
  };
  using antideg::VerdictKind;

  Json report;
  report["family"] = family;
  Json evals = Json::array();
  auto record = [&](double p, VerdictKind k) {
    evals.push_back({{"param", p},
                     {"verdict", k == VerdictKind::degradable      ? "Degradable"
                                 : k == VerdictKind::not_degradable ? "NotDegradable"
                                                                     : "Inconclusive"}});
  };

  const VerdictKind at_lo = verdict_at(lo);
  record(lo, at_lo);
  const VerdictKind at_hi = verdict_at(hi);
  record(hi, at_hi);

  auto finish = [&](const Json& extra, int code) {
    for (const auto& [k, v] : extra.items()) report[k] = v;
    report["evaluations"] = evals;
    report["config"] = run_config_to_json(cfg);
    emit(report, out_path);
    return code;
  };

  if (at_lo == VerdictKind::inconclusive || at_hi == VerdictKind::inconclusive)
    return finish({{"error", "inconclusive verdict at a range endpoint"}},
                  kExitInconclusive);
  if (at_lo == at_hi) {
    // No verdict change over the range: the threshold sits at (or beyond)
    // one edge of it.
    const double edge = at_lo == VerdictKind::degradable ? lo : hi;
    return finish({{"note", "no verdict change across the range"},
                   {"bracket", {edge, edge}}},
                  kExitDegradable);
  }

  // Orientation: which end is degradable.
  double nd = at_lo == VerdictKind::not_degradable ? lo : hi;
  double dg = at_lo == VerdictKind::degradable ? lo : hi;
  while (std::abs(dg - nd) > 0.02) {
    const double mid = 0.5 * (nd + dg);
    const VerdictKind at_mid = verdict_at(mid);
    record(mid, at_mid);
    if (at_mid == VerdictKind::inconclusive)
      return finish({{"error", "inconclusive verdict at a bisection point"},
                     {"bracket", {std::min(nd, dg), std::max(nd, dg)}}},
                    kExitInconclusive);
    (at_mid == VerdictKind::degradable ? dg : nd) = mid;
  }
  return finish({{"bracket", {std::min(nd, dg), std::max(nd, dg)}},
                 {"estimate", 0.5 * (nd + dg)}},
                kExitDegradable);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"antidegradability analyzer: degrading-map certificates and "
               "guessing-game witnesses for quantum channels"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string path_a, path_b, family;
  double range_lo = 0.0, range_hi = 1.0;
  std::string kind = "channel";

  CLI::App* analyze = app.add_subcommand(
      "analyze", "decide antidegradability of a channel spec");
  analyze->add_option("channel", path_a, "channel spec JSON")->required();
  add_common(analyze, flags);

  CLI::App* compare = app.add_subcommand(
      "compare", "decide whether the first channel extends the second");
  compare->add_option("alpha", path_a, "extension candidate JSON")->required();
  compare->add_option("beta", path_b, "target channel JSON")->required();
  add_common(compare, flags);

  CLI::App* guess = app.add_subcommand(
      "guess", "optimal guessing probability of an ensemble through a channel");
  guess->add_option("channel", path_a, "channel spec JSON")->required();
  guess->add_option("ensemble", path_b, "ensemble JSON")->required();
  add_common(guess, flags);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte-Carlo play of a witness's guessing game");
  simulate->add_option("witness", path_a, "witness JSON")->required();
  add_common(simulate, flags);

  CLI::App* threshold = app.add_subcommand(
      "threshold", "bisect a zoo family's antidegradability threshold");
  threshold->add_option("family", family, "erasure or amplitude_damping")
      ->required();
  threshold->add_option("--lo", range_lo, "range start");
  threshold->add_option("--hi", range_hi, "range end");
  add_common(threshold, flags);

  CLI::App* zoo = app.add_subcommand("zoo", "list built-in channels");
  zoo->add_option("--out", flags.out, "also write the report to this file");

  CLI::App* validate = app.add_subcommand(
      "validate", "check a JSON object against its type invariants");
  validate->add_option("file", path_a, "JSON file")->required();
  validate->add_option("--kind", kind,
                       "channel|ensemble|povm|state|witness (default channel)");
  validate->add_option("--out", flags.out, "also write the report to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) {
      const antideg::RunConfig cfg = make_config(flags, false);
      const antideg::Channel c = antideg::channel_from_json(load_json(path_a));
      const antideg::OrderingVerdict v = antideg::is_antidegradable(c, cfg.compare);
      emit(antideg::verdict_to_json(v, cfg), flags.out);
      return verdict_exit(v.kind);
    }
    if (compare->parsed()) {
      const antideg::RunConfig cfg = make_config(flags, false);
      const antideg::Channel a = antideg::channel_from_json(load_json(path_a));
      const antideg::Channel b = antideg::channel_from_json(load_json(path_b));
      const antideg::OrderingVerdict v = antideg::is_extension(a, b, cfg.compare);
      emit(antideg::verdict_to_json(v, cfg), flags.out);
      return verdict_exit(v.kind);
    }
    if (guess->parsed()) {
      const antideg::RunConfig cfg = make_config(flags, false);
      const antideg::Channel c = antideg::channel_from_json(load_json(path_a));
      const antideg::Ensemble e = antideg::ensemble_from_json(load_json(path_b));
      const antideg::GuessResult r =
          antideg::guessing_probability(c, e, cfg.compare.solver);
      Json j;
      j["pstar"] = r.pstar;
      j["dual_gap"] = r.dual_gap;
      j["iterations"] = r.iterations;
      j["povm"] = antideg::povm_to_json(r.povm);
      j["config"] = run_config_to_json(cfg);
      emit(j, flags.out);
      return 0;
    }
    if (simulate->parsed()) {
      const antideg::RunConfig cfg = make_config(flags, true);
      const antideg::GameWitness w = antideg::witness_from_json(load_json(path_a));
      const antideg::SimulationReport r =
          antideg::simulate_witness(w, cfg.sim_rounds, cfg.seed);
      emit(antideg::simulation_to_json(r, cfg), flags.out);
      return 0;
    }
    if (threshold->parsed()) {
      const antideg::RunConfig cfg = make_config(flags, false);
      return run_threshold(family, range_lo, range_hi, cfg, flags.out);
    }
    if (zoo->parsed()) {
      Json j;
      j["channels"] = {
          {{"zoo", "erasure"}, {"params", {"p"}}, {"dims", "2 -> 3"}},
          {{"zoo", "amplitude_damping"}, {"params", {"gamma"}}, {"dims", "2 -> 2"}},
          {{"zoo", "depolarizing"}, {"params", {"p"}}, {"dims", "2 -> 2"}},
          {{"zoo", "symmetric"}, {"params", {"d"}}, {"dims", "d(d+1)/2 -> d"}},
          {{"zoo", "identity"}, {"params", {"d"}}, {"dims", "d -> d"}}};
      emit(j, flags.out);
      return 0;
    }
    if (validate->parsed()) {
      const Json j = load_json(path_a);
      if (kind == "channel")
        antideg::channel_from_json(j);
      else if (kind == "ensemble")
        antideg::ensemble_from_json(j);
      else if (kind == "povm")
        antideg::povm_from_json(j);
      else if (kind == "state")
        antideg::state_from_json(j);
      else if (kind == "witness")
        antideg::witness_from_json(j);
      else
        throw std::invalid_argument("unknown kind: " + kind);
      Json ok;
      ok["valid"] = true;
      ok["kind"] = kind;
      emit(ok, flags.out);
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
