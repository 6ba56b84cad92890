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

// End-to-end tests that drive the installed CLI binary through std::system.
// The binary path is injected at compile time as ANTIDEG_CLI_PATH.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "antideg/json_io.hpp"

#if defined(__unix__) || defined(__APPLE__)
#include <sys/wait.h>
#endif

namespace fs = std::filesystem;
using antideg::Json;

namespace {

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "antideg_cli_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  REQUIRE(out.good());
  out << text;
}

void write_json(const fs::path& p, const Json& j) { write_text(p, j.dump(2)); }

Json read_json(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return Json::parse(in);
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI with the given arguments, discarding console output, and
// returns the process exit code.
int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + ANTIDEG_CLI_PATH + "\" " + args +
                          " > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
#if defined(__unix__) || defined(__APPLE__)
  REQUIRE(WIFEXITED(raw));
  return WEXITSTATUS(raw);
#else
  return raw;
#endif
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("analyze reports a certificate for an antidegradable channel") {
  const fs::path spec = work_dir() / "erasure_high.json";
  const fs::path out = work_dir() / "verdict_high.json";
  write_json(spec, Json{{"zoo", "erasure"}, {"p", 0.5}});

  const int code = run_cli("analyze " + q(spec) + " --out " + q(out));
  CHECK(code == 0);

  const Json v = read_json(out);
  CHECK(v.at("verdict") == "Degradable");
  REQUIRE(v.contains("certificate"));
  CHECK(v.at("certificate").at("residual").get<double>() <= 1e-6);
  CHECK(!v.contains("witness"));
  CHECK(v.at("config").at("rng") == "mt19937_64/53-bit");
}

TEST_CASE("analyze produces a verified witness for a non-antidegradable channel") {
  const fs::path spec = work_dir() / "erasure_low.json";
  const fs::path out = work_dir() / "verdict_low.json";
  write_json(spec, Json{{"zoo", "erasure"}, {"p", 0.3}});

  const int code = run_cli("analyze " + q(spec) + " --seed 5 --out " + q(out));
  CHECK(code == 10);

  const Json v = read_json(out);
  CHECK(v.at("verdict") == "NotDegradable");
  REQUIRE(v.contains("witness"));
  const Json& w = v.at("witness");
  const double gap = w.at("gap").get<double>();
  CHECK(gap > 1e-3);
  CHECK(w.at("p_bob").get<double>() > w.at("p_eve").get<double>());

  SUBCASE("repeat runs with the same seed are byte-identical") {
    const fs::path out2 = work_dir() / "verdict_low_repeat.json";
    CHECK(run_cli("analyze " + q(spec) + " --seed 5 --out " + q(out2)) == 10);
    CHECK(read_text(out2) == read_text(out));
  }

  SUBCASE("the emitted witness loads, validates and simulates to agreement") {
    const fs::path wfile = work_dir() / "witness_low.json";
    write_json(wfile, w);
    CHECK(run_cli("validate " + q(wfile) + " --kind witness") == 0);

    const fs::path sim = work_dir() / "sim_low.json";
    const int sim_code = run_cli("simulate " + q(wfile) +
                                 " --rounds 20000 --seed 7 --out " + q(sim));
    CHECK(sim_code == 0);
    const Json s = read_json(sim);
    CHECK(s.at("rounds") == 20000);
    CHECK(s.at("bob_within_3se") == true);
    CHECK(s.at("eve_within_3se") == true);
    CHECK(s.at("bob_rate").get<double>() > s.at("eve_rate").get<double>());

    // Same seed, same bytes; a different seed moves the empirical rates.
    const fs::path sim2 = work_dir() / "sim_low_repeat.json";
    CHECK(run_cli("simulate " + q(wfile) + " --rounds 20000 --seed 7 --out " +
                  q(sim2)) == 0);
    CHECK(read_text(sim2) == read_text(sim));
    const fs::path sim3 = work_dir() / "sim_low_other_seed.json";
    CHECK(run_cli("simulate " + q(wfile) + " --rounds 20000 --seed 8 --out " +
                  q(sim3)) == 0);
    CHECK(read_json(sim3).at("bob_hits") != s.at("bob_hits"));
  }
}

TEST_CASE("guess recovers the known erasure guessing probability") {
  const fs::path spec = work_dir() / "erasure_half.json";
  write_json(spec, Json{{"zoo", "erasure"}, {"p", 0.5}});

  Json ens;
  ens["dim"] = 2;
  ens["items"] = Json::array();
  ens["items"].push_back(
      {{"p", 0.5}, {"rho", {{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {0.0, 0.0}}}}});
  ens["items"].push_back(
      {{"p", 0.5}, {"rho", {{{0.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {1.0, 0.0}}}}});
  const fs::path epath = work_dir() / "basis_ensemble.json";
  write_json(epath, ens);

  const fs::path out = work_dir() / "guess.json";
  CHECK(run_cli("guess " + q(spec) + " " + q(epath) + " --out " + q(out)) == 0);
  const Json g = read_json(out);
  // Half the time the state survives (perfect discrimination), half the time
  // it is erased (coin flip): 0.5 + 0.5/2.
  CHECK(std::abs(g.at("pstar").get<double>() - 0.75) < 1e-6);
  CHECK(g.at("povm").at("elements").size() == 2);
}

TEST_CASE("threshold reports a degenerate bracket when no verdict change occurs") {
  const fs::path out = work_dir() / "threshold_degenerate.json";
  const int code =
      run_cli("threshold erasure --lo 0.9 --hi 1.0 --out " + q(out));
  CHECK(code == 0);
  const Json t = read_json(out);
  REQUIRE(t.contains("bracket"));
  CHECK(t.at("bracket").at(0).get<double>() == 0.9);
  CHECK(t.at("bracket").at(1).get<double>() == 0.9);
  CHECK(t.at("note") == "no verdict change across the range");
  CHECK(t.at("evaluations").size() == 2);
}

TEST_CASE("validate accepts good inputs and rejects broken ones") {
  const fs::path good = work_dir() / "good_channel.json";
  write_json(good, Json{{"zoo", "amplitude_damping"}, {"gamma", 0.25}});
  CHECK(run_cli("validate " + q(good)) == 0);

  // POVM with a negative element.
  Json bad_povm;
  bad_povm["dim"] = 2;
  bad_povm["elements"] = {{{{1.5, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {1.0, 0.0}}},
                          {{{-0.5, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {0.0, 0.0}}}};
  const fs::path badp = work_dir() / "bad_povm.json";
  write_json(badp, bad_povm);
  CHECK(run_cli("validate " + q(badp) + " --kind povm") == 1);

  // Truncated JSON.
  const fs::path trunc = work_dir() / "truncated.json";
  write_text(trunc, R"({"zoo": "erasure", "p": 0.)");
  CHECK(run_cli("validate " + q(trunc)) == 1);
  CHECK(run_cli("analyze " + q(trunc)) == 1);

  // Missing file.
  CHECK(run_cli("analyze " + q(work_dir() / "no_such_file.json")) == 1);
}

TEST_CASE("zoo lists the builtin families") {
  const fs::path out = work_dir() / "zoo.json";
  CHECK(run_cli("zoo --out " + q(out)) == 0);
  const Json z = read_json(out);
  REQUIRE(z.contains("channels"));
  CHECK(z.at("channels").size() == 5);
}

TEST_CASE("compare certifies a constructed extension through the cli") {
  // beta = depolarize-after-alpha is degraded from alpha by construction.
  const fs::path a = work_dir() / "alpha.json";
  const fs::path b = work_dir() / "beta.json";
  write_json(a, Json{{"zoo", "amplitude_damping"}, {"gamma", 0.3}});
  const antideg::Channel beta =
      antideg::compose(antideg::depolarizing(0.4), antideg::amplitude_damping(0.3));
  write_json(b, antideg::channel_to_json(beta));

  const fs::path out = work_dir() / "compare.json";
  CHECK(run_cli("compare " + q(a) + " " + q(b) + " --out " + q(out)) == 0);
  CHECK(read_json(out).at("verdict") == "Degradable");
}
