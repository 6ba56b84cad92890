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
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "antideg/channels.hpp"
#include "antideg/comparison.hpp"
#include "antideg/config.hpp"
#include "antideg/games.hpp"

namespace antideg {

// Reports and parsers use ordered JSON so that a fixed input and seed
// produce byte-identical output.
using Json = nlohmann::ordered_json;

// Everything a run needs for bitwise reproduction; embedded into every
// emitted report.
struct RunConfig {
  CompareConfig compare{};
  long long sim_rounds = 100000;
  std::uint64_t seed = 1;
};

// Complex matrices travel as rows of [re, im] pairs.
Json matrix_to_json(const CMat& m);
CMat matrix_from_json(const Json& j);

// Channels serialize as {"dim_in", "dim_out", "choi"} and parse from any of
// {"kraus"}, {"choi"}, {"zoo", params...} or {"mixture": [{p, channel}...],
// "flagged": bool}.
Json channel_to_json(const Channel& c);
Channel channel_from_json(const Json& j, const Tolerances& tol = kDefaultTol);

Json ensemble_to_json(const Ensemble& e);
Ensemble ensemble_from_json(const Json& j);

Json povm_to_json(const Povm& p);
Povm povm_from_json(const Json& j);

Json state_to_json(const BipartiteState& s);
BipartiteState state_from_json(const Json& j);

Json witness_to_json(const GameWitness& w);
GameWitness witness_from_json(const Json& j, const Tolerances& tol = kDefaultTol);

Json run_config_to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const Json& j);

Json verdict_to_json(const OrderingVerdict& v, const RunConfig& cfg);
Json simulation_to_json(const SimulationReport& r, const RunConfig& cfg);
Json consistency_to_json(const ConsistencyReport& r, const RunConfig& cfg);

}  // namespace antideg
