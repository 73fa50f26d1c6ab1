// Copyright 2026 The magicsim Authors
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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "magicsim/channels.h"
#include "magicsim/constrained.h"
#include "magicsim/dyadic.h"
#include "magicsim/monotones.h"
#include "magicsim/rank.h"

namespace magicsim {

// Input rejected; path is a JSON pointer to the offending value.
class SpecError : public std::invalid_argument {
   public:
    SpecError(const std::string &path, const std::string &msg)
        : std::invalid_argument(msg), path_(path) {}
    const std::string &path() const { return path_; }

   private:
    std::string path_;
};

enum class StateKind { Product, Dyads, Ensemble };

struct ProblemSpec {
    int n = 0;
    StateKind kind = StateKind::Product;
    std::vector<BlochState> product;
    DyadicDecomposition dyads;
    MixedInput ensemble;
    std::vector<SimulableChannel> circuit;
    std::optional<Measurement> measurement;
    Circuit prefix;  // Clifford gates applied before bit-string sampling
    nlohmann::json params = nlohmann::json::object();
};

BlochState parse_bloch(const nlohmann::json &j, const std::string &path);
Circuit parse_gates(const nlohmann::json &j, int n, const std::string &path);
SimulableChannel parse_channel(const nlohmann::json &j, int n, const std::string &path);
Measurement parse_measurement(const nlohmann::json &j, int n, const std::string &path);
ProblemSpec parse_problem(const nlohmann::json &j);
ProblemSpec load_problem(const std::string &file);

DyadicDecomposition problem_dyads(const ProblemSpec &p);
MixedInput problem_mixed_input(const ProblemSpec &p);
RobustnessPair problem_robustness_pair(const ProblemSpec &p);

// Keys accepted inside "params".
const std::vector<std::string> &known_params();

}  // namespace magicsim
