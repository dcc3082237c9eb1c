//  Copyright 2026 The mufix Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.


#ifndef MUFIX_CLI_COMMANDS_HPP_
#define MUFIX_CLI_COMMANDS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mufix/lattice.hpp"
#include "mufix/muexpr.hpp"
#include "mufix_cli/problem.hpp"

namespace mufix::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

// A command result. Text output is rendered from `data` alone.
struct Report {
  nlohmann::json data;
  int exit_code = kExitPass;
};

// Coordinates are 0-based here and 1-based in every report.
Report solve(const ProblemFile& problem);
Report bekic(const ProblemFile& problem, std::optional<std::size_t> coordinate = std::nullopt);

struct CheckOptions {
  // The shift identity is checked for every a in L_j when |L_j| is at most
  // this many elements; otherwise for bottom, top and a seeded sample.
  std::size_t max_values = 16;
  std::uint64_t seed = 1;
};
Report check(const ProblemFile& problem, const CheckOptions& options = {});

Report expr(std::size_t arity, std::size_t coordinate,
            std::size_t max_arity = kDefaultMaxExprArity);

struct SweepOptions {
  Lattice lattice = Lattice::chain(2);
  std::size_t arity = 2;
  // Otherwise `samples` random monotone tables, instance k drawn with seed
  // `seed + k`.
  bool exhaustive = true;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
};
Report sweep(const SweepOptions& options);

// "chain2", "chain(2)", "powerset3", "powerset(3)".
Lattice parse_lattice_name(std::string_view name);

std::string render_text(const nlohmann::json& report);

// Parses and runs one command line (without the program name) and returns
// the exit code: 0 when every executed check passed, 1 on a check failure,
// 2 on an input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mufix::cli

#endif  // MUFIX_CLI_COMMANDS_HPP_
