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


#ifndef MUFIX_CLI_PROBLEM_HPP_
#define MUFIX_CLI_PROBLEM_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mufix/error.hpp"
#include "mufix/lattice.hpp"
#include "mufix/monofn.hpp"

namespace mufix::cli {

// A problem file rejected by the parser. what() reads
// "<source>:<line>:<column>: <message>"; line and column are 1-based, and 0
// when the error is not tied to a position.
class ProblemError : public Error {
 public:
  ProblemError(std::string source, std::size_t line, std::size_t column,
               std::string message);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string source_;
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

struct LatticeDecl {
  std::string name;
  Lattice lattice;
  std::size_t line = 0;
};

enum class FunctionMode { kTable, kTerms };

// A validated system x = f(x). Table functions have been checked for
// monotonicity; term functions are monotone by construction.
struct ProblemFile {
  std::string source;
  std::optional<std::string> description;
  std::vector<LatticeDecl> lattices;
  // Declared lattice name per coordinate.
  std::vector<std::string> coordinate_lattices;
  std::vector<Lattice> domain;
  FunctionMode mode = FunctionMode::kTable;
  VectorFn function;

  std::size_t arity() const { return domain.size(); }
};

// Grammar, one statement per line, `#` starts a comment:
//
//   description <free text>
//   lattice <name> = chain <k> | powerset <m> | product <name> <name>...
//   coords <lattice name>...          one entry per coordinate
//   arity <n>                         optional; must match coords
//   mode table | terms
//   (<e1>, ..., <en>) -> (<e1>, ..., <en>)          table mode
//   f<i> = <term>                                   terms mode
//
//   <term> ::= x<j> | const(<elem>) | join(<term>, <term>, ...)
//            | meet(<term>, <term>, ...) | mono([<elem>, ...], <term>)
//
// Elements use the lattice literals: chain "2", powerset "{0,1}", product
// "(1,{0})". Coordinates x<j> and f<i> are numbered from 1.
ProblemFile parse_problem(const std::filesystem::path& path);
ProblemFile parse_problem_text(std::string_view text, std::string source = "<input>");

}  // namespace mufix::cli

#endif  // MUFIX_CLI_PROBLEM_HPP_
