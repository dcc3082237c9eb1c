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

#ifndef MUFIX_MUEXPR_HPP_
#define MUFIX_MUEXPR_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mufix/bekic.hpp"
#include "mufix/lattice.hpp"
#include "mufix/monofn.hpp"

namespace mufix {

// Immutable mu-expression tree over the coordinate functions f_1..f_n.
// Variables are named by coordinate; in a full expansion no path binds the
// same coordinate twice, so names never capture.
class MuExpr {
 public:
  enum class Kind { kMu, kApp, kVar, kHole };

  static MuExpr mu(std::size_t coordinate, MuExpr body);
  // f_coordinate(args...).
  static MuExpr app(std::size_t coordinate, std::vector<MuExpr> args);
  static MuExpr var(std::size_t coordinate);
  // A coordinate fixed by a binding map to a concrete element.
  static MuExpr hole(std::size_t coordinate, Elem value);

  Kind kind() const;
  std::size_t coordinate() const;
  const MuExpr& body() const;           // kMu
  std::span<const MuExpr> args() const; // kApp
  const Elem& value() const;            // kHole

 private:
  struct Node;
  explicit MuExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline constexpr std::size_t kDefaultMaxExprArity = 7;

// Mu binders in a full expansion of arity n: the number of repetition-free
// coordinate sequences starting at a fixed coordinate.
std::uint64_t predicted_mu_count(std::size_t n);

// The nested fixpoint recursion performed on syntax:
//   mu x_i. f_i(a_1, ..., a_n),  a_j = x_i              if j = i
//                                    = <B(j)>           if B(j) bound
//                                    = x_j              if j is bound by an
//                                                       enclosing binder
//                                    = build(j, ...)    otherwise
// Refuses with CapExceeded, naming the predicted size, when n > max_arity.
MuExpr build_nested_expr(std::size_t n, std::size_t i, const BindingMap& b,
                         std::size_t max_arity = kDefaultMaxExprArity);

// Canonical text, e.g. "mu x1. f1(x1, mu x2. f2(x1, x2))". Holes print as
// "<elem>".
std::string print_expr(const MuExpr& e);

std::size_t count_mu(const MuExpr& e);

using Env = std::map<std::size_t, Elem>;

// Environment semantics with every mu computed by Kleene iteration. Throws
// EvaluationError for a free variable missing from `env`.
Elem eval_expr(const MuExpr& e, const VectorFn& f, const Env& env = {},
               std::optional<std::size_t> fuel = std::nullopt);

}  // namespace mufix

#endif  // MUFIX_MUEXPR_HPP_
