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

#ifndef MUFIX_FIXPOINT_HPP_
#define MUFIX_FIXPOINT_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mufix/lattice.hpp"
#include "mufix/monofn.hpp"

namespace mufix {

template <typename Value>
struct FixResult {
  Value value;
  // Number of strict steps bottom < g(bottom) < ... taken before the
  // sequence stabilized.
  std::size_t iterations = 0;
};

// Kleene iteration x0 = bottom, x_{k+1} = step(x_k) on raw indices, until
// x_{k+1} == x_k. Throws NonConvergence after `fuel` strict steps.
template <typename Step>
FixResult<Index> kleene_lfp(const Lattice& l, Step&& step, std::size_t fuel) {
  Index x = l.bottom();
  for (std::size_t it = 0;; ++it) {
    const Index next = step(x);
    if (next == x) return {x, it};
    if (it + 1 > fuel) {
      throw NonConvergence("no fixpoint on " + l.name() + " within " +
                           std::to_string(fuel) +
                           " iterations; the function is not monotone");
    }
    x = next;
  }
}

// Least fixpoint of a monotone g : L -> L. Fuel defaults to the carrier
// size, which bounds the length of every strictly ascending chain.
FixResult<Elem> lfp_scalar(const Lattice& l,
                           const std::function<Elem(const Elem&)>& g,
                           std::optional<std::size_t> fuel = std::nullopt);

// Least fixpoint of f on the product lattice L1 x ... x Ln, by Kleene
// iteration from the bottom tuple. Fuel defaults to the product carrier size.
FixResult<Point> lfp_vector(const VectorFn& f,
                            std::optional<std::size_t> fuel = std::nullopt);

// Every x with f(x) = x, in product index order.
std::vector<Point> enumerate_fixpoints(const VectorFn& f,
                                       std::size_t cap = kDefaultMonotoneCheckCap);

}  // namespace mufix

#endif  // MUFIX_FIXPOINT_HPP_
