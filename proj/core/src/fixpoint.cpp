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

#include "mufix/fixpoint.hpp"

namespace mufix {

FixResult<Elem> lfp_scalar(const Lattice& l, const std::function<Elem(const Elem&)>& g,
                           std::optional<std::size_t> fuel) {
  auto step = [&](Index x) {
    const Elem y = g(Elem{l, x});
    if (y.lattice != l) {
      throw TypingError("lfp_scalar: step maps into " + y.lattice.name() + ", expected " +
                        l.name());
    }
    return y.index;
  };
  const auto r = kleene_lfp(l, step, fuel.value_or(l.carrier_size()));
  return {Elem{l, r.value}, r.iterations};
}

FixResult<Point> lfp_vector(const VectorFn& f, std::optional<std::size_t> fuel) {
  const std::size_t n = f.arity();
  const std::size_t limit = fuel.value_or(f.product().carrier_size());
  std::vector<Index> x(n), next(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = f.domain()[j].bottom();

  std::size_t it = 0;
  for (;; ++it) {
    f.apply_raw(x, next);
    if (next == x) break;
    if (it + 1 > limit) {
      throw NonConvergence("no vectorial fixpoint on " + f.product().name() + " within " +
                           std::to_string(limit) +
                           " iterations; the function is not monotone");
    }
    std::swap(x, next);
  }
  Point value;
  value.reserve(n);
  for (std::size_t j = 0; j < n; ++j) value.push_back(Elem{f.domain()[j], x[j]});
  return {std::move(value), it};
}

std::vector<Point> enumerate_fixpoints(const VectorFn& f, std::size_t cap) {
  const Lattice& p = f.product();
  if (p.carrier_size() > cap) {
    throw CapExceeded("enumerate_fixpoints: product carrier " + p.name() + " has " +
                      std::to_string(p.carrier_size()) + " elements, cap is " +
                      std::to_string(cap));
  }
  const std::size_t n = f.arity();
  std::vector<Point> out;
  std::vector<Index> x(n), fx(n);
  for (std::size_t k = 0; k < p.carrier_size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) x[j] = p.component(static_cast<Index>(k), j);
    f.apply_raw(x, fx);
    if (fx != x) continue;
    Point point;
    for (std::size_t j = 0; j < n; ++j) point.push_back(Elem{f.domain()[j], x[j]});
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace mufix
