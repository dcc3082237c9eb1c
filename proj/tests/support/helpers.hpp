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

#ifndef MUFIX_TESTS_SUPPORT_HELPERS_HPP_
#define MUFIX_TESTS_SUPPORT_HELPERS_HPP_

#include <cstddef>
#include <functional>
#include <vector>

#include "mufix/lattice.hpp"
#include "mufix/monofn.hpp"

namespace mufix::testing {

inline std::vector<Lattice> power(const Lattice& l, std::size_t n) {
  return std::vector<Lattice>(n, l);
}

// Table function from a rule on raw index tuples.
inline VectorFn table_from(std::vector<Lattice> domain,
                           const std::function<std::vector<Index>(const std::vector<Index>&)>& rule,
                           bool check = true) {
  const Lattice p = Lattice::product(domain);
  const std::size_t n = domain.size();
  std::vector<Index> rows;
  std::vector<Index> x(n);
  for (std::size_t k = 0; k < p.carrier_size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) x[j] = p.component(static_cast<Index>(k), j);
    for (Index v : rule(x)) rows.push_back(v);
  }
  return check ? VectorFn::table(std::move(domain), std::move(rows))
               : VectorFn::table_unchecked(std::move(domain), std::move(rows));
}

inline Point point(const std::vector<Lattice>& domain, const std::vector<Index>& raw) {
  Point out;
  for (std::size_t j = 0; j < raw.size(); ++j) out.push_back(make_elem(domain[j], raw[j]));
  return out;
}

inline std::vector<Index> raw(const Point& p) {
  std::vector<Index> out;
  for (const Elem& e : p) out.push_back(e.index);
  return out;
}

}  // namespace mufix::testing

#endif  // MUFIX_TESTS_SUPPORT_HELPERS_HPP_
