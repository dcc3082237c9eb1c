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

#ifndef MUFIX_MONOFN_HPP_
#define MUFIX_MONOFN_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mufix/lattice.hpp"

namespace mufix {

// A point of L1 x ... x Ln, one element per coordinate. Coordinates are
// 0-based throughout the library; text output numbers them from 1.
using Point = std::vector<Elem>;

std::string format_point(std::span<const Elem> point);

inline constexpr std::size_t kDefaultMonotoneCheckCap = 4096;
inline constexpr std::size_t kDefaultEnumerationCap = 100000;

// A monotone map L -> L given by its value on every carrier index.
class UnaryMap {
 public:
  // Throws RangeError for out-of-carrier values, NotMonotone otherwise.
  UnaryMap(Lattice lattice, std::vector<Index> table);

  const Lattice& lattice() const { return lattice_; }
  std::span<const Index> table() const { return table_; }
  Index operator()(Index a) const { return table_[a]; }

 private:
  Lattice lattice_;
  std::vector<Index> table_;
};

// Syntax for monotone functions of the input tuple: variables, constants,
// binary join/meet and application of a monotone unary table. Every term
// denotes a monotone function.
class Term {
 public:
  enum class Op { kVar, kConst, kJoin, kMeet, kMono };

  static Term var(std::size_t coordinate);
  static Term constant(Elem value);
  static Term join(Term lhs, Term rhs);
  static Term meet(Term lhs, Term rhs);
  static Term mono(UnaryMap map, Term arg);

  Op op() const;
  std::size_t coordinate() const;       // kVar
  const Elem& value() const;            // kConst
  const Term& lhs() const;              // kJoin, kMeet, kMono (argument)
  const Term& rhs() const;              // kJoin, kMeet
  const UnaryMap& map() const;          // kMono

  // Lattice the term denotes into, given the input coordinate lattices.
  // Throws TypingError when ill-typed.
  Lattice type_in(std::span<const Lattice> domain) const;

  // Replaces x_coordinate by `value` and renumbers x_j for j > coordinate
  // to x_{j-1}.
  Term freeze(std::size_t coordinate, const Elem& value) const;

  // "join(x1, const(2))", "mono([0,2,2], x3)".
  std::string to_string() const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class ScalarFn;

// Monotone f : L1 x ... x Ln -> L1 x ... x Ln, either tabulated over the
// whole product carrier or given by one Term per output coordinate.
// Immutable; copies share their body.
class VectorFn {
 public:
  // `rows` holds n output indices per input point, rows laid out in product
  // index order. Validates shape, ranges and monotonicity (the latter only
  // up to `cap` product elements; CapExceeded beyond).
  static VectorFn table(std::vector<Lattice> domain, std::vector<Index> rows,
                        std::size_t cap = kDefaultMonotoneCheckCap);
  // Same as table() but skips the monotonicity check.
  static VectorFn table_unchecked(std::vector<Lattice> domain,
                                  std::vector<Index> rows);
  static VectorFn terms(std::vector<Lattice> domain, std::vector<Term> terms);

  // Table-mode copy of any function.
  VectorFn tabulate() const;

  std::size_t arity() const;
  std::span<const Lattice> domain() const;
  // L1 x ... x Ln as a single lattice.
  const Lattice& product() const;

  bool is_table() const;
  std::span<const Index> rows() const;
  std::span<const Term> terms() const;

  // Throws TypingError on an arity or lattice mismatch.
  Point apply(std::span<const Elem> x) const;

  // Unchecked fast paths over raw carrier indices.
  void apply_raw(std::span<const Index> x, std::span<Index> out) const;
  Index coordinate_raw(std::size_t j, std::span<const Index> x) const;

  // Coordinate projection f_i. Throws RangeError when i >= arity().
  ScalarFn project(std::size_t i) const;

 private:
  struct Impl;
  explicit VectorFn(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// f_i : L1 x ... x Ln -> L_i.
class ScalarFn {
 public:
  ScalarFn(VectorFn f, std::size_t coordinate);

  std::size_t coordinate() const { return coordinate_; }
  const Lattice& codomain() const { return f_.domain()[coordinate_]; }
  Elem operator()(std::span<const Elem> x) const;

 private:
  VectorFn f_;
  std::size_t coordinate_;
};

struct MonotoneReport {
  bool monotone = true;
  // x <= y with f(x) not <= f(y); x is covered by y.
  std::optional<std::pair<Point, Point>> witness;

  explicit operator bool() const { return monotone; }
};

// Checks x <= y => f(x) <= f(y) over covering pairs x < y of the product
// lattice, which implies the full condition by transitivity. Refuses with
// CapExceeded when the product carrier is larger than `cap`.
MonotoneReport check_monotone(const VectorFn& f,
                              std::size_t cap = kDefaultMonotoneCheckCap);

// Seeded random monotone table. Points are visited in index order (a linear
// extension of the product order) and each f_j(x) is drawn uniformly from
// the up-set of the join of f_j over the lower covers of x. The draw is not
// uniform over all monotone functions.
VectorFn random_monotone(std::vector<Lattice> domain, std::uint64_t seed,
                         std::size_t cap = kDefaultMonotoneCheckCap);

// Every monotone table on a domain, addressable by position. Coordinate
// functions vary independently; the first coordinate is most significant.
class MonotoneFamily {
 public:
  std::size_t size() const { return size_; }
  std::span<const Lattice> domain() const { return domain_; }
  // Number of monotone maps L1 x ... x Ln -> L_j.
  std::size_t coordinate_count(std::size_t j) const { return per_coordinate_[j].size(); }
  VectorFn at(std::size_t k) const;

 private:
  friend MonotoneFamily enumerate_monotone(std::vector<Lattice>, std::size_t);

  std::vector<Lattice> domain_;
  // per_coordinate_[j][m] is the m-th monotone map product -> L_j.
  std::vector<std::vector<std::vector<Index>>> per_coordinate_;
  std::size_t size_ = 0;
};

// Throws CapExceeded, naming the count (or a lower bound when counting was
// abandoned), if there are more than `cap` monotone functions.
MonotoneFamily enumerate_monotone(std::vector<Lattice> domain,
                                  std::size_t cap = kDefaultEnumerationCap);

}  // namespace mufix

#endif  // MUFIX_MONOFN_HPP_
