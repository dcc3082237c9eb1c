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

#ifndef MUFIX_LATTICE_HPP_
#define MUFIX_LATTICE_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mufix/error.hpp"

namespace mufix {

// Position of an element in its lattice's carrier.
//   chain(k):     the value 0..k-1
//   powerset(m):  the member set as an m-bit mask
//   product(...): mixed-radix digits, first part most significant
// In every encoding index order is a linear extension of the lattice order.
using Index = std::uint32_t;

inline constexpr std::size_t kMaxCarrierSize = std::size_t{1} << 30;

enum class LatticeKind { kChain, kPowerset, kProduct };

class LatticeNode;

// Handle to an immutable finite lattice. Lattices are interned, so two
// handles compare equal exactly when they were built from the same
// structure, and copying a handle is a pointer copy.
class Lattice {
 public:
  static Lattice chain(std::uint32_t k);
  static Lattice powerset(std::uint32_t m);
  // Throws ConstructionError on an empty part list or an oversized carrier.
  static Lattice product(std::vector<Lattice> parts);

  LatticeKind kind() const;
  // k for chain(k), m for powerset(m), the part count for products.
  std::uint32_t parameter() const;
  std::size_t carrier_size() const;
  // Number of strict steps in a longest chain bottom < ... < top.
  std::size_t height() const;
  std::span<const Lattice> parts() const;

  Index bottom() const { return 0; }
  Index top() const;
  bool contains(Index a) const { return a < carrier_size(); }

  bool leq(Index a, Index b) const;
  Index join(Index a, Index b) const;
  Index meet(Index a, Index b) const;

  // Product only: digit access and mixed-radix tupling.
  Index component(Index a, std::size_t part) const;
  Index compose(std::span<const Index> components) const;
  std::vector<Index> decompose(Index a) const;
  std::size_t stride(std::size_t part) const;

  // Elements y with a < y (resp. y < a) and nothing strictly between.
  std::vector<Index> upper_covers(Index a) const;
  std::vector<Index> lower_covers(Index a) const;

  // "chain(3)", "powerset(2)", "product(chain(2), chain(3))".
  std::string name() const;

  // Element literals: chain "2", powerset "{0,1}", product "(1,{0})".
  std::string format(Index a) const;
  std::optional<Index> parse(std::string_view text) const;
  // Parses a literal at the start of `text`, skipping leading blanks, and
  // stores the number of consumed characters. On failure `consumed` holds
  // the offset where parsing stopped.
  std::optional<Index> parse_prefix(std::string_view text,
                                    std::size_t& consumed) const;

  std::size_t hash_value() const noexcept;

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  explicit Lattice(const LatticeNode* node) : node_(node) {}
  friend class LatticeNode;

  const LatticeNode* node_;
};

std::ostream& operator<<(std::ostream& os, const Lattice& l);

// An element bound to its lattice.
struct Elem {
  Lattice lattice;
  Index index;

  std::string to_string() const { return lattice.format(index); }

  friend bool operator==(const Elem&, const Elem&) = default;
};

std::ostream& operator<<(std::ostream& os, const Elem& e);

// Range-checked element construction.
Elem make_elem(const Lattice& l, Index index);
// Element from its literal; throws RangeError when the text does not parse.
Elem parse_elem(const Lattice& l, std::string_view text);

// Order and lattice operations. All throw LatticeMismatch when the operands
// come from different lattices.
bool leq(const Elem& a, const Elem& b);
Elem join(const Elem& a, const Elem& b);
Elem meet(const Elem& a, const Elem& b);

// (bottom, top)
std::pair<Elem, Elem> bounds(const Lattice& l);

// Every carrier element once, in index order.
std::vector<Elem> enumerate(const Lattice& l);

Lattice product_of(std::vector<Lattice> parts);
// Packs one element per part into an element of `product`.
Elem tuple(const Lattice& product, std::span<const Elem> components);
// Inverse of tuple().
std::vector<Elem> split(const Elem& e);

}  // namespace mufix

template <>
struct std::hash<mufix::Elem> {
  std::size_t operator()(const mufix::Elem& e) const noexcept;
};

#endif  // MUFIX_LATTICE_HPP_
