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

#ifndef MUFIX_BEKIC_HPP_
#define MUFIX_BEKIC_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mufix/lattice.hpp"
#include "mufix/monofn.hpp"

namespace mufix {

// Partial assignment of elements to the coordinates 0..n-1. Unbound entries
// are still quantified by a mu binder. Values are immutable; set() and
// shift() return new maps.
//
// A map built from a domain is typed: set() then rejects an element outside
// that coordinate's lattice. A map built from an arity alone is checked
// against the function's domain when it is evaluated.
class BindingMap {
 public:
  // All entries unbound. Throws PreconditionError for n == 0.
  explicit BindingMap(std::size_t n);
  explicit BindingMap(std::vector<Lattice> domain);

  std::size_t size() const { return entries_.size(); }
  bool typed() const { return !domain_.empty(); }
  bool bound(std::size_t j) const { return at(j).has_value(); }
  const std::optional<Elem>& at(std::size_t j) const;
  std::size_t unbound_count() const;

  // B(j := v).
  BindingMap set(std::size_t j, const Elem& v) const;
  // Deletes entry i and moves the tail down: result(j) = B(j) for j < i,
  // B(j + 1) for j >= i. Throws PreconditionError when size() < 2.
  BindingMap shift(std::size_t i) const;

  // "[0,_,{1}]"
  std::string to_string() const;

  friend bool operator==(const BindingMap&, const BindingMap&) = default;

 private:
  std::vector<std::optional<Elem>> entries_;
  std::vector<Lattice> domain_;
};

BindingMap binding_empty(std::size_t n);
BindingMap binding_set(const BindingMap& b, std::size_t j, const Elem& v);
BindingMap binding_shift(const BindingMap& b, std::size_t i);

// (y_0, ..., y_{i-1}, a, y_i, ..., y_{n-2}). The typed overload also checks
// each component against the n-coordinate `domain`.
Point shift_insert(std::span<const Elem> y, std::size_t i, const Elem& a);
Point shift_insert(std::span<const Lattice> domain, std::span<const Elem> y,
                   std::size_t i, const Elem& a);

// The arity n-1 function obtained by freezing input i at `a` and deleting
// output i:  g_j(y) = f_j(E y) for j < i,  g_j(y) = f_{j+1}(E y) for j >= i,
// where E y = shift_insert(y, i, a). Table functions stay tables and term
// functions stay terms.
VectorFn specialize(const VectorFn& f, std::size_t i, const Elem& a);

struct NestedOptions {
  // Memoize nested values by (coordinate, binding).
  bool memoize = true;
  // Kleene fuel for each inner mu; defaults to that coordinate's carrier size.
  std::optional<std::size_t> fuel;
};

struct NestedStats {
  std::size_t calls = 0;
  std::size_t cache_hits = 0;
  // Deepest chain of nested mu binders entered, counting the outermost.
  std::size_t max_levels = 0;
};

// Evaluates the nested fixpoint
//
//   nested(i, B) = mu x. f_i(v),  v_j = x                       if j = i
//                                     = B(j)                    if B(j) bound
//                                     = nested(j, B(i := x))    otherwise
//
// with each mu computed by Kleene iteration over L_i. B's own entry at i is
// shadowed and never read. Every recursive call receives a binding with one
// more coordinate bound than its caller's inner binding, so the recursion
// depth is at most the number of coordinates unbound in B(i := x).
//
// One evaluator owns one cache and is not safe for concurrent use; create
// one per thread.
class NestedEvaluator {
 public:
  static constexpr Index kUnbound = std::numeric_limits<Index>::max();

  explicit NestedEvaluator(VectorFn f, NestedOptions options = {});

  const VectorFn& function() const { return f_; }

  // Throws TypingError when `b` does not fit the function's domain.
  Elem eval(std::size_t i, const BindingMap& b);
  // `binding` holds one index per coordinate, kUnbound for undef.
  Index eval_raw(std::size_t i, std::span<const Index> binding);

  const NestedStats& stats() const { return stats_; }
  std::size_t cache_size() const { return cache_.size(); }

 private:
  Index nested(std::size_t i, std::span<const Index> binding, std::size_t level);
  std::uint64_t key(std::size_t i, std::span<const Index> binding) const;

  VectorFn f_;
  NestedOptions options_;
  std::vector<std::uint64_t> radix_;
  std::unordered_map<std::uint64_t, Index> cache_;
  NestedStats stats_;
};

Elem nested_eval(std::size_t i, const BindingMap& b, const VectorFn& f,
                 NestedOptions options = {});

struct ShiftLemmaReport {
  bool holds = false;
  Elem lhs;  // nested(i, B(j := a)) for f
  Elem rhs;  // nested(i or i-1, shift(B, j)) for specialize(f, j, a)

  explicit operator bool() const { return holds; }
};

// Compares both sides of the shift identity
//   i < j:  nested_n(i, B(j := a), f) = nested_{n-1}(i,     shift_j B, Sp_{j,a} f)
//   i > j:  nested_n(i, B(j := a), f) = nested_{n-1}(i - 1, shift_j B, Sp_{j,a} f)
// Requires i != j, n >= 2 and B(j) unbound.
ShiftLemmaReport check_shift_lemma(std::size_t i, std::size_t j, const BindingMap& b,
                                   const Elem& a, const VectorFn& f,
                                   NestedOptions options = {});

struct ClaimReport {
  bool holds = false;
  Elem component;  // a_i of the vectorial least fixpoint
  Elem bound;      // f_i(v) with v_i = a_i, v_j = nested(j, [i := a_i])

  explicit operator bool() const { return holds; }
};

// Checks a_i >= f_i(v) for the vectorial least fixpoint a.
ClaimReport check_claim(const VectorFn& f, std::size_t i, NestedOptions options = {});

struct BekicReport {
  Point lfp;
  Point nested;
  std::vector<bool> equal;
  std::optional<std::size_t> first_mismatch;
  std::size_t lfp_iterations = 0;

  bool holds() const { return !first_mismatch.has_value(); }
  explicit operator bool() const { return holds(); }
};

// Compares every coordinate of lfp_vector(f) with nested(i, B_0).
BekicReport check_bekic(const VectorFn& f, NestedOptions options = {});

// (a_1', a_2'', ..., a_n'') with a_1' = nested(0, B_0) and
// a_i'' = nested(i, [0 := a_1']) for i >= 1. For monotone f this point is a
// fixpoint of f.
Point proof_path_point(const VectorFn& f, NestedOptions options = {});

}  // namespace mufix

#endif  // MUFIX_BEKIC_HPP_
