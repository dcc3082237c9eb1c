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

#include "mufix/bekic.hpp"

#include <algorithm>

#include "mufix/fixpoint.hpp"

namespace mufix {

namespace {

void require_coordinate(std::size_t i, std::size_t n, const char* what) {
  if (i >= n) {
    throw RangeError(std::string(what) + ": coordinate " + std::to_string(i + 1) +
                     " out of range for arity " + std::to_string(n));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// BindingMap

BindingMap::BindingMap(std::size_t n) : entries_(n) {
  if (n == 0) throw PreconditionError("binding map of arity 0");
}

BindingMap::BindingMap(std::vector<Lattice> domain)
    : entries_(domain.size()), domain_(std::move(domain)) {
  if (entries_.empty()) throw PreconditionError("binding map of arity 0");
}

const std::optional<Elem>& BindingMap::at(std::size_t j) const {
  require_coordinate(j, entries_.size(), "binding");
  return entries_[j];
}

std::size_t BindingMap::unbound_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const auto& e) { return !e; }));
}

BindingMap BindingMap::set(std::size_t j, const Elem& v) const {
  require_coordinate(j, entries_.size(), "binding_set");
  if (typed() && v.lattice != domain_[j]) {
    throw LatticeMismatch("binding_set: " + v.to_string() + " in " + v.lattice.name() +
                          " bound at coordinate " + std::to_string(j + 1) + " of " +
                          domain_[j].name());
  }
  BindingMap out = *this;
  out.entries_[j] = v;
  return out;
}

BindingMap BindingMap::shift(std::size_t i) const {
  if (entries_.size() < 2) throw PreconditionError("binding_shift needs arity >= 2");
  require_coordinate(i, entries_.size(), "binding_shift");
  BindingMap out = *this;
  out.entries_.erase(out.entries_.begin() + static_cast<std::ptrdiff_t>(i));
  if (typed()) out.domain_.erase(out.domain_.begin() + static_cast<std::ptrdiff_t>(i));
  return out;
}

std::string BindingMap::to_string() const {
  std::string out = "[";
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    if (j > 0) out += ",";
    out += entries_[j] ? entries_[j]->to_string() : "_";
  }
  return out + "]";
}

BindingMap binding_empty(std::size_t n) { return BindingMap(n); }

BindingMap binding_set(const BindingMap& b, std::size_t j, const Elem& v) {
  return b.set(j, v);
}

BindingMap binding_shift(const BindingMap& b, std::size_t i) { return b.shift(i); }

// ---------------------------------------------------------------------------
// Specialization

Point shift_insert(std::span<const Elem> y, std::size_t i, const Elem& a) {
  if (i > y.size()) {
    throw RangeError("shift_insert: position " + std::to_string(i + 1) +
                     " out of range for a " + std::to_string(y.size() + 1) + "-tuple");
  }
  Point out(y.begin(), y.end());
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(i), a);
  return out;
}

Point shift_insert(std::span<const Lattice> domain, std::span<const Elem> y, std::size_t i,
                   const Elem& a) {
  if (domain.size() != y.size() + 1) {
    throw TypingError("shift_insert: " + std::to_string(y.size()) +
                      " components do not fit arity " + std::to_string(domain.size()));
  }
  Point out = shift_insert(y, i, a);
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (out[j].lattice != domain[j]) {
      throw TypingError("shift_insert: component " + std::to_string(j + 1) + " is in " +
                        out[j].lattice.name() + ", expected " + domain[j].name());
    }
  }
  return out;
}

VectorFn specialize(const VectorFn& f, std::size_t i, const Elem& a) {
  const std::size_t n = f.arity();
  if (n < 2) throw PreconditionError("specialize: a unary function has nothing to freeze");
  require_coordinate(i, n, "specialize");
  if (a.lattice != f.domain()[i]) {
    throw LatticeMismatch("specialize: " + a.to_string() + " in " + a.lattice.name() +
                          " frozen at coordinate " + std::to_string(i + 1) + " of " +
                          f.domain()[i].name());
  }

  std::vector<Lattice> rest(f.domain().begin(), f.domain().end());
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));

  if (!f.is_table()) {
    std::vector<Term> terms;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) terms.push_back(f.terms()[j].freeze(i, a));
    }
    return VectorFn::terms(std::move(rest), std::move(terms));
  }

  const Lattice reduced = Lattice::product(rest);
  std::vector<Index> rows;
  rows.reserve(reduced.carrier_size() * (n - 1));
  std::vector<Index> x(n), fx(n);
  for (std::size_t k = 0; k < reduced.carrier_size(); ++k) {
    for (std::size_t j = 0, h = 0; j < n; ++j) {
      x[j] = j == i ? a.index : reduced.component(static_cast<Index>(k), h++);
    }
    f.apply_raw(x, fx);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) rows.push_back(fx[j]);
    }
  }
  return VectorFn::table_unchecked(std::move(rest), std::move(rows));
}

// ---------------------------------------------------------------------------
// Nested fixpoints

NestedEvaluator::NestedEvaluator(VectorFn f, NestedOptions options)
    : f_(std::move(f)), options_(options) {
  const std::size_t n = f_.arity();
  radix_.reserve(n);
  long double space = static_cast<long double>(n);
  for (const Lattice& l : f_.domain()) {
    radix_.push_back(l.carrier_size() + 1);
    space *= static_cast<long double>(l.carrier_size() + 1);
  }
  if (options_.memoize &&
      space > static_cast<long double>(std::numeric_limits<std::uint64_t>::max())) {
    throw CapExceeded("nested evaluation: binding space of " + f_.product().name() +
                      " is too large to memoize; disable the cache");
  }
}

std::uint64_t NestedEvaluator::key(std::size_t i, std::span<const Index> binding) const {
  std::uint64_t k = i;
  for (std::size_t j = 0; j < binding.size(); ++j) {
    k = k * radix_[j] + (binding[j] == kUnbound ? 0 : std::uint64_t{binding[j]} + 1);
  }
  return k;
}

Index NestedEvaluator::nested(std::size_t i, std::span<const Index> binding,
                              std::size_t level) {
  ++stats_.calls;
  stats_.max_levels = std::max(stats_.max_levels, level);

  std::uint64_t k = 0;
  if (options_.memoize) {
    k = key(i, binding);
    if (auto it = cache_.find(k); it != cache_.end()) {
      ++stats_.cache_hits;
      return it->second;
    }
  }

  const std::size_t n = binding.size();
  const Lattice& li = f_.domain()[i];
  std::vector<Index> inner(binding.begin(), binding.end());
  std::vector<Index> arg(n);
  auto step = [&](Index x) {
    inner[i] = x;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) {
        arg[j] = x;
      } else if (binding[j] != kUnbound) {
        arg[j] = binding[j];
      } else {
        arg[j] = nested(j, inner, level + 1);
      }
    }
    return f_.coordinate_raw(i, arg);
  };
  const Index value = kleene_lfp(li, step, options_.fuel.value_or(li.carrier_size())).value;

  if (options_.memoize) cache_.emplace(k, value);
  return value;
}

Index NestedEvaluator::eval_raw(std::size_t i, std::span<const Index> binding) {
  return nested(i, binding, 1);
}

Elem NestedEvaluator::eval(std::size_t i, const BindingMap& b) {
  const std::size_t n = f_.arity();
  if (b.size() != n) {
    throw TypingError("nested_eval: binding of arity " + std::to_string(b.size()) +
                      " for a function of arity " + std::to_string(n));
  }
  require_coordinate(i, n, "nested_eval");
  std::vector<Index> raw(n, kUnbound);
  for (std::size_t j = 0; j < n; ++j) {
    if (!b.bound(j)) continue;
    const Elem& v = *b.at(j);
    if (v.lattice != f_.domain()[j]) {
      throw TypingError("nested_eval: binding entry " + std::to_string(j + 1) + " is in " +
                        v.lattice.name() + ", expected " + f_.domain()[j].name());
    }
    raw[j] = v.index;
  }
  return Elem{f_.domain()[i], eval_raw(i, raw)};
}

Elem nested_eval(std::size_t i, const BindingMap& b, const VectorFn& f,
                 NestedOptions options) {
  NestedEvaluator evaluator(f, options);
  return evaluator.eval(i, b);
}

// ---------------------------------------------------------------------------
// Checkers

ShiftLemmaReport check_shift_lemma(std::size_t i, std::size_t j, const BindingMap& b,
                                   const Elem& a, const VectorFn& f,
                                   NestedOptions options) {
  const std::size_t n = f.arity();
  if (n < 2) throw PreconditionError("check_shift_lemma needs arity >= 2");
  require_coordinate(i, n, "check_shift_lemma");
  require_coordinate(j, n, "check_shift_lemma");
  if (i == j) throw PreconditionError("check_shift_lemma needs i != j");
  if (b.size() != n) {
    throw TypingError("check_shift_lemma: binding of arity " + std::to_string(b.size()) +
                      " for a function of arity " + std::to_string(n));
  }
  if (b.bound(j)) {
    throw PreconditionError("check_shift_lemma: B already binds coordinate " +
                            std::to_string(j + 1));
  }

  const Elem lhs = nested_eval(i, b.set(j, a), f, options);
  const VectorFn g = specialize(f, j, a);
  const Elem rhs = nested_eval(i < j ? i : i - 1, b.shift(j), g, options);
  return ShiftLemmaReport{lhs == rhs, lhs, rhs};
}

ClaimReport check_claim(const VectorFn& f, std::size_t i, NestedOptions options) {
  const std::size_t n = f.arity();
  require_coordinate(i, n, "check_claim");
  const Point a = lfp_vector(f).value;

  NestedEvaluator evaluator(f, options);
  std::vector<Index> binding(n, NestedEvaluator::kUnbound);
  binding[i] = a[i].index;
  std::vector<Index> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    v[j] = j == i ? a[i].index : evaluator.eval_raw(j, binding);
  }
  const Elem bound{f.domain()[i], f.coordinate_raw(i, v)};
  return ClaimReport{leq(bound, a[i]), a[i], bound};
}

BekicReport check_bekic(const VectorFn& f, NestedOptions options) {
  const std::size_t n = f.arity();
  auto lfp = lfp_vector(f);
  BekicReport report;
  report.lfp = std::move(lfp.value);
  report.lfp_iterations = lfp.iterations;

  NestedEvaluator evaluator(f, options);
  const std::vector<Index> empty(n, NestedEvaluator::kUnbound);
  for (std::size_t i = 0; i < n; ++i) {
    report.nested.push_back(Elem{f.domain()[i], evaluator.eval_raw(i, empty)});
    const bool same = report.nested[i] == report.lfp[i];
    report.equal.push_back(same);
    if (!same && !report.first_mismatch) report.first_mismatch = i;
  }
  return report;
}

Point proof_path_point(const VectorFn& f, NestedOptions options) {
  const std::size_t n = f.arity();
  NestedEvaluator evaluator(f, options);
  std::vector<Index> binding(n, NestedEvaluator::kUnbound);
  const Index first = evaluator.eval_raw(0, binding);
  binding[0] = first;

  Point out{Elem{f.domain()[0], first}};
  for (std::size_t i = 1; i < n; ++i) {
    out.push_back(Elem{f.domain()[i], evaluator.eval_raw(i, binding)});
  }
  return out;
}

}  // namespace mufix
