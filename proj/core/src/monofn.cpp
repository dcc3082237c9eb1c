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

#include "mufix/monofn.hpp"

#include <random>

namespace mufix {

std::string format_point(std::span<const Elem> point) {
  std::string out = "(";
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (j > 0) out += ",";
    out += point[j].to_string();
  }
  return out + ")";
}

UnaryMap::UnaryMap(Lattice lattice, std::vector<Index> table)
    : lattice_(lattice), table_(std::move(table)) {
  if (table_.size() != lattice_.carrier_size()) {
    throw ConstructionError("unary map on " + lattice_.name() + " needs " +
                            std::to_string(lattice_.carrier_size()) + " entries, got " +
                            std::to_string(table_.size()));
  }
  for (Index v : table_) {
    if (!lattice_.contains(v)) {
      throw RangeError("unary map value " + std::to_string(v) + " outside " +
                       lattice_.name());
    }
  }
  for (std::size_t x = 0; x < table_.size(); ++x) {
    for (Index y : lattice_.upper_covers(static_cast<Index>(x))) {
      if (!lattice_.leq(table_[x], table_[y])) {
        throw NotMonotone("unary map on " + lattice_.name() + " is not monotone: " +
                          lattice_.format(static_cast<Index>(x)) + " <= " +
                          lattice_.format(y) + " but " + lattice_.format(table_[x]) +
                          " is not <= " + lattice_.format(table_[y]));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  Op op;
  std::size_t coordinate = 0;
  std::optional<Elem> value;
  std::vector<Term> args;
  std::optional<UnaryMap> map;
};

Term Term::var(std::size_t coordinate) {
  return Term(std::make_shared<const Node>(Node{Op::kVar, coordinate, {}, {}, {}}));
}

Term Term::constant(Elem value) {
  return Term(std::make_shared<const Node>(Node{Op::kConst, 0, value, {}, {}}));
}

Term Term::join(Term lhs, Term rhs) {
  return Term(std::make_shared<const Node>(
      Node{Op::kJoin, 0, {}, {std::move(lhs), std::move(rhs)}, {}}));
}

Term Term::meet(Term lhs, Term rhs) {
  return Term(std::make_shared<const Node>(
      Node{Op::kMeet, 0, {}, {std::move(lhs), std::move(rhs)}, {}}));
}

Term Term::mono(UnaryMap map, Term arg) {
  return Term(std::make_shared<const Node>(
      Node{Op::kMono, 0, {}, {std::move(arg)}, std::move(map)}));
}

Term::Op Term::op() const { return node_->op; }
std::size_t Term::coordinate() const { return node_->coordinate; }
const Elem& Term::value() const { return *node_->value; }
const Term& Term::lhs() const { return node_->args.at(0); }
const Term& Term::rhs() const { return node_->args.at(1); }
const UnaryMap& Term::map() const { return *node_->map; }

Lattice Term::type_in(std::span<const Lattice> domain) const {
  switch (op()) {
    case Op::kVar:
      if (coordinate() >= domain.size()) {
        throw TypingError("variable x" + std::to_string(coordinate() + 1) +
                          " out of range for arity " + std::to_string(domain.size()));
      }
      return domain[coordinate()];
    case Op::kConst:
      return value().lattice;
    case Op::kJoin:
    case Op::kMeet: {
      Lattice l = lhs().type_in(domain);
      Lattice r = rhs().type_in(domain);
      if (l != r) {
        throw TypingError(to_string() + ": operands in " + l.name() + " and " + r.name());
      }
      return l;
    }
    case Op::kMono: {
      Lattice a = lhs().type_in(domain);
      if (a != map().lattice()) {
        throw TypingError(to_string() + ": map on " + map().lattice().name() +
                          " applied to " + a.name());
      }
      return a;
    }
  }
  throw TypingError("malformed term");
}

Term Term::freeze(std::size_t c, const Elem& v) const {
  switch (op()) {
    case Op::kVar:
      if (coordinate() == c) return constant(v);
      return coordinate() > c ? var(coordinate() - 1) : *this;
    case Op::kConst:
      return *this;
    case Op::kJoin:
      return join(lhs().freeze(c, v), rhs().freeze(c, v));
    case Op::kMeet:
      return meet(lhs().freeze(c, v), rhs().freeze(c, v));
    case Op::kMono:
      return mono(map(), lhs().freeze(c, v));
  }
  return *this;
}

std::string Term::to_string() const {
  switch (op()) {
    case Op::kVar:
      return "x" + std::to_string(coordinate() + 1);
    case Op::kConst:
      return "const(" + value().to_string() + ")";
    case Op::kJoin:
      return "join(" + lhs().to_string() + ", " + rhs().to_string() + ")";
    case Op::kMeet:
      return "meet(" + lhs().to_string() + ", " + rhs().to_string() + ")";
    case Op::kMono: {
      std::string table = "[";
      for (std::size_t k = 0; k < map().table().size(); ++k) {
        if (k > 0) table += ",";
        table += map().lattice().format(map().table()[k]);
      }
      return "mono(" + table + "], " + lhs().to_string() + ")";
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// VectorFn

namespace {

struct CompiledNode {
  Term::Op op;
  Lattice lattice;
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  Index value = 0;  // coordinate for kVar, element for kConst
  const UnaryMap* map = nullptr;
};

struct CompiledTerm {
  std::vector<CompiledNode> nodes;
  std::size_t root = 0;
};

std::size_t compile(const Term& t, std::span<const Lattice> domain, CompiledTerm& out) {
  const Lattice type = t.type_in(domain);
  CompiledNode node{t.op(), type};
  switch (t.op()) {
    case Term::Op::kVar:
      node.value = static_cast<Index>(t.coordinate());
      break;
    case Term::Op::kConst:
      node.value = t.value().index;
      break;
    case Term::Op::kJoin:
    case Term::Op::kMeet:
      node.lhs = compile(t.lhs(), domain, out);
      node.rhs = compile(t.rhs(), domain, out);
      break;
    case Term::Op::kMono:
      node.lhs = compile(t.lhs(), domain, out);
      node.map = &t.map();
      break;
  }
  out.nodes.push_back(node);
  return out.nodes.size() - 1;
}

Index eval(const CompiledTerm& t, std::size_t k, std::span<const Index> x) {
  const CompiledNode& n = t.nodes[k];
  switch (n.op) {
    case Term::Op::kVar:
      return x[n.value];
    case Term::Op::kConst:
      return n.value;
    case Term::Op::kJoin:
      return n.lattice.join(eval(t, n.lhs, x), eval(t, n.rhs, x));
    case Term::Op::kMeet:
      return n.lattice.meet(eval(t, n.lhs, x), eval(t, n.rhs, x));
    case Term::Op::kMono:
      return (*n.map)(eval(t, n.lhs, x));
  }
  return 0;
}

Lattice checked_product(const std::vector<Lattice>& domain) {
  if (domain.empty()) throw ConstructionError("vector function of arity 0");
  return Lattice::product(domain);
}

}  // namespace

struct VectorFn::Impl {
  Impl(std::vector<Lattice> d, Lattice p) : domain(std::move(d)), product(p) {}

  std::vector<Lattice> domain;
  Lattice product;
  bool table = true;
  std::vector<Index> rows;
  std::vector<Term> terms;
  std::vector<CompiledTerm> compiled;
};

VectorFn VectorFn::table_unchecked(std::vector<Lattice> domain, std::vector<Index> rows) {
  Lattice product = checked_product(domain);
  const std::size_t n = domain.size();
  if (rows.size() != product.carrier_size() * n) {
    throw ConstructionError("table on " + product.name() + " needs " +
                            std::to_string(product.carrier_size() * n) +
                            " entries, got " + std::to_string(rows.size()));
  }
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (!domain[k % n].contains(rows[k])) {
      throw RangeError("table output " + std::to_string(rows[k]) + " at coordinate " +
                       std::to_string(k % n + 1) + " outside " + domain[k % n].name());
    }
  }
  auto impl = std::make_shared<Impl>(std::move(domain), product);
  impl->rows = std::move(rows);
  return VectorFn(std::move(impl));
}

VectorFn VectorFn::table(std::vector<Lattice> domain, std::vector<Index> rows,
                         std::size_t cap) {
  VectorFn f = table_unchecked(std::move(domain), std::move(rows));
  MonotoneReport report = check_monotone(f, cap);
  if (!report) {
    const auto& [x, y] = *report.witness;
    throw NotMonotone("table is not monotone: " + format_point(x) + " <= " +
                      format_point(y) + " but f" + format_point(x) + " = " +
                      format_point(f.apply(x)) + " is not <= f" + format_point(y) +
                      " = " + format_point(f.apply(y)));
  }
  return f;
}

VectorFn VectorFn::terms(std::vector<Lattice> domain, std::vector<Term> terms) {
  Lattice product = checked_product(domain);
  if (terms.size() != domain.size()) {
    throw TypingError("arity " + std::to_string(domain.size()) + " needs " +
                      std::to_string(domain.size()) + " terms, got " +
                      std::to_string(terms.size()));
  }
  auto impl = std::make_shared<Impl>(std::move(domain), product);
  impl->table = false;
  impl->terms = std::move(terms);
  for (std::size_t j = 0; j < impl->terms.size(); ++j) {
    CompiledTerm c;
    c.root = compile(impl->terms[j], impl->domain, c);
    const Lattice type = c.nodes[c.root].lattice;
    if (type != impl->domain[j]) {
      throw TypingError("f" + std::to_string(j + 1) + " = " + impl->terms[j].to_string() +
                        " denotes into " + type.name() + ", expected " +
                        impl->domain[j].name());
    }
    impl->compiled.push_back(std::move(c));
  }
  return VectorFn(std::move(impl));
}

VectorFn VectorFn::tabulate() const {
  if (is_table()) return *this;
  const std::size_t n = arity();
  const Lattice& p = product();
  std::vector<Index> rows(p.carrier_size() * n);
  std::vector<Index> x(n);
  for (std::size_t k = 0; k < p.carrier_size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) x[j] = p.component(static_cast<Index>(k), j);
    apply_raw(x, std::span<Index>(rows).subspan(k * n, n));
  }
  return table_unchecked(impl_->domain, std::move(rows));
}

std::size_t VectorFn::arity() const { return impl_->domain.size(); }
std::span<const Lattice> VectorFn::domain() const { return impl_->domain; }
const Lattice& VectorFn::product() const { return impl_->product; }
bool VectorFn::is_table() const { return impl_->table; }
std::span<const Index> VectorFn::rows() const { return impl_->rows; }
std::span<const Term> VectorFn::terms() const { return impl_->terms; }

Index VectorFn::coordinate_raw(std::size_t j, std::span<const Index> x) const {
  const Impl& f = *impl_;
  if (f.table) {
    std::size_t row = 0;
    for (std::size_t k = 0; k < x.size(); ++k) row += x[k] * f.product.stride(k);
    return f.rows[row * x.size() + j];
  }
  return eval(f.compiled[j], f.compiled[j].root, x);
}

void VectorFn::apply_raw(std::span<const Index> x, std::span<Index> out) const {
  const Impl& f = *impl_;
  if (f.table) {
    std::size_t row = 0;
    for (std::size_t k = 0; k < x.size(); ++k) row += x[k] * f.product.stride(k);
    const std::size_t n = x.size();
    for (std::size_t j = 0; j < n; ++j) out[j] = f.rows[row * n + j];
    return;
  }
  for (std::size_t j = 0; j < f.compiled.size(); ++j) {
    out[j] = eval(f.compiled[j], f.compiled[j].root, x);
  }
}

namespace {

std::vector<Index> checked_indices(const VectorFn& f, std::span<const Elem> x) {
  if (x.size() != f.arity()) {
    throw TypingError("expected a " + std::to_string(f.arity()) + "-tuple, got " +
                      std::to_string(x.size()) + " components");
  }
  std::vector<Index> raw(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j].lattice != f.domain()[j]) {
      throw TypingError("component " + std::to_string(j + 1) + " is in " +
                        x[j].lattice.name() + ", expected " + f.domain()[j].name());
    }
    raw[j] = x[j].index;
  }
  return raw;
}

Point to_point(std::span<const Lattice> domain, std::span<const Index> raw) {
  Point out;
  out.reserve(raw.size());
  for (std::size_t j = 0; j < raw.size(); ++j) out.push_back(Elem{domain[j], raw[j]});
  return out;
}

}  // namespace

Point VectorFn::apply(std::span<const Elem> x) const {
  std::vector<Index> raw = checked_indices(*this, x);
  std::vector<Index> out(arity());
  apply_raw(raw, out);
  return to_point(domain(), out);
}

ScalarFn VectorFn::project(std::size_t i) const { return ScalarFn(*this, i); }

ScalarFn::ScalarFn(VectorFn f, std::size_t coordinate)
    : f_(std::move(f)), coordinate_(coordinate) {
  if (coordinate_ >= f_.arity()) {
    throw RangeError("projection " + std::to_string(coordinate_ + 1) +
                     " out of range for arity " + std::to_string(f_.arity()));
  }
}

Elem ScalarFn::operator()(std::span<const Elem> x) const {
  std::vector<Index> raw = checked_indices(f_, x);
  return Elem{codomain(), f_.coordinate_raw(coordinate_, raw)};
}

// ---------------------------------------------------------------------------
// Validation and generation

namespace {

void require_within(const Lattice& product, std::size_t cap, const char* what) {
  if (product.carrier_size() > cap) {
    throw CapExceeded(std::string(what) + ": product carrier " + product.name() + " has " +
                      std::to_string(product.carrier_size()) + " elements, cap is " +
                      std::to_string(cap));
  }
}

// Draws, or enumerates, monotone maps product -> target over index order.
// `values[x]` is fixed once x has been visited; the admissible values at x
// are the up-set of the join of values over the lower covers of x.
Index lower_bound_at(const Lattice& target,
                     const std::vector<std::vector<Index>>& lower_covers,
                     std::span<const Index> values, std::size_t x) {
  Index lb = target.bottom();
  for (Index y : lower_covers[x]) lb = target.join(lb, values[y]);
  return lb;
}

std::vector<Index> up_set(const Lattice& l, Index lb) {
  std::vector<Index> out;
  for (std::size_t v = 0; v < l.carrier_size(); ++v) {
    if (l.leq(lb, static_cast<Index>(v))) out.push_back(static_cast<Index>(v));
  }
  return out;
}

std::vector<std::vector<Index>> all_lower_covers(const Lattice& product) {
  std::vector<std::vector<Index>> out(product.carrier_size());
  for (std::size_t x = 0; x < out.size(); ++x) {
    out[x] = product.lower_covers(static_cast<Index>(x));
  }
  return out;
}

}  // namespace

MonotoneReport check_monotone(const VectorFn& f, std::size_t cap) {
  const Lattice& p = f.product();
  require_within(p, cap, "check_monotone");
  const std::size_t n = f.arity();
  std::vector<Index> x(n), y(n), fx(n), fy(n);
  for (std::size_t k = 0; k < p.carrier_size(); ++k) {
    const auto xk = static_cast<Index>(k);
    for (std::size_t j = 0; j < n; ++j) x[j] = p.component(xk, j);
    f.apply_raw(x, fx);
    for (Index yk : p.upper_covers(xk)) {
      for (std::size_t j = 0; j < n; ++j) y[j] = p.component(yk, j);
      f.apply_raw(y, fy);
      for (std::size_t j = 0; j < n; ++j) {
        if (!f.domain()[j].leq(fx[j], fy[j])) {
          return MonotoneReport{false, std::make_pair(to_point(f.domain(), x),
                                                      to_point(f.domain(), y))};
        }
      }
    }
  }
  return MonotoneReport{};
}

VectorFn random_monotone(std::vector<Lattice> domain, std::uint64_t seed, std::size_t cap) {
  const Lattice product = checked_product(domain);
  require_within(product, cap, "random_monotone");
  const std::size_t n = domain.size();
  const std::size_t size = product.carrier_size();
  const auto lower = all_lower_covers(product);

  std::mt19937_64 rng(seed);
  std::vector<Index> rows(size * n);
  std::vector<Index> values(size);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t x = 0; x < size; ++x) {
      const Index lb = lower_bound_at(domain[j], lower, values, x);
      const std::vector<Index> choices = up_set(domain[j], lb);
      std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
      values[x] = choices[pick(rng)];
      rows[x * n + j] = values[x];
    }
  }
  return VectorFn::table_unchecked(std::move(domain), std::move(rows));
}

namespace {

class MonotoneMapEnumerator {
 public:
  MonotoneMapEnumerator(const Lattice& product, const Lattice& target, std::size_t cap)
      : target_(target),
        cap_(cap),
        lower_(all_lower_covers(product)),
        values_(product.carrier_size()) {}

  // False when more than cap maps exist; out then holds cap + 1 of them.
  bool run(std::vector<std::vector<Index>>& out) {
    out_ = &out;
    return visit(0);
  }

 private:
  bool visit(std::size_t x) {
    if (x == values_.size()) {
      out_->push_back(values_);
      return out_->size() <= cap_;
    }
    const Index lb = lower_bound_at(target_, lower_, values_, x);
    for (Index v : up_set(target_, lb)) {
      values_[x] = v;
      if (!visit(x + 1)) return false;
    }
    return true;
  }

  const Lattice& target_;
  std::size_t cap_;
  std::vector<std::vector<Index>> lower_;
  std::vector<Index> values_;
  std::vector<std::vector<Index>>* out_ = nullptr;
};

}  // namespace

MonotoneFamily enumerate_monotone(std::vector<Lattice> domain, std::size_t cap) {
  const Lattice product = checked_product(domain);
  MonotoneFamily family;
  family.domain_ = domain;
  family.per_coordinate_.resize(domain.size());
  std::size_t total = 1;
  for (std::size_t j = 0; j < domain.size(); ++j) {
    MonotoneMapEnumerator e(product, domain[j], cap);
    if (!e.run(family.per_coordinate_[j])) {
      throw CapExceeded("enumerate_monotone: more than " + std::to_string(cap) +
                        " monotone maps into coordinate " + std::to_string(j + 1) +
                        " alone; cap is " + std::to_string(cap));
    }
    const std::size_t count = family.per_coordinate_[j].size();
    if (total > cap / count) {
      // Finish the count so the error can name it.
      long double exact = static_cast<long double>(total) * count;
      bool abandoned = false;
      for (std::size_t k = j + 1; k < domain.size() && !abandoned; ++k) {
        std::vector<std::vector<Index>> maps;
        MonotoneMapEnumerator rest(product, domain[k], cap);
        abandoned = !rest.run(maps);
        exact *= static_cast<long double>(maps.size());
      }
      std::string count_text = abandoned ? "more than " + std::to_string(cap)
                                         : std::to_string(static_cast<unsigned long long>(exact));
      throw CapExceeded("enumerate_monotone: " + count_text + " monotone functions on " +
                        product.name() + " exceed cap " + std::to_string(cap));
    }
    total *= count;
  }
  family.size_ = total;
  return family;
}

VectorFn MonotoneFamily::at(std::size_t k) const {
  if (k >= size_) {
    throw RangeError("monotone family index " + std::to_string(k) + " out of range " +
                     std::to_string(size_));
  }
  const std::size_t n = domain_.size();
  std::vector<std::size_t> choice(n);
  for (std::size_t j = n; j-- > 0;) {
    const std::size_t count = per_coordinate_[j].size();
    choice[j] = k % count;
    k /= count;
  }
  const std::size_t size = per_coordinate_[0][0].size();
  std::vector<Index> rows(size * n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::vector<Index>& map = per_coordinate_[j][choice[j]];
    for (std::size_t x = 0; x < size; ++x) rows[x * n + j] = map[x];
  }
  return VectorFn::table_unchecked(domain_, std::move(rows));
}

}  // namespace mufix
