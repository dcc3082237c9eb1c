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

#include "mufix/lattice.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <tuple>

namespace mufix {

class LatticeNode {
 public:
  LatticeKind kind = LatticeKind::kChain;
  std::uint32_t param = 0;
  std::vector<Lattice> parts;
  std::vector<std::size_t> strides;
  std::size_t carrier = 1;
  std::size_t height = 0;

  static Lattice intern(LatticeKind kind, std::uint32_t param,
                        std::vector<Lattice> parts);
};

namespace {

using InternKey =
    std::tuple<LatticeKind, std::uint32_t, std::vector<std::size_t>>;

struct Registry {
  std::mutex mu;
  std::map<InternKey, std::unique_ptr<LatticeNode>> nodes;
};

Registry& registry() {
  static Registry* r = new Registry;
  return *r;
}

}  // namespace

Lattice LatticeNode::intern(LatticeKind kind, std::uint32_t param,
                            std::vector<Lattice> parts) {
  std::vector<std::size_t> part_ids;
  part_ids.reserve(parts.size());
  for (const Lattice& p : parts) part_ids.push_back(p.hash_value());
  InternKey key{kind, param, std::move(part_ids)};

  Registry& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto it = reg.nodes.find(key);
  if (it != reg.nodes.end()) return Lattice(it->second.get());

  auto node = std::make_unique<LatticeNode>();
  node->kind = kind;
  node->param = param;
  switch (kind) {
    case LatticeKind::kChain:
      node->carrier = param;
      node->height = param - 1;
      break;
    case LatticeKind::kPowerset:
      node->carrier = std::size_t{1} << param;
      node->height = param;
      break;
    case LatticeKind::kProduct: {
      node->strides.assign(parts.size(), 1);
      std::size_t carrier = 1;
      std::size_t height = 0;
      for (std::size_t p = parts.size(); p-- > 0;) {
        node->strides[p] = carrier;
        carrier *= parts[p].carrier_size();
        height += parts[p].height();
      }
      node->carrier = carrier;
      node->height = height;
      node->parts = std::move(parts);
      break;
    }
  }
  const LatticeNode* raw = node.get();
  reg.nodes.emplace(std::move(key), std::move(node));
  return Lattice(raw);
}

Lattice Lattice::chain(std::uint32_t k) {
  if (k == 0) throw ConstructionError("chain(0): a chain needs at least one element");
  if (k > kMaxCarrierSize) {
    throw ConstructionError("chain(" + std::to_string(k) + "): carrier too large");
  }
  return LatticeNode::intern(LatticeKind::kChain, k, {});
}

Lattice Lattice::powerset(std::uint32_t m) {
  if (m >= 64 || (std::size_t{1} << m) > kMaxCarrierSize) {
    throw ConstructionError("powerset(" + std::to_string(m) + "): carrier too large");
  }
  return LatticeNode::intern(LatticeKind::kPowerset, m, {});
}

Lattice Lattice::product(std::vector<Lattice> parts) {
  if (parts.empty()) throw ConstructionError("product of zero lattices");
  std::size_t carrier = 1;
  for (const Lattice& p : parts) {
    if (p.carrier_size() > kMaxCarrierSize / carrier) {
      throw ConstructionError("product carrier exceeds " +
                              std::to_string(kMaxCarrierSize) + " elements");
    }
    carrier *= p.carrier_size();
  }
  auto count = static_cast<std::uint32_t>(parts.size());
  return LatticeNode::intern(LatticeKind::kProduct, count, std::move(parts));
}

LatticeKind Lattice::kind() const { return node_->kind; }
std::uint32_t Lattice::parameter() const { return node_->param; }
std::size_t Lattice::carrier_size() const { return node_->carrier; }
std::size_t Lattice::height() const { return node_->height; }
std::span<const Lattice> Lattice::parts() const { return node_->parts; }
Index Lattice::top() const { return static_cast<Index>(node_->carrier - 1); }

std::size_t Lattice::hash_value() const noexcept {
  return reinterpret_cast<std::size_t>(node_);
}

Index Lattice::component(Index a, std::size_t part) const {
  const LatticeNode& n = *node_;
  return static_cast<Index>((a / n.strides[part]) % n.parts[part].carrier_size());
}

std::size_t Lattice::stride(std::size_t part) const { return node_->strides[part]; }

Index Lattice::compose(std::span<const Index> components) const {
  const LatticeNode& n = *node_;
  if (n.kind != LatticeKind::kProduct || components.size() != n.parts.size()) {
    throw TypingError("compose: expected " + std::to_string(n.parts.size()) +
                      " components for " + name());
  }
  std::size_t index = 0;
  for (std::size_t p = 0; p < components.size(); ++p) {
    if (!n.parts[p].contains(components[p])) {
      throw RangeError("compose: component " + std::to_string(p) +
                       " out of range for " + n.parts[p].name());
    }
    index += components[p] * n.strides[p];
  }
  return static_cast<Index>(index);
}

std::vector<Index> Lattice::decompose(Index a) const {
  std::vector<Index> out(node_->parts.size());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = component(a, p);
  return out;
}

bool Lattice::leq(Index a, Index b) const {
  const LatticeNode& n = *node_;
  switch (n.kind) {
    case LatticeKind::kChain:
      return a <= b;
    case LatticeKind::kPowerset:
      return (a & ~b) == 0;
    case LatticeKind::kProduct:
      for (std::size_t p = 0; p < n.parts.size(); ++p) {
        if (!n.parts[p].leq(component(a, p), component(b, p))) return false;
      }
      return true;
  }
  return false;
}

Index Lattice::join(Index a, Index b) const {
  const LatticeNode& n = *node_;
  switch (n.kind) {
    case LatticeKind::kChain:
      return std::max(a, b);
    case LatticeKind::kPowerset:
      return a | b;
    case LatticeKind::kProduct: {
      std::size_t out = 0;
      for (std::size_t p = 0; p < n.parts.size(); ++p) {
        out += n.parts[p].join(component(a, p), component(b, p)) * n.strides[p];
      }
      return static_cast<Index>(out);
    }
  }
  return a;
}

Index Lattice::meet(Index a, Index b) const {
  const LatticeNode& n = *node_;
  switch (n.kind) {
    case LatticeKind::kChain:
      return std::min(a, b);
    case LatticeKind::kPowerset:
      return a & b;
    case LatticeKind::kProduct: {
      std::size_t out = 0;
      for (std::size_t p = 0; p < n.parts.size(); ++p) {
        out += n.parts[p].meet(component(a, p), component(b, p)) * n.strides[p];
      }
      return static_cast<Index>(out);
    }
  }
  return a;
}

std::vector<Index> Lattice::upper_covers(Index a) const {
  const LatticeNode& n = *node_;
  std::vector<Index> out;
  switch (n.kind) {
    case LatticeKind::kChain:
      if (a + 1 < n.carrier) out.push_back(a + 1);
      break;
    case LatticeKind::kPowerset:
      for (std::uint32_t bit = 0; bit < n.param; ++bit) {
        if ((a & (Index{1} << bit)) == 0) out.push_back(a | (Index{1} << bit));
      }
      break;
    case LatticeKind::kProduct:
      for (std::size_t p = 0; p < n.parts.size(); ++p) {
        const Index digit = component(a, p);
        for (Index up : n.parts[p].upper_covers(digit)) {
          out.push_back(static_cast<Index>(a + (up - digit) * n.strides[p]));
        }
      }
      break;
  }
  return out;
}

std::vector<Index> Lattice::lower_covers(Index a) const {
  const LatticeNode& n = *node_;
  std::vector<Index> out;
  switch (n.kind) {
    case LatticeKind::kChain:
      if (a > 0) out.push_back(a - 1);
      break;
    case LatticeKind::kPowerset:
      for (std::uint32_t bit = 0; bit < n.param; ++bit) {
        if ((a & (Index{1} << bit)) != 0) out.push_back(a & ~(Index{1} << bit));
      }
      break;
    case LatticeKind::kProduct:
      for (std::size_t p = 0; p < n.parts.size(); ++p) {
        const Index digit = component(a, p);
        for (Index down : n.parts[p].lower_covers(digit)) {
          out.push_back(static_cast<Index>(a - (digit - down) * n.strides[p]));
        }
      }
      break;
  }
  return out;
}

std::string Lattice::name() const {
  const LatticeNode& n = *node_;
  switch (n.kind) {
    case LatticeKind::kChain:
      return "chain(" + std::to_string(n.param) + ")";
    case LatticeKind::kPowerset:
      return "powerset(" + std::to_string(n.param) + ")";
    case LatticeKind::kProduct: {
      std::string out = "product(";
      for (std::size_t p = 0; p < n.parts.size(); ++p) {
        if (p > 0) out += ", ";
        out += n.parts[p].name();
      }
      return out + ")";
    }
  }
  return {};
}

std::string Lattice::format(Index a) const {
  const LatticeNode& n = *node_;
  switch (n.kind) {
    case LatticeKind::kChain:
      return std::to_string(a);
    case LatticeKind::kPowerset: {
      std::string out = "{";
      bool first = true;
      for (std::uint32_t bit = 0; bit < n.param; ++bit) {
        if ((a & (Index{1} << bit)) == 0) continue;
        if (!first) out += ",";
        out += std::to_string(bit);
        first = false;
      }
      return out + "}";
    }
    case LatticeKind::kProduct: {
      std::string out = "(";
      for (std::size_t p = 0; p < n.parts.size(); ++p) {
        if (p > 0) out += ",";
        out += n.parts[p].format(component(a, p));
      }
      return out + ")";
    }
  }
  return {};
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_blanks() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  bool eat(char c) {
    skip_blanks();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool peek(char c) {
    skip_blanks();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  std::optional<std::uint64_t> number() {
    skip_blanks();
    std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > kMaxCarrierSize) return std::nullopt;
      ++pos_;
    }
    if (pos_ == start) return std::nullopt;
    return value;
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::optional<Index> parse_with(const Lattice& l, Cursor& in) {
  switch (l.kind()) {
    case LatticeKind::kChain: {
      auto v = in.number();
      if (!v || *v >= l.carrier_size()) return std::nullopt;
      return static_cast<Index>(*v);
    }
    case LatticeKind::kPowerset: {
      if (!in.eat('{')) return std::nullopt;
      Index mask = 0;
      if (in.eat('}')) return mask;
      do {
        auto v = in.number();
        if (!v || *v >= l.parameter()) return std::nullopt;
        mask |= Index{1} << *v;
      } while (in.eat(','));
      if (!in.eat('}')) return std::nullopt;
      return mask;
    }
    case LatticeKind::kProduct: {
      if (!in.eat('(')) return std::nullopt;
      std::size_t index = 0;
      const auto parts = l.parts();
      for (std::size_t p = 0; p < parts.size(); ++p) {
        if (p > 0 && !in.eat(',')) return std::nullopt;
        auto digit = parse_with(parts[p], in);
        if (!digit) return std::nullopt;
        index += *digit * l.stride(p);
      }
      if (!in.eat(')')) return std::nullopt;
      return static_cast<Index>(index);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Index> Lattice::parse_prefix(std::string_view text,
                                           std::size_t& consumed) const {
  Cursor in(text);
  auto out = parse_with(*this, in);
  consumed = in.pos();
  return out;
}

std::optional<Index> Lattice::parse(std::string_view text) const {
  std::size_t consumed = 0;
  auto out = parse_prefix(text, consumed);
  if (!out) return std::nullopt;
  Cursor rest(text.substr(consumed));
  rest.skip_blanks();
  if (consumed + rest.pos() != text.size()) return std::nullopt;
  return out;
}

std::ostream& operator<<(std::ostream& os, const Lattice& l) { return os << l.name(); }

std::ostream& operator<<(std::ostream& os, const Elem& e) {
  return os << e.to_string();
}

Elem make_elem(const Lattice& l, Index index) {
  if (!l.contains(index)) {
    throw RangeError("index " + std::to_string(index) + " out of range for " + l.name());
  }
  return Elem{l, index};
}

Elem parse_elem(const Lattice& l, std::string_view text) {
  auto index = l.parse(text);
  if (!index) {
    throw RangeError("'" + std::string(text) + "' is not an element of " + l.name());
  }
  return Elem{l, *index};
}

namespace {

void require_same(const Elem& a, const Elem& b, const char* op) {
  if (a.lattice != b.lattice) {
    throw LatticeMismatch(std::string(op) + ": " + a.to_string() + " in " +
                          a.lattice.name() + " vs " + b.to_string() + " in " +
                          b.lattice.name());
  }
}

}  // namespace

bool leq(const Elem& a, const Elem& b) {
  require_same(a, b, "leq");
  return a.lattice.leq(a.index, b.index);
}

Elem join(const Elem& a, const Elem& b) {
  require_same(a, b, "join");
  return Elem{a.lattice, a.lattice.join(a.index, b.index)};
}

Elem meet(const Elem& a, const Elem& b) {
  require_same(a, b, "meet");
  return Elem{a.lattice, a.lattice.meet(a.index, b.index)};
}

std::pair<Elem, Elem> bounds(const Lattice& l) {
  return {Elem{l, l.bottom()}, Elem{l, l.top()}};
}

std::vector<Elem> enumerate(const Lattice& l) {
  std::vector<Elem> out;
  out.reserve(l.carrier_size());
  for (std::size_t i = 0; i < l.carrier_size(); ++i) {
    out.push_back(Elem{l, static_cast<Index>(i)});
  }
  return out;
}

Lattice product_of(std::vector<Lattice> parts) { return Lattice::product(std::move(parts)); }

Elem tuple(const Lattice& product, std::span<const Elem> components) {
  if (product.kind() != LatticeKind::kProduct) {
    throw TypingError("tuple: " + product.name() + " is not a product");
  }
  const auto parts = product.parts();
  if (components.size() != parts.size()) {
    throw TypingError("tuple: " + product.name() + " has " +
                      std::to_string(parts.size()) + " parts, got " +
                      std::to_string(components.size()));
  }
  std::vector<Index> digits(parts.size());
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (components[p].lattice != parts[p]) {
      throw LatticeMismatch("tuple: component " + std::to_string(p) + " is in " +
                            components[p].lattice.name() + ", expected " +
                            parts[p].name());
    }
    digits[p] = components[p].index;
  }
  return Elem{product, product.compose(digits)};
}

std::vector<Elem> split(const Elem& e) {
  if (e.lattice.kind() != LatticeKind::kProduct) {
    throw TypingError("split: " + e.lattice.name() + " is not a product");
  }
  const auto parts = e.lattice.parts();
  std::vector<Elem> out;
  out.reserve(parts.size());
  for (std::size_t p = 0; p < parts.size(); ++p) {
    out.push_back(Elem{parts[p], e.lattice.component(e.index, p)});
  }
  return out;
}

}  // namespace mufix

std::size_t std::hash<mufix::Elem>::operator()(const mufix::Elem& e) const noexcept {
  return e.lattice.hash_value() * 31u + e.index;
}
