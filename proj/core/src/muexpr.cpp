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

#include "mufix/muexpr.hpp"

#include "mufix/fixpoint.hpp"

namespace mufix {

struct MuExpr::Node {
  Kind kind;
  std::size_t coordinate;
  std::vector<MuExpr> children;
  std::optional<Elem> value;
};

MuExpr MuExpr::mu(std::size_t coordinate, MuExpr body) {
  return MuExpr(std::make_shared<const Node>(
      Node{Kind::kMu, coordinate, {std::move(body)}, std::nullopt}));
}

MuExpr MuExpr::app(std::size_t coordinate, std::vector<MuExpr> args) {
  return MuExpr(std::make_shared<const Node>(
      Node{Kind::kApp, coordinate, std::move(args), std::nullopt}));
}

MuExpr MuExpr::var(std::size_t coordinate) {
  return MuExpr(std::make_shared<const Node>(Node{Kind::kVar, coordinate, {}, std::nullopt}));
}

MuExpr MuExpr::hole(std::size_t coordinate, Elem value) {
  return MuExpr(std::make_shared<const Node>(Node{Kind::kHole, coordinate, {}, value}));
}

MuExpr::Kind MuExpr::kind() const { return node_->kind; }
std::size_t MuExpr::coordinate() const { return node_->coordinate; }
const MuExpr& MuExpr::body() const { return node_->children.at(0); }
std::span<const MuExpr> MuExpr::args() const { return node_->children; }
const Elem& MuExpr::value() const { return *node_->value; }

std::uint64_t predicted_mu_count(std::size_t n) {
  // sum_{k=1..n} (n-1)!/(n-k)!, accumulated as a falling factorial
  std::uint64_t total = 0;
  std::uint64_t term = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    total += term;
    term *= n - k;
  }
  return total;
}

namespace {

enum class Slot { kFree, kHole, kVar };

MuExpr build(std::size_t i, std::vector<Slot>& slots, const BindingMap& b) {
  const std::size_t n = slots.size();
  const Slot saved = slots[i];
  slots[i] = Slot::kVar;
  std::vector<MuExpr> args;
  args.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) {
      args.push_back(MuExpr::var(i));
    } else if (slots[j] == Slot::kHole) {
      args.push_back(MuExpr::hole(j, *b.at(j)));
    } else if (slots[j] == Slot::kVar) {
      args.push_back(MuExpr::var(j));
    } else {
      args.push_back(build(j, slots, b));
    }
  }
  slots[i] = saved;
  return MuExpr::mu(i, MuExpr::app(i, std::move(args)));
}

}  // namespace

MuExpr build_nested_expr(std::size_t n, std::size_t i, const BindingMap& b,
                         std::size_t max_arity) {
  if (n == 0) throw PreconditionError("build_nested_expr: arity 0");
  if (b.size() != n) {
    throw TypingError("build_nested_expr: binding of arity " + std::to_string(b.size()) +
                      " for arity " + std::to_string(n));
  }
  if (i >= n) {
    throw RangeError("build_nested_expr: coordinate " + std::to_string(i + 1) +
                     " out of range for arity " + std::to_string(n));
  }
  if (n > max_arity) {
    throw CapExceeded("build_nested_expr: arity " + std::to_string(n) + " expands to " +
                      std::to_string(predicted_mu_count(n)) +
                      " mu binders; maximum arity is " + std::to_string(max_arity));
  }
  std::vector<Slot> slots(n, Slot::kFree);
  for (std::size_t j = 0; j < n; ++j) {
    if (b.bound(j)) slots[j] = Slot::kHole;
  }
  return build(i, slots, b);
}

namespace {

void print(const MuExpr& e, std::string& out) {
  switch (e.kind()) {
    case MuExpr::Kind::kMu:
      out += "mu x" + std::to_string(e.coordinate() + 1) + ". ";
      print(e.body(), out);
      break;
    case MuExpr::Kind::kApp: {
      out += "f" + std::to_string(e.coordinate() + 1) + "(";
      bool first = true;
      for (const MuExpr& a : e.args()) {
        if (!first) out += ", ";
        print(a, out);
        first = false;
      }
      out += ")";
      break;
    }
    case MuExpr::Kind::kVar:
      out += "x" + std::to_string(e.coordinate() + 1);
      break;
    case MuExpr::Kind::kHole:
      out += "<" + e.value().to_string() + ">";
      break;
  }
}

}  // namespace

std::string print_expr(const MuExpr& e) {
  std::string out;
  print(e, out);
  return out;
}

std::size_t count_mu(const MuExpr& e) {
  std::size_t count = e.kind() == MuExpr::Kind::kMu ? 1 : 0;
  for (const MuExpr& child : e.args()) count += count_mu(child);
  return count;
}

namespace {

class ExprEvaluator {
 public:
  ExprEvaluator(const VectorFn& f, std::optional<std::size_t> fuel)
      : f_(f), fuel_(fuel), env_(f.arity()) {}

  void bind(std::size_t j, const Elem& v) {
    if (j >= env_.size()) {
      throw EvaluationError("environment binds x" + std::to_string(j + 1) +
                            " beyond arity " + std::to_string(env_.size()));
    }
    if (v.lattice != f_.domain()[j]) {
      throw TypingError("environment binds x" + std::to_string(j + 1) + " to " +
                        v.to_string() + " in " + v.lattice.name() + ", expected " +
                        f_.domain()[j].name());
    }
    env_[j] = v.index;
  }

  Elem eval(const MuExpr& e) {
    const std::size_t c = e.coordinate();
    if (c >= f_.arity()) {
      throw EvaluationError("coordinate " + std::to_string(c + 1) +
                            " out of range for arity " + std::to_string(f_.arity()));
    }
    const Lattice& l = f_.domain()[c];
    switch (e.kind()) {
      case MuExpr::Kind::kMu: {
        const std::optional<Index> saved = env_[c];
        auto step = [&](Index x) {
          env_[c] = x;
          const Elem y = eval(e.body());
          if (y.lattice != l) {
            throw TypingError("body of mu x" + std::to_string(c + 1) + " is in " +
                              y.lattice.name() + ", expected " + l.name());
          }
          return y.index;
        };
        const Index value = kleene_lfp(l, step, fuel_.value_or(l.carrier_size())).value;
        env_[c] = saved;
        return Elem{l, value};
      }
      case MuExpr::Kind::kApp: {
        const auto args = e.args();
        if (args.size() != f_.arity()) {
          throw EvaluationError("f" + std::to_string(c + 1) + " applied to " +
                                std::to_string(args.size()) + " arguments, arity is " +
                                std::to_string(f_.arity()));
        }
        std::vector<Index> x(args.size());
        for (std::size_t j = 0; j < args.size(); ++j) {
          const Elem v = eval(args[j]);
          if (v.lattice != f_.domain()[j]) {
            throw TypingError("argument " + std::to_string(j + 1) + " of f" +
                              std::to_string(c + 1) + " is in " + v.lattice.name() +
                              ", expected " + f_.domain()[j].name());
          }
          x[j] = v.index;
        }
        return Elem{l, f_.coordinate_raw(c, x)};
      }
      case MuExpr::Kind::kVar:
        if (!env_[c]) throw EvaluationError("free variable x" + std::to_string(c + 1));
        return Elem{l, *env_[c]};
      case MuExpr::Kind::kHole:
        return e.value();
    }
    throw EvaluationError("malformed expression");
  }

 private:
  const VectorFn& f_;
  std::optional<std::size_t> fuel_;
  std::vector<std::optional<Index>> env_;
};

}  // namespace

Elem eval_expr(const MuExpr& e, const VectorFn& f, const Env& env,
               std::optional<std::size_t> fuel) {
  ExprEvaluator evaluator(f, fuel);
  for (const auto& [j, v] : env) evaluator.bind(j, v);
  return evaluator.eval(e);
}

}  // namespace mufix
