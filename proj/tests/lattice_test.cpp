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

#include <set>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "support/oracles.hpp"

namespace mufix {
namespace {

Elem at(const Lattice& l, Index i) { return make_elem(l, i); }

std::vector<Lattice> small_lattices() {
  const Lattice c2 = Lattice::chain(2);
  const Lattice c3 = Lattice::chain(3);
  return {
      Lattice::chain(1),
      c2,
      c3,
      Lattice::chain(5),
      Lattice::powerset(0),
      Lattice::powerset(2),
      Lattice::powerset(3),
      Lattice::product({c2, c2}),
      Lattice::product({c2, c3}),
      Lattice::product({c2, c3, c2}),
      Lattice::product({Lattice::powerset(2), c2}),
      Lattice::product({Lattice::product({c2, c2}), c3}),
  };
}

TEST(Lattice, ChainOrder) {
  const Lattice c3 = Lattice::chain(3);
  EXPECT_TRUE(leq(at(c3, 0), at(c3, 2)));
  EXPECT_FALSE(leq(at(c3, 2), at(c3, 0)));
  EXPECT_EQ(c3.carrier_size(), 3u);
  EXPECT_EQ(c3.height(), 2u);
}

TEST(Lattice, PowersetIncomparableSets) {
  const Lattice p2 = Lattice::powerset(2);
  const Elem s0 = parse_elem(p2, "{0}");
  const Elem s1 = parse_elem(p2, "{1}");
  EXPECT_FALSE(leq(s0, s1));
  EXPECT_FALSE(leq(s1, s0));
  EXPECT_EQ(join(s0, s1).to_string(), "{0,1}");
  EXPECT_EQ(meet(s0, s1).to_string(), "{}");
}

TEST(Lattice, ProductComponentwiseOrder) {
  const Lattice c2 = Lattice::chain(2);
  const Lattice p = product_of({c2, c2});
  EXPECT_TRUE(leq(parse_elem(p, "(1,0)"), parse_elem(p, "(1,1)")));
  EXPECT_FALSE(leq(parse_elem(p, "(1,0)"), parse_elem(p, "(0,1)")));
}

TEST(Lattice, ChainJoinMeet) {
  const Lattice c4 = Lattice::chain(4);
  EXPECT_EQ(join(at(c4, 1), at(c4, 2)), at(c4, 2));
  EXPECT_EQ(meet(at(c4, 1), at(c4, 2)), at(c4, 1));
}

TEST(Lattice, JoinWithBottomIsIdentity) {
  for (const Lattice& l : small_lattices()) {
    const auto [bottom, top] = bounds(l);
    for (const Elem& a : enumerate(l)) {
      EXPECT_EQ(join(a, bottom), a) << l.name();
      EXPECT_EQ(meet(a, top), a) << l.name();
      EXPECT_EQ(join(a, top), top) << l.name();
      EXPECT_EQ(meet(a, bottom), bottom) << l.name();
    }
  }
}

TEST(Lattice, Bounds) {
  const Lattice c2 = Lattice::chain(2);
  const Lattice c3 = Lattice::chain(3);
  auto [b3, t3] = bounds(c3);
  EXPECT_EQ(b3.to_string(), "0");
  EXPECT_EQ(t3.to_string(), "2");
  auto [bp, tp] = bounds(Lattice::powerset(2));
  EXPECT_EQ(bp.to_string(), "{}");
  EXPECT_EQ(tp.to_string(), "{0,1}");
  const Lattice prod = product_of({c2, c3});
  auto [bx, tx] = bounds(prod);
  EXPECT_EQ(bx.to_string(), "(0,0)");
  EXPECT_EQ(tx.to_string(), "(1,2)");
  // bounds of a product are the tuple of component bounds
  const std::vector<Elem> bottoms{bounds(c2).first, bounds(c3).first};
  const std::vector<Elem> tops{bounds(c2).second, bounds(c3).second};
  EXPECT_EQ(tuple(prod, bottoms), bx);
  EXPECT_EQ(tuple(prod, tops), tx);
}

TEST(Lattice, BoundsAreExtremal) {
  for (const Lattice& l : small_lattices()) {
    const auto [bottom, top] = bounds(l);
    for (const Elem& x : enumerate(l)) {
      EXPECT_TRUE(leq(bottom, x));
      EXPECT_TRUE(leq(x, top));
    }
  }
}

TEST(Lattice, Enumerate) {
  const auto c2 = enumerate(Lattice::chain(2));
  ASSERT_EQ(c2.size(), 2u);
  EXPECT_EQ(c2[0].to_string(), "0");
  EXPECT_EQ(c2[1].to_string(), "1");
  const auto p1 = enumerate(Lattice::powerset(1));
  ASSERT_EQ(p1.size(), 2u);
  EXPECT_EQ(p1[0].to_string(), "{}");
  EXPECT_EQ(p1[1].to_string(), "{0}");
  const Lattice c = Lattice::chain(2);
  EXPECT_EQ(enumerate(product_of({c, c})).size(), 4u);
  for (const Lattice& l : small_lattices()) {
    const auto all = enumerate(l);
    ASSERT_EQ(all.size(), l.carrier_size());
    for (std::size_t k = 0; k < all.size(); ++k) EXPECT_EQ(all[k].index, k);
  }
}

TEST(Lattice, ProductOf) {
  const Lattice c2 = Lattice::chain(2);
  const Lattice c3 = Lattice::chain(3);
  EXPECT_EQ(product_of({c2, c2}).carrier_size(), 4u);
  EXPECT_EQ(product_of({c2, c3, c2}).carrier_size(), 12u);
  EXPECT_THROW(product_of({}), ConstructionError);
}

TEST(Lattice, SplitTupleRoundTrip) {
  for (const Lattice& l : small_lattices()) {
    if (l.kind() != LatticeKind::kProduct) continue;
    for (const Elem& e : enumerate(l)) {
      EXPECT_EQ(tuple(l, split(e)), e);
    }
  }
}

TEST(Lattice, StructuralIdentity) {
  EXPECT_EQ(Lattice::chain(3), Lattice::chain(3));
  EXPECT_NE(Lattice::chain(3), Lattice::chain(4));
  EXPECT_NE(Lattice::chain(2), Lattice::powerset(1));
  EXPECT_EQ(Lattice::product({Lattice::chain(2), Lattice::chain(3)}),
            Lattice::product({Lattice::chain(2), Lattice::chain(3)}));
  EXPECT_NE(Lattice::product({Lattice::chain(2), Lattice::chain(3)}),
            Lattice::product({Lattice::chain(3), Lattice::chain(2)}));
}

TEST(Lattice, MismatchedLatticesAreRejected) {
  const Elem a = at(Lattice::chain(2), 1);
  const Elem b = at(Lattice::chain(3), 1);
  EXPECT_THROW(leq(a, b), LatticeMismatch);
  EXPECT_THROW(join(a, b), LatticeMismatch);
  EXPECT_THROW(meet(a, b), LatticeMismatch);
  const Lattice p = product_of({Lattice::chain(2), Lattice::chain(2)});
  const std::vector<Elem> wrong{a, b};
  EXPECT_THROW(tuple(p, wrong), LatticeMismatch);
}

TEST(Lattice, ConstructionErrors) {
  EXPECT_THROW(Lattice::chain(0), ConstructionError);
  EXPECT_THROW(Lattice::powerset(40), ConstructionError);
  EXPECT_THROW(make_elem(Lattice::chain(2), 2), RangeError);
  EXPECT_EQ(Lattice::powerset(0).carrier_size(), 1u);
}

TEST(Lattice, LiteralsRoundTrip) {
  for (const Lattice& l : small_lattices()) {
    for (const Elem& e : enumerate(l)) {
      EXPECT_EQ(parse_elem(l, e.to_string()), e) << l.name();
    }
  }
  const Lattice p = product_of({Lattice::powerset(2), Lattice::chain(3)});
  EXPECT_EQ(parse_elem(p, " ( {1 , 0} , 2 ) ").to_string(), "({0,1},2)");
  EXPECT_FALSE(Lattice::chain(3).parse("3"));
  EXPECT_FALSE(Lattice::powerset(2).parse("{2}"));
  EXPECT_FALSE(p.parse("({0},1"));
  EXPECT_FALSE(p.parse("({0},1) x"));
}

TEST(Lattice, Names) {
  EXPECT_EQ(Lattice::chain(3).name(), "chain(3)");
  EXPECT_EQ(product_of({Lattice::chain(2), Lattice::powerset(1)}).name(),
            "product(chain(2), powerset(1))");
  std::ostringstream os;
  os << at(Lattice::powerset(3), 5);
  EXPECT_EQ(os.str(), "{0,2}");
}

// Exhaustive lattice laws on every small lattice (carrier <= 16).
TEST(LatticeLaws, ExhaustiveAlgebra) {
  for (const Lattice& l : small_lattices()) {
    ASSERT_LE(l.carrier_size(), 16u);
    const auto all = enumerate(l);
    for (const Elem& a : all) {
      EXPECT_EQ(join(a, a), a);
      EXPECT_EQ(meet(a, a), a);
      EXPECT_TRUE(leq(a, a));
      for (const Elem& b : all) {
        EXPECT_EQ(join(a, b), join(b, a));
        EXPECT_EQ(meet(a, b), meet(b, a));
        EXPECT_EQ(meet(a, join(a, b)), a);
        EXPECT_EQ(join(a, meet(a, b)), a);
        EXPECT_EQ(leq(a, b), join(a, b) == b);
        EXPECT_EQ(leq(a, b), meet(a, b) == a);
        if (leq(a, b) && leq(b, a)) EXPECT_EQ(a, b);
        for (const Elem& c : all) {
          EXPECT_EQ(join(a, join(b, c)), join(join(a, b), c));
          EXPECT_EQ(meet(a, meet(b, c)), meet(meet(a, b), c));
          if (leq(a, b) && leq(b, c)) EXPECT_TRUE(leq(a, c));
        }
      }
    }
  }
}

// The encoded order, join and meet agree with definitions computed without
// the library's fast paths; product order is componentwise.
TEST(LatticeLaws, AgreesWithDefinitions) {
  for (const Lattice& l : small_lattices()) {
    for (std::size_t a = 0; a < l.carrier_size(); ++a) {
      for (std::size_t b = 0; b < l.carrier_size(); ++b) {
        const auto ai = static_cast<Index>(a);
        const auto bi = static_cast<Index>(b);
        ASSERT_EQ(l.leq(ai, bi), oracle::leq_by_definition(l, ai, bi)) << l.name();
        ASSERT_EQ(l.join(ai, bi), oracle::join_by_search(l, ai, bi)) << l.name();
        ASSERT_EQ(l.meet(ai, bi), oracle::meet_by_search(l, ai, bi)) << l.name();
      }
    }
  }
}

TEST(LatticeLaws, IndexOrderIsLinearExtension) {
  for (const Lattice& l : small_lattices()) {
    for (std::size_t a = 0; a < l.carrier_size(); ++a) {
      for (std::size_t b = 0; b < l.carrier_size(); ++b) {
        if (l.leq(static_cast<Index>(a), static_cast<Index>(b))) EXPECT_LE(a, b);
      }
    }
  }
}

TEST(LatticeLaws, CoversAreExactlyTheCoveringPairs) {
  for (const Lattice& l : small_lattices()) {
    for (std::size_t a = 0; a < l.carrier_size(); ++a) {
      std::set<Index> expected;
      for (std::size_t b = 0; b < l.carrier_size(); ++b) {
        const auto ai = static_cast<Index>(a);
        const auto bi = static_cast<Index>(b);
        if (a == b || !l.leq(ai, bi)) continue;
        bool between = false;
        for (std::size_t c = 0; c < l.carrier_size(); ++c) {
          const auto ci = static_cast<Index>(c);
          if (c != a && c != b && l.leq(ai, ci) && l.leq(ci, bi)) between = true;
        }
        if (!between) expected.insert(bi);
      }
      const auto ups = l.upper_covers(static_cast<Index>(a));
      EXPECT_EQ(std::set<Index>(ups.begin(), ups.end()), expected) << l.name();
      for (Index up : ups) {
        const auto downs = l.lower_covers(up);
        EXPECT_NE(std::find(downs.begin(), downs.end(), static_cast<Index>(a)), downs.end());
      }
    }
  }
}

}  // namespace
}  // namespace mufix
