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


#include "mufix_cli/problem.hpp"

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "mufix/fixpoint.hpp"
#include "support/helpers.hpp"

namespace mufix::cli {
namespace {

using testing::point;
using testing::power;

const Lattice kC2 = Lattice::chain(2);
const Lattice kC3 = Lattice::chain(3);
const Lattice kP2 = Lattice::powerset(2);

std::string data(const std::string& name) { return std::string(MUFIX_TEST_DATA_DIR) + "/" + name; }

// Serializes a table function in the problem-file format. Coordinates must
// be chains or powersets.
std::string table_text(const VectorFn& f) {
  std::ostringstream os;
  os << "mode table\n";
  std::string coords = "coords";
  for (std::size_t j = 0; j < f.arity(); ++j) {
    const Lattice& l = f.domain()[j];
    os << "lattice L" << j << " = "
       << (l.kind() == LatticeKind::kChain ? "chain " : "powerset ") << l.parameter() << "\n";
    coords += " L" + std::to_string(j);
  }
  os << coords << "\n";
  const Lattice& p = f.product();
  for (Index x = 0; x < p.carrier_size(); ++x) {
    const Point in = split(make_elem(p, x));
    os << format_point(in) << " -> " << format_point(f.apply(in)) << "\n";
  }
  return os.str();
}

// Expects parse_problem_text to fail at `line` with a message containing
// `fragment`.
void expect_rejected(const std::string& text, std::size_t line, const std::string& fragment) {
  try {
    parse_problem_text(text, "t");
    ADD_FAILURE() << "accepted:\n" << text;
  } catch (const ProblemError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_NE(e.message().find(fragment), std::string::npos) << e.what();
    EXPECT_EQ(std::string(e.what()).rfind("t:", 0), 0u) << e.what();
  }
}

TEST(ParseProblem, SwapFile) {
  const ProblemFile p = parse_problem(data("swap.mufix"));
  EXPECT_EQ(p.arity(), 2u);
  EXPECT_EQ(p.mode, FunctionMode::kTable);
  ASSERT_TRUE(p.description.has_value());
  EXPECT_EQ(*p.description, "swap function on chain(2)^2");
  ASSERT_EQ(p.lattices.size(), 1u);
  EXPECT_EQ(p.lattices[0].name, "C");
  EXPECT_EQ(p.lattices[0].lattice, kC2);
  EXPECT_EQ(p.coordinate_lattices, (std::vector<std::string>{"C", "C"}));
  const std::vector<Lattice> d = power(kC2, 2);
  for (Index a = 0; a < 2; ++a) {
    for (Index b = 0; b < 2; ++b) {
      EXPECT_EQ(p.function.apply(point(d, {a, b})), point(d, {b, a}));
    }
  }
}

TEST(ParseProblem, MissingRowNamesTheTuple) {
  try {
    parse_problem(data("missing_row.mufix"));
    FAIL() << "accepted";
  } catch (const ProblemError& e) {
    EXPECT_NE(e.message().find("incomplete table"), std::string::npos);
    EXPECT_NE(e.message().find("(1,0)"), std::string::npos);
    EXPECT_GT(e.line(), 0u);
  }
}

TEST(ParseProblem, NonMonotoneTableGivesWitness) {
  try {
    parse_problem(data("non_monotone.mufix"));
    FAIL() << "accepted";
  } catch (const ProblemError& e) {
    EXPECT_NE(e.message().find("non-monotone"), std::string::npos);
    // The witness is a covering pair ending at the offending row.
    EXPECT_NE(e.message().find("(0,1) <= (1,1)"), std::string::npos) << e.what();
    EXPECT_EQ(e.line(), 8u);
  }
}

TEST(ParseProblem, MissingFile) {
  EXPECT_THROW(parse_problem(data("no_such_file.mufix")), ProblemError);
}

TEST(ParseProblem, CommentsBlankLinesAndCarriageReturns) {
  const ProblemFile p = parse_problem_text(
      "# leading comment\r\n\r\nlattice C = chain 3   # trailing\r\ncoords C\r\n"
      "mode terms\r\n  f1 = join(x1, const(1))  \r\n");
  EXPECT_EQ(p.arity(), 1u);
  EXPECT_EQ(lfp_vector(p.function).value, point({kC3}, {1}));
}

TEST(ParseProblem, HeterogeneousTable) {
  const ProblemFile p = parse_problem_text(
      "lattice C = chain 3\nlattice P = powerset 1\ncoords C P\nmode table\n"
      "(0,{}) -> (1,{})\n(0,{0}) -> (1,{0})\n(1,{}) -> (1,{0})\n(1,{0}) -> (2,{0})\n"
      "(2,{}) -> (2,{0})\n(2,{0}) -> (2,{0})\n");
  const Point lfp = lfp_vector(p.function).value;
  EXPECT_EQ(format_point(lfp), "(2,{0})");
}

TEST(ParseProblem, ProductCoordinate) {
  const ProblemFile p = parse_problem_text(
      "lattice B = chain 2\nlattice Q = product B B\ncoords Q\nmode table\n"
      "((0,0)) -> ((0,1))\n((0,1)) -> ((1,1))\n((1,0)) -> ((1,1))\n((1,1)) -> ((1,1))\n");
  EXPECT_EQ(p.domain[0], Lattice::product({kC2, kC2}));
  EXPECT_EQ(format_point(lfp_vector(p.function).value), "((1,1))");
}

TEST(ParseProblem, TermsMatchHandwrittenTerms) {
  const ProblemFile p = parse_problem_text(
      "lattice C = chain 3\ncoords C C C\narity 3\nmode terms\n"
      "f1 = join(x2, const(1))\n"
      "f2 = mono([0,2,2], meet(x1, x3))\n"
      "f3 = join(x1, x2, x3)\n");
  EXPECT_EQ(p.mode, FunctionMode::kTerms);
  const std::vector<Term> expected = {
      Term::join(Term::var(1), Term::constant(make_elem(kC3, 1))),
      Term::mono(UnaryMap(kC3, {0, 2, 2}), Term::meet(Term::var(0), Term::var(2))),
      Term::join(Term::join(Term::var(0), Term::var(1)), Term::var(2)),
  };
  ASSERT_EQ(p.function.terms().size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(p.function.terms()[i].to_string(), expected[i].to_string());
  }
  const VectorFn reference = VectorFn::terms(power(kC3, 3), expected);
  for (const Elem& x : enumerate(Lattice::product(power(kC3, 3)))) {
    EXPECT_EQ(p.function.apply(split(x)), reference.apply(split(x)));
  }
}

TEST(ParseProblem, PrintedTermsParseBack) {
  const std::string text =
      "lattice C = chain 3\ncoords C C\nmode terms\n"
      "f1 = mono([0,2,2], meet(x2, const(1)))\nf2 = join(x1, x2)\n";
  const ProblemFile p = parse_problem_text(text);
  std::string again = "lattice C = chain 3\ncoords C C\nmode terms\n";
  for (std::size_t i = 0; i < 2; ++i) {
    again += "f" + std::to_string(i + 1) + " = " + p.function.terms()[i].to_string() + "\n";
  }
  const ProblemFile q = parse_problem_text(again);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(q.function.terms()[i].to_string(), p.function.terms()[i].to_string());
  }
}

TEST(ParseProblem, SyntaxErrorsCarryPositions) {
  expect_rejected("lattice C = chain 2\nwhatever\n", 2, "unknown statement");
  expect_rejected("lattice C = ladder 2\n", 1, "expected 'chain'");
  expect_rejected("lattice C = chain 2\nlattice C = chain 3\n", 2, "already declared");
  expect_rejected("lattice C = chain 2\ncoords C\nmode table\n(0) => (0)\n", 4, "expected '->'");
  expect_rejected("lattice C = chain 2\ncoords C\nmode table\n(0) -> (2)\n", 4,
                  "expected an element of chain(2)");
  expect_rejected("lattice C = chain 2\ncoords C\nmode table\n(0) -> (0) x\n", 4,
                  "trailing text");
  expect_rejected("lattice C = chain 2\ncoords C\nmode terms\nf1 = frob(x1)\n", 4,
                  "unknown term");
  expect_rejected("lattice C = chain 2\ncoords C\nmode terms\nf1 = join(x1)\n", 4,
                  "expected ','");
  expect_rejected("lattice C = chain 3\ncoords C\nmode terms\nf1 = mono([2,0,1], x1)\n", 4,
                  "not monotone");
  expect_rejected("lattice C = chain 2\ncoords C\nmode terms\nf1 = x1\nf1 = x1\n", 5,
                  "already defined");
}

TEST(ParseProblem, ColumnsPointAtTheOffendingToken) {
  try {
    parse_problem_text("lattice C = chain 2\ncoords C D\n");
    FAIL();
  } catch (const ProblemError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 10u);
    EXPECT_NE(e.message().find("unknown lattice 'D'"), std::string::npos);
  }
}

TEST(ParseProblem, UnknownLattice) {
  expect_rejected("coords C\n", 1, "unknown lattice 'C'");
  expect_rejected("lattice A = chain 2\nlattice Q = product A B\n", 2, "unknown lattice 'B'");
}

TEST(ParseProblem, ArityMismatch) {
  const std::string head = "lattice C = chain 2\ncoords C C\n";
  expect_rejected(head + "arity 3\n", 3, "arity mismatch");
  expect_rejected("lattice C = chain 2\narity 1\ncoords C C\n", 3, "arity mismatch");
  expect_rejected(head + "mode table\n(0) -> (0,0)\n", 4, "arity mismatch");
  expect_rejected(head + "mode table\n(0,0,0) -> (0,0)\n", 4, "arity mismatch");
  expect_rejected(head + "mode terms\nf1 = x3\n", 4, "arity mismatch");
  expect_rejected(head + "mode terms\nf3 = x1\n", 4, "arity mismatch");
}

TEST(ParseProblem, StructuralErrors) {
  expect_rejected("lattice C = chain 2\nmode table\n", 2, "missing coords");
  expect_rejected("lattice C = chain 2\ncoords C\n", 2, "missing mode");
  expect_rejected("lattice C = chain 2\ncoords C\nmode terms\n(0) -> (0)\n", 4,
                  "table row in terms mode");
  expect_rejected("lattice C = chain 2\ncoords C\nmode table\nf1 = x1\n", 4,
                  "term definition in table mode");
  expect_rejected("lattice C = chain 2\nmode table\n(0) -> (0)\n", 3, "coords must be declared");
  expect_rejected("lattice C = chain 2\ncoords C C\nmode terms\nf1 = x2\n", 4,
                  "missing definition of f2");
  expect_rejected(
      "lattice C = chain 2\ncoords C C\nmode table\n(0,0) -> (0,0)\n(0,0) -> (1,1)\n", 5,
      "duplicate row for (0,0)");
}

TEST(ParseProblem, TermsModeNeedsOneLattice) {
  expect_rejected("lattice A = chain 2\nlattice B = chain 3\ncoords A B\nmode terms\nf1 = x1\n",
                  4, "same lattice");
}

// Serializing any monotone table and parsing it back gives the same
// function.
TEST(ParseProblemProperty, TableRoundTrip) {
  const std::vector<std::vector<Lattice>> domains = {
      {kC2}, {kC3, kC2}, {kP2, kC3}, power(kC2, 3), {kC3, kP2, kC2}};
  for (const auto& d : domains) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const VectorFn f = random_monotone(d, seed);
      const ProblemFile p = parse_problem_text(table_text(f));
      ASSERT_EQ(p.arity(), d.size());
      EXPECT_TRUE(std::equal(f.rows().begin(), f.rows().end(), p.function.rows().begin(),
                             p.function.rows().end()))
          << table_text(f);
    }
  }
}

// Dropping any one row is reported as an incomplete table naming that row.
TEST(ParseProblemProperty, EveryDroppedRowIsNamed) {
  const VectorFn f = random_monotone({kC3, kP2}, 5);
  const std::string text = table_text(f);
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (lines[k].empty() || lines[k][0] != '(') continue;
    std::string cut;
    for (std::size_t m = 0; m < lines.size(); ++m) {
      if (m != k) cut += lines[m] + "\n";
    }
    const std::string tuple = lines[k].substr(0, lines[k].find(" ->"));
    try {
      parse_problem_text(cut);
      ADD_FAILURE() << "accepted without " << tuple;
    } catch (const ProblemError& e) {
      EXPECT_NE(e.message().find("incomplete table: no row for " + tuple), std::string::npos)
          << e.what();
    }
  }
}

// A table with one output changed is accepted exactly when it is monotone.
TEST(ParseProblemProperty, RejectsExactlyTheNonMonotoneTables) {
  const std::vector<Lattice> d = {kC3, kC2};
  std::mt19937_64 rng(11);
  std::size_t rejected = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const VectorFn f = random_monotone(d, rng());
    std::vector<Index> rows(f.rows().begin(), f.rows().end());
    const std::size_t slot = rng() % rows.size();
    rows[slot] = static_cast<Index>(rng() % d[slot % 2].carrier_size());
    const VectorFn g = VectorFn::table_unchecked(d, rows);
    const bool monotone = check_monotone(g).monotone;
    bool accepted = true;
    try {
      parse_problem_text(table_text(g));
    } catch (const ProblemError& e) {
      accepted = false;
      EXPECT_NE(e.message().find("non-monotone table"), std::string::npos) << e.what();
    }
    EXPECT_EQ(accepted, monotone);
    if (!accepted) ++rejected;
  }
  EXPECT_GT(rejected, 0u);
}

TEST(ParseProblem, CorpusParses) {
  for (const char* name : {"swap", "identity", "three_cycle", "three_guarded", "three_mixed",
                           "constprop"}) {
    const ProblemFile p =
        parse_problem(std::string(MUFIX_PROBLEMS_DIR) + "/" + name + ".mufix");
    EXPECT_TRUE(p.description.has_value()) << name;
    EXPECT_TRUE(check_monotone(p.function.tabulate(), 1 << 16).monotone) << name;
  }
}

}  // namespace
}  // namespace mufix::cli
