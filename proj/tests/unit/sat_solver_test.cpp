#include "debcheck/sat_solver.hpp"

#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

namespace debcheck::sat {
namespace {

using Clause = std::vector<Literal>;

Literal pos(Var v) { return Literal::positive(v); }
Literal neg(Var v) { return Literal::negative(v); }

bool satisfied_by(const std::vector<Clause>& clauses, std::uint32_t assignment) {
  for (const Clause& c : clauses) {
    bool sat = false;
    for (const Literal l : c) sat = sat || (((assignment >> l.var()) & 1U) != 0) != l.is_negative();
    if (!sat) return false;
  }
  return true;
}

// Exhaustive satisfiability under assumptions; n <= 16.
bool enumerate(const std::vector<Clause>& clauses, std::size_t n, std::span<const Literal> assumptions) {
  for (std::uint32_t a = 0; a < (1U << n); ++a) {
    bool ok = true;
    for (const Literal l : assumptions) ok = ok && (((a >> l.var()) & 1U) != 0) != l.is_negative();
    if (ok && satisfied_by(clauses, a)) return true;
  }
  return false;
}

std::vector<Clause> random_cnf(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::vector<Clause> clauses;
  for (std::size_t i = 0; i < m; ++i) {
    Clause c;
    const std::size_t width = 1 + rng() % 3;
    for (std::size_t k = 0; k < width; ++k) c.push_back(Literal(static_cast<Var>(rng() % n), rng() % 2 == 0));
    clauses.push_back(c);
  }
  return clauses;
}

TEST(Solver, Basics) {
  Solver s(3);
  s.add_clause(Clause{neg(0), pos(1)});
  s.add_clause(Clause{neg(1), pos(2)});
  const Literal a0[] = {pos(0)};
  ASSERT_TRUE(s.solve(a0));
  EXPECT_TRUE(s.model_value(2));
  s.add_clause(Clause{neg(2)});
  EXPECT_FALSE(s.solve(a0));
  EXPECT_EQ(s.failed_assumptions(), Clause{pos(0)});
  EXPECT_EQ(s.core(), (std::vector<ClauseId>{0, 1, 2}));
  EXPECT_TRUE(s.solve());
  EXPECT_TRUE(s.okay());
}

TEST(Solver, EmptyClauseMakesEverythingUnsat) {
  Solver s(1);
  s.add_clause(Clause{});
  EXPECT_FALSE(s.okay());
  EXPECT_FALSE(s.solve());
  EXPECT_EQ(s.core(), std::vector<ClauseId>{0});
}

TEST(Solver, UnassumedVariablesDefaultToFalse) {
  Solver s(4);
  s.add_clause(Clause{neg(0), pos(1), pos(2)});
  ASSERT_TRUE(s.solve());
  EXPECT_TRUE(s.true_vars().empty());
}

// x is falsified while p still looks irrelevant; the implication -p must
// come back once the chain q -> r -> s makes p matter.
TEST(Solver, LateRelevanceStillPropagates) {
  const Var q = 0, x = 1, p = 2, r = 3, t = 4;
  const std::vector<Clause> clauses = {
      {neg(q), neg(x)}, {neg(p), pos(x)}, {neg(q), pos(r)}, {neg(r), pos(t)}, {neg(t), pos(p)}};
  Solver s(5);
  for (const Clause& c : clauses) s.add_clause(c);
  const Literal assume[] = {pos(q)};
  EXPECT_FALSE(s.solve(assume));
  EXPECT_EQ(s.core(), (std::vector<ClauseId>{0, 1, 2, 3, 4}));
  EXPECT_TRUE(s.solve());
  EXPECT_FALSE(s.solve(assume));
  EXPECT_EQ(enumerate(clauses, 5, assume), false);
}

TEST(Solver, AgreesWithEnumeration) {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 3000; ++round) {
    const std::size_t n = 1 + rng() % 10;
    const auto clauses = random_cnf(rng, n, rng() % (4 * n + 1));
    Solver s(n);
    for (const Clause& c : clauses) s.add_clause(c);
    // Several queries against the same solver, so learned clauses carry over.
    for (int q = 0; q < 6; ++q) {
      Clause assumptions;
      for (std::size_t k = rng() % 4; k > 0; --k) assumptions.push_back(Literal(static_cast<Var>(rng() % n), rng() % 2 == 0));
      const bool expected = enumerate(clauses, n, assumptions);
      ASSERT_EQ(s.solve(assumptions), expected) << "round " << round;
      if (expected) {
        std::uint32_t model = 0;
        for (Var v = 0; v < n; ++v) model |= (s.model_value(v) ? 1U : 0U) << v;
        ASSERT_TRUE(satisfied_by(clauses, model));
        for (const Literal l : assumptions) ASSERT_NE(s.model_value(l.var()), l.is_negative());
      } else {
        // The core with the failed assumptions is unsatisfiable on its own.
        std::vector<Clause> core;
        for (const ClauseId id : s.core()) {
          ASSERT_TRUE(s.is_original(id));
          core.push_back(clauses[id]);
        }
        const auto& failed = s.failed_assumptions();
        for (const Literal l : failed)
          ASSERT_NE(std::find(assumptions.begin(), assumptions.end(), l), assumptions.end());
        ASSERT_FALSE(enumerate(core, n, failed));
      }
    }
  }
}

TEST(Solver, IsDeterministic) {
  std::mt19937_64 rng(5);
  const auto clauses = random_cnf(rng, 14, 40);
  std::vector<std::vector<Var>> models;
  for (int run = 0; run < 3; ++run) {
    Solver s(14);
    for (const Clause& c : clauses) s.add_clause(c);
    const Literal a[] = {pos(3)};
    if (s.solve(a)) models.push_back(s.true_vars());
    else models.push_back({});
  }
  EXPECT_EQ(models[0], models[1]);
  EXPECT_EQ(models[1], models[2]);
}

TEST(Solver, PigeonholeNeedsLearning) {
  // Seven pigeons, six holes.
  const Var pigeons = 7, holes = 6;
  Solver s(pigeons * holes);
  const auto x = [&](Var p, Var h) { return p * holes + h; };
  for (Var p = 0; p < pigeons; ++p) {
    Clause c;
    for (Var h = 0; h < holes; ++h) c.push_back(pos(x(p, h)));
    s.add_clause(c);
  }
  for (Var h = 0; h < holes; ++h)
    for (Var p = 0; p < pigeons; ++p)
      for (Var q = p + 1; q < pigeons; ++q) s.add_clause(Clause{neg(x(p, h)), neg(x(q, h))});
  EXPECT_FALSE(s.solve());
  EXPECT_GT(s.stats().conflicts, 0U);
}

} // namespace
} // namespace debcheck::sat
