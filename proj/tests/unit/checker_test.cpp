#include "debcheck/checker.hpp"

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "debcheck/brute_force.hpp"
#include "debcheck/encoding.hpp"
#include "debcheck/expander.hpp"
#include "explanation_check.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

namespace debcheck {
namespace {

Repository from_fixture(const std::string& name) {
  return repository_from_stanzas(parse_packages(testing::read_fixture(name)).stanzas);
}

std::vector<std::string> chain_names(const Chain& chain) {
  std::vector<std::string> names;
  for (const ExplanationStep& s : chain.steps) names.push_back(s.package.name);
  return names;
}

TEST(Encode, ClauseShapes) {
  RepositoryBuilder b;
  for (const char* n : {"p", "a", "b", "c", "d", "e", "f"}) b.add_package({n, "1"});
  const auto id = [](const char* n) { return PackageId{n, "1"}; };
  b.add_dependency(id("p"), {id("a")});
  b.add_dependency(id("p"), {id("b")});
  b.add_dependency(id("p"), {id("c"), id("d")});
  b.add_dependency(id("p"), {id("e"), id("f")});
  b.add_conflict(id("a"), id("b"));
  const Repository repo = std::move(b).build();
  const ClauseSet cs = encode(repo);
  ASSERT_EQ(cs.num_vars(), repo.size());
  ASSERT_EQ(cs.size(), 5U);
  const auto p = *repo.find(id("p"));
  std::size_t deps = 0, conflicts = 0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto clause = cs.clause(i);
    const auto negatives = std::count_if(clause.begin(), clause.end(),
                                         [](sat::Literal l) { return l.is_negative(); });
    if (const auto* d = std::get_if<DependencyEdge>(&cs.origin(i))) {
      ++deps;
      EXPECT_EQ(d->from, p);
      EXPECT_EQ(negatives, 1);
      EXPECT_EQ(clause[0], sat::Literal::negative(p));
      EXPECT_EQ(clause.size(), 1 + repo.dependencies(p)[d->dependency].members.size());
    } else {
      ++conflicts;
      EXPECT_EQ(clause.size(), 2U);
      EXPECT_EQ(negatives, 2);
    }
  }
  EXPECT_EQ(deps, 4U);
  EXPECT_EQ(conflicts, 1U);
  EXPECT_EQ(encode(Repository{}).size(), 0U);
}

TEST(WriteDimacs, HeaderAndMapping) {
  const Repository repo = generate_rn(2);
  std::ostringstream out;
  write_dimacs(out, encode(repo), repo);
  const std::string text = out.str();
  EXPECT_NE(text.find("c 1 a1 1\n"), std::string::npos);
  EXPECT_NE(text.find("p cnf 4 3\n"), std::string::npos);
}

TEST(CheckInstallable, VersionedExample) {
  const Repository repo = from_fixture("versioned_example.packages");
  const CheckResult r = check_installable(repo, {"a", "1"});
  ASSERT_TRUE(r.installable());
  EXPECT_TRUE(r.witness().contains({"a", "1"}));
  EXPECT_TRUE(check_health(r.witness(), repo).healthy);
  const PackageId a{"a", "1"};
  EXPECT_TRUE(brute_force_check(repo, std::span(&a, 1)));
  EXPECT_THROW(check_installable(repo, {"a", "2"}), CheckError);
}

TEST(CheckInstallable, EmptyAlternative) {
  RepositoryBuilder b;
  b.add_package({"p", "1"});
  b.add_dependency({"p", "1"}, {}, "q (>= 2)");
  const Repository repo = std::move(b).build();
  const CheckResult r = check_installable(repo, {"p", "1"});
  ASSERT_FALSE(r.installable());
  ASSERT_EQ(r.explanation().chains.size(), 1U);
  const Chain& c = r.explanation().chains[0];
  EXPECT_TRUE(std::holds_alternative<NotAvailable>(c.terminal));
  EXPECT_EQ(to_string(c), "p (= 1) depends on q (>= 2) {NOT AVAILABLE}\n");
}

TEST(CheckInstallable, CampingChain) {
  const Repository repo = from_fixture("camping.packages");
  const CheckResult r = check_installable(repo, {"camping", "1.5+svn242-1"});
  ASSERT_FALSE(r.installable());
  ASSERT_EQ(r.explanation().chains.size(), 1U);
  const Chain& c = r.explanation().chains[0];
  EXPECT_EQ(chain_names(c), (std::vector<std::string>{"camping", "rails", "rdoc", "rdoc1.8"}));
  EXPECT_TRUE(std::holds_alternative<NotAvailable>(c.terminal));
  EXPECT_EQ(c.steps[1].relation, "rdoc (>> 1.8.2)");
  EXPECT_EQ(c.steps[3].relation, "ruby1.8 (>= 1.8.7.22-1)");
  EXPECT_EQ(testing::explanation_problem(repo, r), "");
}

TEST(CheckInstallable, BrokenDependencyBreaksDependents) {
  // b's only dependency is missing and a depends on b.
  const Repository repo = repository_from_stanzas(
      parse_packages("Package: a\nVersion: 1\nDepends: b\n\nPackage: b\nVersion: 1\nDepends: gone\n")
          .stanzas);
  const CheckResult b = check_installable(repo, {"b", "1"});
  const CheckResult a = check_installable(repo, {"a", "1"});
  ASSERT_FALSE(a.installable());
  ASSERT_FALSE(b.installable());
  EXPECT_EQ(chain_names(a.explanation().chains[0]), (std::vector<std::string>{"a", "b"}));
}

TEST(CheckInstallable, ConflictExplanation) {
  const Repository repo = repository_from_stanzas(
      parse_packages("Package: a\nVersion: 1\nDepends: x, y\n\n"
                     "Package: x\nVersion: 1\nConflicts: y\n\nPackage: y\nVersion: 1\n")
          .stanzas);
  const CheckResult r = check_installable(repo, {"a", "1"});
  ASSERT_FALSE(r.installable());
  EXPECT_EQ(testing::explanation_problem(repo, r), "");
  std::ostringstream out;
  write_explanation(out, r.explanation());
  EXPECT_NE(out.str().find("x (= 1) conflicts with y (= 1)"), std::string::npos) << out.str();
}

TEST(CheckCoinstallable, RnExamples) {
  const Repository r3 = generate_rn(3);
  const std::vector<PackageId> two = {{"a1", "1"}, {"a2", "1"}};
  const CheckResult ok = check_coinstallable(r3, two);
  ASSERT_TRUE(ok.installable());
  EXPECT_TRUE(ok.witness().contains({"b3", "1"}));

  const std::vector<PackageId> three = {{"a1", "1"}, {"a2", "1"}, {"a3", "1"}};
  const CheckResult bad = check_coinstallable(r3, three);
  ASSERT_FALSE(bad.installable());
  EXPECT_EQ(testing::explanation_problem(r3, bad), "");

  EXPECT_THROW(check_coinstallable(r3, std::vector<PackageId>{}), CheckError);
}

TEST(CheckCoinstallable, SingletonMatchesInstallable) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const Repository repo = testing::random_repository(rng);
    for (const PackageId& id : repo.packages()) {
      ASSERT_EQ(check_coinstallable(repo, std::span(&id, 1)).installable(),
                check_installable(repo, id).installable());
    }
  }
}

TEST(CheckAll, Examples) {
  const Repository versioned = from_fixture("versioned_example.packages");
  for (const CheckResult& r : check_all(versioned)) EXPECT_TRUE(r.installable());
  const Repository virtual_ex = from_fixture("virtual_example.packages");
  const auto results = check_all(virtual_ex);
  ASSERT_EQ(results.size(), 6U);
  for (const CheckResult& r : results) EXPECT_TRUE(r.installable()) << to_string(r.query[0]);
}

TEST(CheckAll, AgreesWithFreshSolvesAndBruteForce) {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 400; ++round) {
    const Repository repo = testing::random_repository(rng);
    const auto shared = check_all(repo);
    const auto parallel = check_all(repo, {3});
    ASSERT_EQ(shared.size(), repo.size());
    for (PackageIndex p = 0; p < repo.size(); ++p) {
      const PackageId& id = repo.package(p);
      const bool expected = brute_force_check(repo, std::span(&id, 1));
      ASSERT_EQ(shared[p].query, std::vector<PackageId>{id});
      ASSERT_EQ(shared[p].installable(), expected);
      ASSERT_EQ(parallel[p].installable(), expected);
      ASSERT_EQ(check_installable(repo, id).installable(), expected);
      if (expected) {
        ASSERT_TRUE(shared[p].witness().contains(id));
        ASSERT_TRUE(check_health(shared[p].witness(), repo).healthy);
      } else {
        ASSERT_EQ(testing::explanation_problem(repo, shared[p]), "") << round;
      }
    }
  }
}

TEST(CheckAll, JobsDoNotChangeResults) {
  const Repository repo = repository_from_stanzas(
      parse_packages(testing::synthetic_packages({.packages = 2000, .seed = 4})).stanzas);
  const auto one = check_all(repo, {1});
  const auto four = check_all(repo, {4});
  const auto four_again = check_all(repo, {4});
  for (PackageIndex p = 0; p < repo.size(); ++p) {
    ASSERT_EQ(one[p].installable(), four[p].installable());
    if (four[p].installable()) {
      ASSERT_EQ(four[p].witness(), four_again[p].witness());
    } else {
      ASSERT_EQ(four[p].explanation().chains, four_again[p].explanation().chains);
    }
  }
}

TEST(Checker, DeterministicAcrossRuns) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 100; ++round) {
    const Repository repo = testing::random_repository(rng);
    const auto first = check_all(repo);
    const auto second = check_all(repo);
    for (PackageIndex p = 0; p < repo.size(); ++p) {
      ASSERT_EQ(first[p].installable(), second[p].installable());
      if (first[p].installable()) ASSERT_EQ(first[p].witness(), second[p].witness());
      else ASSERT_EQ(first[p].explanation().chains, second[p].explanation().chains);
    }
  }
}

TEST(Checker, CoinstallabilityAgreesWithBruteForce) {
  std::mt19937_64 rng(41);
  int unsat = 0;
  for (int round = 0; round < 600; ++round) {
    const Repository repo = testing::random_repository(rng);
    Checker checker(repo);
    for (int q = 0; q < 4; ++q) {
      std::vector<PackageIndex> query;
      std::vector<PackageId> ids;
      for (std::size_t k = 2 + rng() % 2; k > 0; --k) {
        const auto p = static_cast<PackageIndex>(rng() % repo.size());
        if (std::find(query.begin(), query.end(), p) != query.end()) continue;
        query.push_back(p);
        ids.push_back(repo.package(p));
      }
      const CheckResult r = checker.check(query);
      ASSERT_EQ(r.installable(), brute_force_check(repo, ids));
      if (r.installable()) {
        for (const PackageId& id : ids) ASSERT_TRUE(r.witness().contains(id));
        ASSERT_TRUE(check_health(r.witness(), repo).healthy);
      } else {
        ++unsat;
        ASSERT_EQ(testing::explanation_problem(repo, r), "");
      }
    }
  }
  EXPECT_GT(unsat, 50);
}

TEST(BruteForce, Limits) {
  const Repository r4 = generate_rn(4);
  const std::vector<PackageId> all = {{"a1", "1"}, {"a2", "1"}, {"a3", "1"}, {"a4", "1"}};
  EXPECT_FALSE(brute_force_check(r4, all));
  EXPECT_TRUE(brute_force_check(r4, std::vector<PackageId>{}));
  EXPECT_THROW(brute_force_check(generate_rn(13), std::vector<PackageId>{}), std::length_error);
}

} // namespace
} // namespace debcheck
