#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "debcheck/encoding.hpp"
#include "debcheck/explanation.hpp"
#include "debcheck/model.hpp"
#include "debcheck/repository.hpp"
#include "debcheck/sat_solver.hpp"

namespace debcheck {

struct Installable {
  // A healthy installation containing the query. check_all hands the same
  // witness to every package it contains.
  std::shared_ptr<const Installation> witness;
};

struct NotInstallable {
  Explanation explanation;
};

struct CheckResult {
  std::vector<PackageId> query;
  std::variant<Installable, NotInstallable> verdict;

  bool installable() const { return std::holds_alternative<Installable>(verdict); }
  const Installation& witness() const { return *std::get<Installable>(verdict).witness; }
  const Explanation& explanation() const { return std::get<NotInstallable>(verdict).explanation; }
};

class CheckError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Answers repeated (co-)installability queries against one repository. The
// clause set is encoded once; each query only adds assumptions, and clauses
// learned along the way are kept for later queries. Not thread-safe; use one
// Checker per thread over a shared ClauseSet.
class Checker {
public:
  explicit Checker(const Repository& repo);
  Checker(const Repository& repo, std::shared_ptr<const ClauseSet> clauses);

  // Throws CheckError on an empty query.
  CheckResult check(std::span<const PackageIndex> query);
  CheckResult check(PackageIndex package) { return check(std::span(&package, 1)); }

  // Packages of the witness found by the last satisfiable check.
  std::span<const PackageIndex> last_witness() const { return last_witness_; }

  const sat::SolverStats& stats() const { return solver_.stats(); }

private:
  Explanation explain(std::span<const PackageIndex> query);

  const Repository& repo_;
  std::shared_ptr<const ClauseSet> clauses_;
  sat::Solver solver_;
  std::vector<PackageIndex> last_witness_;
};

// Throws CheckError if the package is not in the repository.
CheckResult check_installable(const Repository& repo, const PackageId& package);

// Throws CheckError if the set is empty or names an unknown package.
CheckResult check_coinstallable(const Repository& repo, std::span<const PackageId> packages);

struct CheckAllOptions {
  // Worker threads; each owns a Checker and takes every jobs-th package.
  unsigned jobs = 1;
};

// One result per package, indexed by PackageIndex. Verdicts match
// check_installable; witnesses are shared between packages that one
// satisfying installation covers.
std::vector<CheckResult> check_all(const Repository& repo, const CheckAllOptions& options = {});

} // namespace debcheck
