#pragma once

// Installability as CNF: one variable per package (variable i is package i),
// "p -> (a1 | ... | ak)" as the clause (-p | a1 | ... | ak) for every
// dependency, and (-p | -q) for every conflict pair.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include "debcheck/repository.hpp"
#include "debcheck/sat_solver.hpp"

namespace debcheck {

struct DependencyEdge {
  PackageIndex from;
  std::uint32_t dependency;  // position in repo.dependencies(from)
  bool operator==(const DependencyEdge&) const = default;
};

struct ConflictEdge {
  PackageIndex first;
  PackageIndex second;
  bool operator==(const ConflictEdge&) const = default;
};

struct QueryAssumption {
  PackageIndex package;
  bool operator==(const QueryAssumption&) const = default;
};

using ClauseOrigin = std::variant<DependencyEdge, ConflictEdge, QueryAssumption>;

class ClauseSet {
public:
  std::size_t num_vars() const { return num_vars_; }
  std::size_t size() const { return origins_.size(); }

  static sat::Var var_of(PackageIndex package) { return package; }
  static PackageIndex package_of(sat::Var var) { return var; }

  std::span<const sat::Literal> clause(std::size_t i) const {
    return std::span(literals_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
  }
  const ClauseOrigin& origin(std::size_t i) const { return origins_[i]; }

private:
  friend ClauseSet encode(const Repository& repo);

  std::size_t num_vars_ = 0;
  std::vector<sat::Literal> literals_;
  std::vector<std::size_t> offsets_{0};
  std::vector<ClauseOrigin> origins_;
};

// Query assumptions are not part of the set; checks pass them to the solver.
ClauseSet encode(const Repository& repo);

// DIMACS CNF; a "c <var> <name> <version>" comment line per variable.
// Variables are numbered from 1.
void write_dimacs(std::ostream& out, const ClauseSet& clauses, const Repository& repo);

} // namespace debcheck
