#pragma once

// Why a query is not installable, as dependency chains in the style of
//   camping (= 1.5+svn242-1) depends on rails {rails (= 2.0.2-2)}
//   ...
//   rdoc1.8 (= 1.8.7.22-1) depends on ruby1.8 (>= 1.8.7.22-1) {NOT AVAILABLE}
// where the curly brackets hold the versions that can satisfy the relation.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "debcheck/repository.hpp"

namespace debcheck {

struct ExplanationStep {
  PackageId package;
  std::string relation;              // dependency as written
  std::vector<PackageId> available;  // empty: nothing can satisfy it

  bool operator==(const ExplanationStep&) const = default;
};

// The last step's relation has no available version.
struct NotAvailable {
  bool operator==(const NotAvailable&) const = default;
};

// The chain reaches `package`, which conflicts with `other`.
struct ConflictsWith {
  PackageId package;
  PackageId other;
  bool operator==(const ConflictsWith&) const = default;
};

struct Chain {
  std::vector<ExplanationStep> steps;
  std::variant<NotAvailable, ConflictsWith> terminal;

  bool operator==(const Chain&) const = default;
};

struct Explanation {
  // The queried packages the chains start from.
  std::vector<PackageId> query;
  std::vector<Chain> chains;

  // Every package named anywhere in the explanation, sorted.
  std::vector<PackageId> packages() const;
};

// The repository made of exactly the packages, dependency steps and conflict
// pairs named by the explanation (plus the implicit same-name conflicts).
Repository explanation_repository(const Explanation& explanation);

void write_explanation(std::ostream& out, const Explanation& explanation,
                       const std::string& indent = "  ");
std::string to_string(const Chain& chain);

} // namespace debcheck
