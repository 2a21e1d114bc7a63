#pragma once

#include <set>
#include <utility>
#include <vector>

#include "debcheck/repository.hpp"

namespace debcheck {

// A set of packages assumed installed together.
struct Installation {
  std::set<PackageId> members;

  bool contains(const PackageId& id) const { return members.contains(id); }
  bool operator==(const Installation&) const = default;
};

struct AbundanceViolation {
  PackageId package;
  std::vector<PackageId> unmet;  // the alternative with no installed member
};

struct HealthReport {
  bool healthy = true;
  std::vector<AbundanceViolation> abundance_violations;
  std::vector<std::pair<PackageId, PackageId>> peace_violations;  // each pair once
};

// Lists every dependency left unmet and every conflicting pair inside the
// installation. Throws RepositoryError for members outside the repository.
HealthReport check_health(const Installation& installation, const Repository& repo);

struct TrimReport {
  bool trimmed = true;
  std::vector<PackageId> non_installable;
};

// Whether every package is installable. Synthesized virtual packages are
// skipped unless `include_virtual` is set.
TrimReport is_trimmed(const Repository& repo, bool include_virtual = false);

// The family R_n: a_i depends on the disjunction of every b_j with j != i, and
// the b's pairwise conflict. Any n-1 of the a's are co-installable, all n are
// not. For n = 1 the disjunction is empty, so a1 is not installable.
// Throws std::invalid_argument for n = 0.
Repository generate_rn(unsigned n);

} // namespace debcheck
