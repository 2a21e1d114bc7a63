#include "debcheck/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "debcheck/checker.hpp"

namespace debcheck {

HealthReport check_health(const Installation& installation, const Repository& repo) {
  std::vector<PackageIndex> members;
  members.reserve(installation.members.size());
  for (const PackageId& id : installation.members) {
    const auto idx = repo.find(id);
    if (!idx) throw RepositoryError(to_string(id) + " is not in the repository");
    members.push_back(*idx);
  }
  std::vector<bool> installed(repo.size(), false);
  for (const PackageIndex i : members) installed[i] = true;

  HealthReport report;
  std::sort(members.begin(), members.end());
  for (const PackageIndex p : members) {
    for (const Dependency& dep : repo.dependencies(p)) {
      const bool met = std::any_of(dep.members.begin(), dep.members.end(),
                                   [&](PackageIndex q) { return installed[q]; });
      if (met) continue;
      AbundanceViolation v{repo.package(p), {}};
      for (const PackageIndex q : dep.members) v.unmet.push_back(repo.package(q));
      report.abundance_violations.push_back(std::move(v));
    }
    for (const PackageIndex q : repo.conflicts_of(p))
      if (q > p && installed[q])
        report.peace_violations.emplace_back(repo.package(p), repo.package(q));
  }
  report.healthy = report.abundance_violations.empty() && report.peace_violations.empty();
  return report;
}

TrimReport is_trimmed(const Repository& repo, bool include_virtual) {
  TrimReport report;
  const std::vector<CheckResult> results = check_all(repo);
  for (PackageIndex p = 0; p < repo.size(); ++p) {
    if (repo.is_virtual(p) && !include_virtual) continue;
    if (!results[p].installable()) report.non_installable.push_back(repo.package(p));
  }
  report.trimmed = report.non_installable.empty();
  return report;
}

Repository generate_rn(unsigned n) {
  if (n == 0) throw std::invalid_argument("generate_rn: n must be at least 1");
  const auto a = [](unsigned i) { return PackageId{"a" + std::to_string(i), "1"}; };
  const auto b = [](unsigned i) { return PackageId{"b" + std::to_string(i), "1"}; };
  RepositoryBuilder builder;
  for (unsigned i = 1; i <= n; ++i) {
    builder.add_package(a(i));
    builder.add_package(b(i));
  }
  for (unsigned i = 1; i <= n; ++i) {
    std::vector<PackageId> others;
    std::string source;
    for (unsigned j = 1; j <= n; ++j) {
      if (j == i) continue;
      others.push_back(b(j));
      source += (source.empty() ? "" : " | ") + b(j).name;
    }
    builder.add_dependency(a(i), std::move(others), std::move(source));
    for (unsigned j = i + 1; j <= n; ++j) builder.add_conflict(b(i), b(j));
  }
  return std::move(builder).build();
}

} // namespace debcheck
