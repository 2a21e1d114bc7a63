#include "debcheck/brute_force.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace debcheck {

bool brute_force_check(const Repository& repo, std::span<const PackageId> packages) {
  const std::size_t n = repo.size();
  if (n > kBruteForceLimit)
    throw std::length_error("brute force limited to " + std::to_string(kBruteForceLimit) +
                            " packages, got " + std::to_string(n));

  std::uint32_t required = 0;
  for (const PackageId& id : packages) {
    const auto idx = repo.find(id);
    if (!idx) throw RepositoryError(to_string(id) + " is not in the repository");
    required |= 1U << *idx;
  }

  // depends[p]: one mask per dependency; conflicts[p]: everything p conflicts with.
  std::vector<std::vector<std::uint32_t>> depends(n);
  std::vector<std::uint32_t> conflicts(n, 0);
  for (PackageIndex p = 0; p < n; ++p) {
    for (const Dependency& dep : repo.dependencies(p)) {
      std::uint32_t mask = 0;
      for (const PackageIndex q : dep.members) mask |= 1U << q;
      depends[p].push_back(mask);
    }
    for (const PackageIndex q : repo.conflicts_of(p)) conflicts[p] |= 1U << q;
  }

  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < limit; ++s) {
    const auto set = static_cast<std::uint32_t>(s);
    if ((set & required) != required) continue;
    bool healthy = true;
    for (PackageIndex p = 0; p < n && healthy; ++p) {
      if (!(set >> p & 1U)) continue;
      if (set & conflicts[p]) healthy = false;
      for (const std::uint32_t mask : depends[p])
        if (!(set & mask)) healthy = false;
    }
    if (healthy) return true;
  }
  return false;
}

} // namespace debcheck
