#pragma once

#include <span>
#include <stdexcept>

#include "debcheck/repository.hpp"

namespace debcheck {

inline constexpr std::size_t kBruteForceLimit = 24;

// Whether some healthy installation contains every package of `packages`,
// found by enumerating all subsets of the repository. An independent check
// for the SAT path; shares no code with it.
// Throws std::length_error above kBruteForceLimit packages, and
// RepositoryError for packages outside the repository.
bool brute_force_check(const Repository& repo, std::span<const PackageId> packages);

} // namespace debcheck
