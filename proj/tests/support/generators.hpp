#pragma once

// Random inputs shared by the property tests, the acceptance binary and the
// benchmarks.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "debcheck/metadata.hpp"
#include "debcheck/repository.hpp"

namespace debcheck::testing {

struct RandomRepoParams {
  unsigned max_packages = 12;
  unsigned max_versions = 3;
  unsigned max_dependencies = 3;
  unsigned max_alternatives = 3;
  double conflict_rate = 0.15;  // per ordered pair of packages
};

// Packages n0..nk, each with 1..max_versions versions, random dependencies
// (possibly empty alternatives) and conflicts, built through RepositoryBuilder.
Repository random_repository(std::mt19937_64& rng, const RandomRepoParams& params = {});

// Unexpanded stanzas with version constraints, Provides and Conflicts on
// real and virtual names. At most `max_stanzas` stanzas.
std::vector<PackageStanza> random_stanzas(std::mt19937_64& rng, unsigned max_stanzas = 10);

struct SyntheticParams {
  unsigned packages = 20000;
  double mean_dependencies = 4.0;
  double conflicts_per_package = 0.5;
  double disjunctive_share = 0.10;
  std::uint64_t seed = 9176;
};

// A distribution-shaped Packages file: dependencies point mostly at
// low-numbered, library-like packages; some names have two versions and some
// packages provide virtual names.
std::string synthetic_packages(const SyntheticParams& params = {});

} // namespace debcheck::testing
