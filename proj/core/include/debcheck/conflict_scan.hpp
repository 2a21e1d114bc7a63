#pragma once

// Static search for packages that may overwrite each other's files: pairs
// sharing a path, minus pairs that cannot be installed together anyway and
// pairs where one side declares Replaces on the other.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "debcheck/contents.hpp"
#include "debcheck/metadata.hpp"
#include "debcheck/repository.hpp"

namespace debcheck {

enum class ConflictStatus { NotCoinstallable, ExcusedByReplaces, Candidate };

std::string_view to_string(ConflictStatus status);  // "not_coinstallable", ...

struct ConflictCandidate {
  std::pair<std::string, std::string> pair;  // first < second
  std::vector<std::string> shared_paths;     // sorted, non-empty
  std::optional<ConflictStatus> status;

  bool operator==(const ConflictCandidate&) const = default;
  auto operator<=>(const ConflictCandidate&) const = default;
};

// One candidate per name pair owning a common path, sorted by pair.
std::vector<ConflictCandidate> shared_file_pairs(const ContentsIndex& index);

struct ClassifiedPairs {
  std::vector<ConflictCandidate> classified;  // sorted
  std::vector<ConflictCandidate> unknown;     // a name missing from the repository
  std::vector<std::string> warnings;
};

// Compares the highest version of each name. `stanzas` supply Replaces and
// must come from the same snapshot as `repo`.
ClassifiedPairs classify_pairs(std::span<const ConflictCandidate> candidates,
                               const Repository& repo, std::span<const PackageStanza> stanzas);

} // namespace debcheck
