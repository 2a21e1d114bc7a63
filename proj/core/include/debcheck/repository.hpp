#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "debcheck/metadata.hpp"

namespace debcheck {

// A package is a (name, version) pair. Two ids are equal iff both strings
// are equal. The ordering is by name, then by descending Debian version,
// then by version string, so that listings are reproducible.
struct PackageId {
  std::string name;
  std::string version;

  bool operator==(const PackageId&) const = default;
  std::strong_ordering operator<=>(const PackageId& other) const;
};

// "name (= version)"
std::string to_string(const PackageId& id);
std::ostream& operator<<(std::ostream& out, const PackageId& id);

struct PackageIdHash {
  std::size_t operator()(const PackageId& id) const noexcept;
};

using PackageIndex = std::uint32_t;

// One element of D(p): a set of alternatives, any of which satisfies it.
struct Dependency {
  std::vector<PackageIndex> members;  // sorted, may be empty
  std::string source;                 // relation text as written, for reports
};

class RepositoryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// The triple (P, D, C). Packages are stored in PackageId order and addressed
// by their position. C is symmetric and irreflexive; two versions of one name
// always conflict. Immutable once built.
class Repository {
public:
  Repository() = default;

  std::size_t size() const { return packages_.size(); }
  bool empty() const { return packages_.empty(); }

  std::span<const PackageId> packages() const { return packages_; }
  const PackageId& package(PackageIndex i) const { return packages_[i]; }
  std::optional<PackageIndex> find(const PackageId& id) const;
  // Indices of every version of `name`, in package order.
  std::span<const PackageIndex> versions_of(std::string_view name) const;

  std::span<const Dependency> dependencies(PackageIndex i) const { return deps_[i]; }
  // Unordered pairs stored as (low, high) index, sorted.
  std::span<const std::pair<PackageIndex, PackageIndex>> conflicts() const { return conflicts_; }
  std::span<const PackageIndex> conflicts_of(PackageIndex i) const { return conflict_adj_[i]; }
  bool in_conflict(PackageIndex a, PackageIndex b) const;

  bool is_virtual(PackageIndex i) const { return virtual_[i]; }

private:
  friend class RepositoryBuilder;

  std::vector<PackageId> packages_;
  std::vector<std::vector<Dependency>> deps_;
  std::vector<std::pair<PackageIndex, PackageIndex>> conflicts_;
  std::vector<std::vector<PackageIndex>> conflict_adj_;
  std::vector<bool> virtual_;
  std::unordered_map<PackageId, PackageIndex, PackageIdHash> index_;
  std::unordered_map<std::string, std::vector<PackageIndex>> by_name_;
};

// Collects (P, D, C) in any order. Dependencies and conflicts may name
// packages that are never added; such members are dropped at build time.
class RepositoryBuilder {
public:
  // Throws RepositoryError on a duplicate id.
  void add_package(PackageId id, bool is_virtual = false);
  void add_dependency(const PackageId& from, std::vector<PackageId> alternative,
                      std::string source = {});
  void add_conflict(PackageId a, PackageId b);

  // Throws RepositoryError if a dependency or conflict starts from a package
  // that was never added.
  Repository build() &&;

private:
  struct PendingDependency {
    PackageId from;
    std::vector<PackageId> members;
    std::string source;
  };
  std::vector<std::pair<PackageId, bool>> packages_;
  std::unordered_map<PackageId, std::size_t, PackageIdHash> seen_;
  std::vector<PendingDependency> deps_;
  std::vector<std::pair<PackageId, PackageId>> conflicts_;
};

// Builds the repository of a fully expanded stanza list: every relation ref
// must be an exact "(= version)" reference. Refs to versions that are not in
// the list are dropped, which can leave an alternative empty.
// Throws RepositoryError on duplicate ids or unexpanded refs.
Repository build_repository(std::span<const PackageStanza> stanzas);

} // namespace debcheck
