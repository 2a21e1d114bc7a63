#include "debcheck/repository.hpp"

#include <algorithm>
#include <ostream>

#include "debcheck/version.hpp"

namespace debcheck {

std::strong_ordering PackageId::operator<=>(const PackageId& other) const {
  if (auto c = name <=> other.name; c != 0) return c;
  switch (compare_versions(version, other.version)) {
    case VersionOrdering::Greater: return std::strong_ordering::less;
    case VersionOrdering::Less: return std::strong_ordering::greater;
    case VersionOrdering::Equal: break;
  }
  return version <=> other.version;
}

std::string to_string(const PackageId& id) { return id.name + " (= " + id.version + ")"; }

std::ostream& operator<<(std::ostream& out, const PackageId& id) { return out << to_string(id); }

std::size_t PackageIdHash::operator()(const PackageId& id) const noexcept {
  const std::size_t h = std::hash<std::string>{}(id.name);
  return h ^ (std::hash<std::string>{}(id.version) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::optional<PackageIndex> Repository::find(const PackageId& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const PackageIndex> Repository::versions_of(std::string_view name) const {
  const auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return {};
  return it->second;
}

bool Repository::in_conflict(PackageIndex a, PackageIndex b) const {
  const auto& adj = conflict_adj_[a];
  return std::binary_search(adj.begin(), adj.end(), b);
}

void RepositoryBuilder::add_package(PackageId id, bool is_virtual) {
  if (seen_.contains(id)) throw RepositoryError("duplicate package " + to_string(id));
  seen_.emplace(id, packages_.size());
  packages_.emplace_back(std::move(id), is_virtual);
}

void RepositoryBuilder::add_dependency(const PackageId& from, std::vector<PackageId> alternative,
                                       std::string source) {
  deps_.push_back({from, std::move(alternative), std::move(source)});
}

void RepositoryBuilder::add_conflict(PackageId a, PackageId b) {
  conflicts_.emplace_back(std::move(a), std::move(b));
}

Repository RepositoryBuilder::build() && {
  Repository repo;
  std::sort(packages_.begin(), packages_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  const std::size_t n = packages_.size();
  repo.packages_.reserve(n);
  repo.virtual_.reserve(n);
  for (auto& [id, is_virtual] : packages_) {
    const auto index = static_cast<PackageIndex>(repo.packages_.size());
    repo.index_.emplace(id, index);
    repo.by_name_[id.name].push_back(index);
    repo.packages_.push_back(std::move(id));
    repo.virtual_.push_back(is_virtual);
  }
  repo.deps_.resize(n);
  repo.conflict_adj_.resize(n);

  const auto source_index = [&](const PackageId& id) {
    const auto found = repo.find(id);
    if (!found) throw RepositoryError("relation declared by unknown package " + to_string(id));
    return *found;
  };

  for (PendingDependency& dep : deps_) {
    Dependency out;
    out.source = std::move(dep.source);
    for (const PackageId& member : dep.members)
      if (const auto idx = repo.find(member)) out.members.push_back(*idx);
    std::sort(out.members.begin(), out.members.end());
    out.members.erase(std::unique(out.members.begin(), out.members.end()), out.members.end());
    repo.deps_[source_index(dep.from)].push_back(std::move(out));
  }

  for (const auto& [a, b] : conflicts_) {
    const PackageIndex ia = source_index(a);
    const auto ib = repo.find(b);
    if (!ib || *ib == ia) continue;
    repo.conflicts_.emplace_back(std::min(ia, *ib), std::max(ia, *ib));
  }
  for (const auto& [name, versions] : repo.by_name_) {
    for (std::size_t i = 0; i < versions.size(); ++i)
      for (std::size_t j = i + 1; j < versions.size(); ++j)
        repo.conflicts_.emplace_back(versions[i], versions[j]);
  }
  std::sort(repo.conflicts_.begin(), repo.conflicts_.end());
  repo.conflicts_.erase(std::unique(repo.conflicts_.begin(), repo.conflicts_.end()),
                        repo.conflicts_.end());
  for (const auto& [a, b] : repo.conflicts_) {
    repo.conflict_adj_[a].push_back(b);
    repo.conflict_adj_[b].push_back(a);
  }
  for (auto& adj : repo.conflict_adj_) std::sort(adj.begin(), adj.end());
  return repo;
}

namespace {

PackageId exact_target(const ConstrainedRef& ref, const PackageStanza& owner) {
  if (!ref.constraint || ref.constraint->relation != Relation::Equal) {
    throw RepositoryError("unexpanded reference '" + render(ref) + "' in " + owner.name + " (= " +
                          owner.version + ")");
  }
  return {ref.name, ref.constraint->version};
}

} // namespace

Repository build_repository(std::span<const PackageStanza> stanzas) {
  RepositoryBuilder builder;
  for (const PackageStanza& st : stanzas) builder.add_package({st.name, st.version}, st.synthetic);
  for (const PackageStanza& st : stanzas) {
    const PackageId self{st.name, st.version};
    for (const Alternative& alt : st.depends.conjuncts) {
      std::vector<PackageId> members;
      members.reserve(alt.refs.size());
      for (const ConstrainedRef& ref : alt.refs) members.push_back(exact_target(ref, st));
      builder.add_dependency(self, std::move(members), alt.source.empty() ? render(alt) : alt.source);
    }
    for (const ConstrainedRef& ref : st.conflicts) builder.add_conflict(self, exact_target(ref, st));
  }
  return std::move(builder).build();
}

} // namespace debcheck
