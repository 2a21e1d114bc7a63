#include "debcheck/conflict_scan.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "debcheck/checker.hpp"

namespace debcheck {

std::string_view to_string(ConflictStatus status) {
  static constexpr std::array<std::string_view, 3> names = {"not_coinstallable",
                                                            "excused_by_replaces", "candidate"};
  return names[static_cast<std::size_t>(status)];
}

std::vector<ConflictCandidate> shared_file_pairs(const ContentsIndex& index) {
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> pairs;
  for (const auto& [path, owners] : index.entries) {
    for (auto a = owners.begin(); a != owners.end(); ++a)
      for (auto b = std::next(a); b != owners.end(); ++b) pairs[{*a, *b}].push_back(path);
  }
  std::vector<ConflictCandidate> out;
  out.reserve(pairs.size());
  for (auto& [pair, paths] : pairs) out.push_back({pair, std::move(paths), std::nullopt});
  return out;
}

ClassifiedPairs classify_pairs(std::span<const ConflictCandidate> candidates,
                               const Repository& repo, std::span<const PackageStanza> stanzas) {
  std::map<PackageId, const PackageStanza*> by_id;
  for (const PackageStanza& st : stanzas) by_id.emplace(PackageId{st.name, st.version}, &st);
  const auto replaces = [&](const PackageId& who, const std::string& other) {
    const auto it = by_id.find(who);
    if (it == by_id.end()) return false;
    const auto& r = it->second->replaces;
    return std::find(r.begin(), r.end(), other) != r.end();
  };

  ClassifiedPairs result;
  Checker checker(repo);
  for (ConflictCandidate cand : candidates) {
    if (cand.pair.first > cand.pair.second) std::swap(cand.pair.first, cand.pair.second);
    const auto a = repo.versions_of(cand.pair.first);
    const auto b = repo.versions_of(cand.pair.second);
    if (a.empty() || b.empty()) {
      const std::string& missing = a.empty() ? cand.pair.first : cand.pair.second;
      result.warnings.push_back(missing + " shares files but is not in the repository");
      cand.status.reset();
      result.unknown.push_back(std::move(cand));
      continue;
    }
    // versions_of lists the newest version first.
    const PackageIndex query[] = {a.front(), b.front()};
    if (!checker.check(query).installable()) {
      cand.status = ConflictStatus::NotCoinstallable;
    } else if (replaces(repo.package(query[0]), cand.pair.second) ||
               replaces(repo.package(query[1]), cand.pair.first)) {
      cand.status = ConflictStatus::ExcusedByReplaces;
    } else {
      cand.status = ConflictStatus::Candidate;
    }
    result.classified.push_back(std::move(cand));
  }
  std::sort(result.classified.begin(), result.classified.end());
  std::sort(result.unknown.begin(), result.unknown.end());
  std::sort(result.warnings.begin(), result.warnings.end());
  return result;
}

} // namespace debcheck
