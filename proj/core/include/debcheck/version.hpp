#pragma once

#include <string_view>

namespace debcheck {

enum class VersionOrdering { Less, Equal, Greater };

// Debian policy ordering: epoch, then upstream version, then revision.
// Non-numeric epochs are compared as upstream text. Never fails.
VersionOrdering compare_versions(std::string_view lhs, std::string_view rhs);

inline bool version_less(std::string_view lhs, std::string_view rhs) {
  return compare_versions(lhs, rhs) == VersionOrdering::Less;
}

} // namespace debcheck
