#pragma once

// Rewrites version-constrained and virtual references into disjunctions of
// exact (name, version) references, relative to the stanzas given. The result
// is only meaningful for that exact stanza set: adding or removing a version
// means expanding again from the parsed stanzas.

#include <span>
#include <string_view>
#include <vector>

#include "debcheck/metadata.hpp"
#include "debcheck/repository.hpp"

namespace debcheck {

// Version given to the stanzas synthesized for virtual packages.
inline constexpr std::string_view kVirtualVersion = "virtual";

// Each constrained ref becomes the exact refs of every available version that
// satisfies it, newest first. Unconstrained refs to real names become every
// available version. Unconstrained refs to provided names are left for
// expand_virtual_packages. Refs matching nothing are dropped, so a dependency
// alternative may end up empty (unsatisfiable).
std::vector<PackageStanza> expand_version_constraints(std::span<const PackageStanza> stanzas);

// Appends one synthetic stanza per purely virtual name, depending on the
// disjunction of its providers, and points unconstrained refs at it. A
// conflict on a virtual name becomes a conflict with each provider other than
// the declaring package. When a real package shares the provided name, refs
// to that name resolve to its versions plus the providers instead. Provides
// fields are dropped.
std::vector<PackageStanza> expand_virtual_packages(std::span<const PackageStanza> stanzas);

// expand_version_constraints followed by expand_virtual_packages.
std::vector<PackageStanza> expand(std::span<const PackageStanza> stanzas);

// Parsed stanzas straight to (P, D, C).
Repository repository_from_stanzas(std::span<const PackageStanza> stanzas);

} // namespace debcheck
