#pragma once

// Debian `Packages` stanzas and relation fields.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace debcheck {

enum class Relation { Less, LessEqual, Equal, GreaterEqual, Greater };

// "<<", "<=", "=", ">=", ">>"
std::string_view relation_token(Relation r);

struct VersionConstraint {
  Relation relation = Relation::Equal;
  std::string version;

  bool operator==(const VersionConstraint&) const = default;
};

// True when `version` satisfies the constraint under Debian version ordering.
bool satisfies(const VersionConstraint& constraint, std::string_view version);

struct ConstrainedRef {
  std::string name;
  std::optional<VersionConstraint> constraint;

  bool operator==(const ConstrainedRef&) const = default;

  static ConstrainedRef exact(std::string name, std::string version) {
    return {std::move(name), VersionConstraint{Relation::Equal, std::move(version)}};
  }
};

// One comma-separated conjunct of a dependency field: refs joined by '|'.
// `source` keeps the conjunct as originally written so that explanations can
// still name it after expansion has rewritten (or emptied) `refs`. It does
// not take part in equality.
struct Alternative {
  std::vector<ConstrainedRef> refs;
  std::string source;

  bool operator==(const Alternative& other) const { return refs == other.refs; }
};

struct DependencyExpression {
  std::vector<Alternative> conjuncts;

  bool empty() const { return conjuncts.empty(); }
  bool operator==(const DependencyExpression&) const = default;
};

struct PackageStanza {
  std::string name;
  std::string version;
  DependencyExpression depends;  // Depends followed by Pre-Depends
  std::vector<ConstrainedRef> conflicts;
  std::vector<std::string> provides;
  std::vector<std::string> replaces;
  std::optional<std::string> architecture;
  // Set on stanzas the expander invents for virtual packages.
  bool synthetic = false;
  // First line of the stanza in its source file; 0 when not parsed.
  std::size_t line = 0;
};

class DependencyParseError : public std::runtime_error {
public:
  DependencyParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}

  // Byte offset into the field value.
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

struct ParseDiagnostic {
  std::size_t line = 0;
  std::string message;
};

struct ParseResult {
  std::vector<PackageStanza> stanzas;
  std::vector<ParseDiagnostic> errors;
  std::vector<ParseDiagnostic> warnings;
};

// Comma-separated conjuncts of '|'-separated refs, each optionally followed
// by "(rel version)". Throws DependencyParseError.
DependencyExpression parse_dependency_field(std::string_view text);

// Comma-separated refs without alternatives (Conflicts, Replaces, ...).
// Throws DependencyParseError.
std::vector<ConstrainedRef> parse_ref_list(std::string_view text);

// Stanzas lacking Package or Version, or with an unparsable relation field,
// are reported in `errors` and skipped; the rest of the input is still read.
// A repeated (name, version) replaces the earlier stanza with a warning;
// Conflicts naming a package nobody defines or provides are warned about too.
ParseResult parse_packages(std::istream& in);
ParseResult parse_packages(std::string_view text);

std::string render(const ConstrainedRef& ref);
std::string render(const Alternative& alternative);
std::string render(const DependencyExpression& expression);

// Writes stanzas back in `Packages` syntax (Package, Version, Architecture,
// Depends, Conflicts, Provides, Replaces).
void write_packages(std::ostream& out, std::span<const PackageStanza> stanzas);

} // namespace debcheck
