#include "debcheck/version.hpp"

#include <algorithm>

namespace debcheck {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

// Weight of one character in the non-digit run: '~' before end of string,
// end of string before letters, letters before everything else.
int order(std::string_view s, std::size_t i) {
  if (i >= s.size()) return 0;
  const char c = s[i];
  if (is_digit(c)) return 0;
  if (is_alpha(c)) return static_cast<unsigned char>(c);
  if (c == '~') return -1;
  return static_cast<unsigned char>(c) + 256;
}

int compare_fragment(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    while ((i < a.size() && !is_digit(a[i])) || (j < b.size() && !is_digit(b[j]))) {
      const int ac = order(a, i);
      const int bc = order(b, j);
      if (ac != bc) return ac - bc;
      ++i;
      ++j;
    }
    while (i < a.size() && a[i] == '0') ++i;
    while (j < b.size() && b[j] == '0') ++j;
    int first_diff = 0;
    while (i < a.size() && j < b.size() && is_digit(a[i]) && is_digit(b[j])) {
      if (first_diff == 0) first_diff = a[i] - b[j];
      ++i;
      ++j;
    }
    if (i < a.size() && is_digit(a[i])) return 1;
    if (j < b.size() && is_digit(b[j])) return -1;
    if (first_diff != 0) return first_diff;
  }
  return 0;
}

struct SplitVersion {
  std::string_view epoch;  // digits only, leading zeros stripped
  std::string_view upstream;
  std::string_view revision;
};

SplitVersion split(std::string_view v) {
  SplitVersion out;
  if (const auto colon = v.find(':'); colon != std::string_view::npos && colon > 0) {
    const auto head = v.substr(0, colon);
    if (std::all_of(head.begin(), head.end(), is_digit)) {
      out.epoch = head;
      v.remove_prefix(colon + 1);
    }
  }
  while (!out.epoch.empty() && out.epoch.front() == '0') out.epoch.remove_prefix(1);
  if (const auto dash = v.rfind('-'); dash != std::string_view::npos) {
    out.upstream = v.substr(0, dash);
    out.revision = v.substr(dash + 1);
  } else {
    out.upstream = v;
  }
  return out;
}

// Epochs may exceed any integer type; compare as digit strings.
int compare_epoch(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return a.compare(b);
}

VersionOrdering to_ordering(int c) {
  if (c < 0) return VersionOrdering::Less;
  if (c > 0) return VersionOrdering::Greater;
  return VersionOrdering::Equal;
}

} // namespace

VersionOrdering compare_versions(std::string_view lhs, std::string_view rhs) {
  const SplitVersion a = split(lhs);
  const SplitVersion b = split(rhs);
  if (int c = compare_epoch(a.epoch, b.epoch); c != 0) return to_ordering(c);
  if (int c = compare_fragment(a.upstream, b.upstream); c != 0) return to_ordering(c);
  return to_ordering(compare_fragment(a.revision, b.revision));
}

} // namespace debcheck
