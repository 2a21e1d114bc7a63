#include "debcheck/version.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace debcheck {
namespace {

using enum VersionOrdering;

VersionOrdering flip(VersionOrdering o) {
  return o == Less ? Greater : o == Greater ? Less : Equal;
}

struct Case {
  const char* lhs;
  const char* rhs;
  VersionOrdering expected;
};

// Verdicts taken from dpkg --compare-versions.
const Case kDpkgCases[] = {
    {"1.2", "1.2", Equal},
    {"1.10-1", "1.2-1", Greater},
    {"1:0.9", "2.0", Greater},
    {"1.0~rc1", "1.0", Less},
    {"1.0", "1.00", Equal},
    {"0:1.0", "1.0", Equal},
    {"1.0-1", "1.0", Greater},
    {"1.0~", "1.0", Less},
    {"1.0~~", "1.0~", Less},
    {"1.0~~a", "1.0~~", Greater},
    {"1.0+b1", "1.0", Greater},
    {"1.0a", "1.0+", Less},
    {"2.0.2-2", "1.8.2", Greater},
    {"4.2", "1.8.2", Greater},
    {"1.0-1~bpo1", "1.0-1", Less},
    {"10:1", "9:2", Greater},
    {"1.0.0", "1.0", Greater},
    {"1-2-3", "1-2", Greater},
    {"1.a", "1.+", Less},
    {"0.r396-4", "0.r396-10", Less},
    {"1.5+svn242-1", "1.5-1", Greater},
};

TEST(CompareVersions, MatchesDpkgOnHandPickedPairs) {
  for (const Case& c : kDpkgCases) {
    EXPECT_EQ(compare_versions(c.lhs, c.rhs), c.expected) << c.lhs << " vs " << c.rhs;
    EXPECT_EQ(compare_versions(c.rhs, c.lhs), flip(c.expected)) << c.rhs << " vs " << c.lhs;
  }
}

TEST(CompareVersions, MatchesDpkgOnRandomPairs) {
  std::ifstream in(std::string(DEBCHECK_DATA_DIR) + "/dpkg_version_pairs.txt");
  ASSERT_TRUE(in);
  std::string line;
  int checked = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string lhs, rhs, verdict;
    fields >> lhs >> rhs >> verdict;
    const VersionOrdering expected = verdict == "LT" ? Less : verdict == "GT" ? Greater : Equal;
    EXPECT_EQ(compare_versions(lhs, rhs), expected) << line;
    ++checked;
  }
  EXPECT_GE(checked, 300);
}

TEST(CompareVersions, NonNumericEpochIsUpstreamText) {
  // "a:1" has no valid epoch, so the colon belongs to the upstream part.
  EXPECT_EQ(compare_versions("a:1", "a:1"), Equal);
  EXPECT_EQ(compare_versions("a:1", "a:2"), Less);
}

std::string random_version(std::mt19937_64& rng) {
  static const std::string alphabet = "0123456789ab.+~";
  std::uniform_int_distribution<int> len(1, 5);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string v;
  if (rng() % 4 == 0) v += std::to_string(rng() % 3) + ":";
  v += std::to_string(rng() % 10);
  for (int i = len(rng); i > 0; --i) v += alphabet[pick(rng)];
  if (rng() % 3 == 0) v += "-" + std::to_string(rng() % 5);
  return v;
}

TEST(CompareVersions, IsATotalOrder) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20000; ++i) {
    const std::string a = random_version(rng), b = random_version(rng), c = random_version(rng);
    ASSERT_EQ(compare_versions(a, a), Equal) << a;
    ASSERT_EQ(compare_versions(a, b), flip(compare_versions(b, a))) << a << " " << b;
    const auto ab = compare_versions(a, b), bc = compare_versions(b, c);
    if (ab != Greater && bc != Greater) {
      const auto expected = (ab == Equal && bc == Equal) ? Equal : Less;
      ASSERT_EQ(compare_versions(a, c), expected) << a << " " << b << " " << c;
    }
  }
}

} // namespace
} // namespace debcheck
