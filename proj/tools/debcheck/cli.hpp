#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "debcheck/checker.hpp"
#include "debcheck/weather.hpp"

namespace debcheck::cli {

enum class Filter { Failures, Successes, All };
enum class Format { Text, Json };

struct RunOptions {
  bool explain = false;
  Filter filter = Filter::Failures;
  Format format = Format::Text;
  std::vector<std::string> checks;  // "name" or "name=version"; empty: everything
  std::optional<std::string> input;  // nullopt: standard input
  std::optional<std::string> architecture;  // label stored in JSON reports
  std::optional<std::string> dump_dimacs;
  std::optional<std::string> dump_expanded;
  unsigned jobs = 1;
  bool timings = false;  // also put timings into the JSON report
};

struct Timings {
  double parse = 0;
  double encode = 0;
  double solve = 0;
};

struct RunReport {
  std::size_t total_packages = 0;
  std::size_t non_installable = 0;
  std::vector<std::pair<PackageId, CheckResult>> results;
  std::vector<std::optional<std::string>> architectures;  // parallel to results
  std::vector<std::string> warnings;
  std::vector<std::string> unknown;  // selectors that matched nothing
  Timings timings;
};

// Returns the exit status: 0 all selected packages installable, 1 some are
// not, 2 input error.
int run_debcheck(const RunOptions& options, std::istream& in, std::ostream& out,
                 std::ostream& err);

struct ConflictsOptions {
  std::string contents;
  std::string packages;
  Format format = Format::Text;
};
int run_conflicts(const ConflictsOptions& options, std::ostream& out, std::ostream& err);

struct AggregateOptions {
  std::vector<std::string> reports;
  Format format = Format::Text;
};
int run_aggregate(const AggregateOptions& options, std::ostream& out, std::ostream& err);

// Full command line, including subcommand dispatch.
int main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace debcheck::cli
