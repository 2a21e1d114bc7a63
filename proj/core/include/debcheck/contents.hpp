#pragma once

// The distribution Contents index: which packages ship each file.
//   bin/fgconsole          utils/console-tools,utils/kbd

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "debcheck/metadata.hpp"

namespace debcheck {

struct ContentsIndex {
  // Path without leading slash -> owning package names, never empty.
  std::map<std::string, std::set<std::string>> entries;
  std::vector<ParseDiagnostic> warnings;
};

// A free-text preamble is skipped when the table is introduced by a
// "FILE  LOCATION" header line. Section prefixes are dropped from package
// names. Lines without a whitespace separator are skipped with a warning.
ContentsIndex parse_contents(std::istream& in);
ContentsIndex parse_contents(std::string_view text);

} // namespace debcheck
