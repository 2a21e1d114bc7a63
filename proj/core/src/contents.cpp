#include "debcheck/contents.hpp"

#include <istream>
#include <sstream>

#include "text.hpp"

namespace debcheck {

namespace {

bool is_header(std::string_view line) {
  std::istringstream words{std::string(line)};
  std::string a, b, rest;
  return (words >> a >> b) && !(words >> rest) && a == "FILE" && b == "LOCATION";
}

std::string_view strip_section(std::string_view qualified) {
  const auto slash = qualified.rfind('/');
  return slash == std::string_view::npos ? qualified : qualified.substr(slash + 1);
}

} // namespace

ContentsIndex parse_contents(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_contents(buffer.str());
}

ContentsIndex parse_contents(std::string_view raw) {
  ContentsIndex index;
  const std::string text = text::sanitize_utf8(raw);
  const std::vector<std::string_view> lines = text::split_lines(text);

  std::size_t start = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_header(lines[i])) {
      start = i + 1;
      break;
    }
  }

  for (std::size_t i = start; i < lines.size(); ++i) {
    const std::string_view line = text::trim(lines[i]);
    if (line.empty()) continue;
    // Paths may contain spaces; the owners are the last field.
    const auto sep = line.find_last_of(" \t");
    if (sep == std::string_view::npos) {
      index.warnings.push_back({i + 1, "no package list: '" + std::string(line) + "'"});
      continue;
    }
    std::string_view path = text::trim(line.substr(0, sep));
    while (!path.empty() && path.front() == '/') path.remove_prefix(1);
    std::string_view owners = line.substr(sep + 1);

    std::set<std::string> names;
    while (!owners.empty()) {
      const auto comma = owners.find(',');
      const std::string_view item = text::trim(owners.substr(0, comma));
      if (const auto name = strip_section(item); !name.empty()) names.emplace(name);
      if (comma == std::string_view::npos) break;
      owners.remove_prefix(comma + 1);
    }
    if (path.empty() || names.empty()) {
      index.warnings.push_back({i + 1, "malformed entry: '" + std::string(line) + "'"});
      continue;
    }
    index.entries[std::string(path)].merge(names);
  }
  return index;
}

} // namespace debcheck
