#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace debcheck::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(DEBCHECK_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

} // namespace debcheck::testing
