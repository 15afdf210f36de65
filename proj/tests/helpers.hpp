#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "glw/presentation.hpp"

namespace testing_helpers {

inline std::string fixture_path(const std::string& name) {
  return std::string(GLW_SOURCE_DIR) + "/fixtures/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fixture(const std::string& name) { return slurp(fixture_path(name)); }

inline glw::Category build_w5() { return glw::Category::build(glw::parse_category(fixture("w5.gcat"))); }

inline glw::Category build_dual() { return glw::Category::build(glw::parse_category(fixture("d.gcat"))); }

}  // namespace testing_helpers
