#pragma once

#include <fstream>
#include <sstream>
#include <string>

namespace hqc::testing {

inline std::string scenario_path(const std::string& name) {
  return std::string(HQC_SCENARIO_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hqc::testing
