#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mol/lang/lower.hpp"
#include "mol/slicing/pipeline.hpp"

namespace moltest {

inline std::string fixture_path(const std::string &name) { return std::string(MOL_FIXTURE_DIR) + "/" + name; }

inline std::string read_text(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string read_fixture(const std::string &name) { return read_text(fixture_path(name)); }

inline mol::lang::ProgramIR load_fixture(const std::string &name) { return mol::lang::compile(read_fixture(name)); }

inline mol::slicing::Analyses analyze_fixture(const std::string &name,
                                              mol::analysis::CallGraphMode mode = mol::analysis::CallGraphMode::PointsTo) {
  return mol::slicing::analyze(load_fixture(name), mode);
}

/// The four scenario fixtures followed by the property programs, as paths
/// relative to the fixture directory.
inline std::vector<std::string> corpus() {
  std::vector<std::string> out{"truck.mol", "dispatch.mol", "visitor.mol", "sideeffect.mol"};
  std::vector<std::string> props;
  for (const auto &e : std::filesystem::directory_iterator(fixture_path("props")))
    if (e.path().extension() == ".mol")
      props.push_back("props/" + e.path().filename().string());
  std::sort(props.begin(), props.end());
  out.insert(out.end(), props.begin(), props.end());
  return out;
}

} // namespace moltest
