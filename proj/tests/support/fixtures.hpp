#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "dtkg/graph.hpp"
#include "dtkg/turtle.hpp"

namespace dtkg::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(DTKG_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

inline Graph fixture_graph(const std::string& name) { return parse_graph(read_fixture(name)); }

inline Term t(const std::string& qname) { return Term::parse_qname(qname); }

}  // namespace dtkg::testing
