#pragma once

// Frozen reference data shipped under tests/data.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace conical::testing {

inline std::string data_path(const std::string& name) { return std::string(CONICAL_TEST_DATA_DIR) + "/" + name; }

/// name -> value from derived_examples.txt
inline const std::map<std::string, double>& examples() {
  static const std::map<std::string, double> table = [] {
    std::map<std::string, double> t;
    std::ifstream in(data_path("derived_examples.txt"));
    if (!in) throw std::runtime_error("missing derived_examples.txt");
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream is(line);
      std::string name, value;
      is >> name >> value;
      t[name] = std::strtod(value.c_str(), nullptr);
    }
    return t;
  }();
  return table;
}

inline double known(const std::string& name) {
  const auto& t = examples();
  const auto it = t.find(name);
  if (it == t.end()) throw std::runtime_error("no reference value " + name);
  return it->second;
}

inline double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

}  // namespace conical::testing
