#pragma once

#include <string>

#include "semisens/config.hpp"

namespace semisens::test {

inline ExperimentConfig builtin(const std::string& name) { return parse_config(*builtin_config(name), name + ".cfg"); }

inline SystemSpec system_of(const std::string& config, const std::string& name) {
  return builtin(config).system(name);
}

inline SystemSpec inline_system(const std::string& body) {
  return parse_config("[system s]\n" + body).system("s");
}

/// The rotation literal shipped with the configs, "rot(...)".
inline std::string alpha_map() { return system_of("rotation", "rotation").maps[0][0]; }

/// Same, without the "rot(" ... ")" wrapper.
inline std::string alpha() {
  const std::string m = alpha_map();
  return m.substr(4, m.size() - 5);
}

inline std::vector<std::int64_t> firsts(const std::vector<Element>& es) {
  std::vector<std::int64_t> out;
  for (const Element& e : es) out.push_back(e[0]);
  return out;
}

}  // namespace semisens::test
