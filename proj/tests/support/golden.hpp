#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace bgeom::oracle {

/// Oracle values written by tests/oracles/generate_golden.py.
inline const nlohmann::json& golden() {
  static const nlohmann::json doc = [] {
    std::ifstream f(BGEOM_GOLDEN_PATH);
    if (!f) throw std::runtime_error("cannot open " BGEOM_GOLDEN_PATH);
    return nlohmann::json::parse(f);
  }();
  return doc;
}

}  // namespace bgeom::oracle
