#pragma once

#include <string>
#include <vector>

#include "lensgrid/grid.hpp"

namespace testsupport {

inline std::string data_path(const std::string& name) { return std::string(LENSGRID_DATA_DIR) + "/" + name; }

inline lensgrid::Diagram l52() { return lensgrid::read_diagram_file(data_path("l52.lg")); }

// The S^3 unknot on a 2x2 grid.
inline lensgrid::Diagram unknot2() { return lensgrid::Diagram{1, 0, 2, {{0, 0}, {1, 1}}, {{1, 0}, {0, 1}}}; }

}  // namespace testsupport
