#pragma once

// JSON bridges for the interchange documents (grid, metric report, weights).

#include <json.hpp>

#include "roadgen/grid.hpp"

namespace roadgen {

nlohmann::json grid_to_json(const Grid& g);
Grid grid_from_json(const nlohmann::json& doc);

}  // namespace roadgen
