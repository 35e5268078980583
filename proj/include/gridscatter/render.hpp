#pragma once

#include <optional>
#include <string>

#include "gridscatter/grid.hpp"

namespace gridscatter {

struct Viewport {
  Coord x_lo = 0;
  Coord x_hi = 0;
  Coord y_lo = 0;
  Coord y_hi = 0;
};

/// Character grid over the bounding box (or `viewport`): 'R' on robot
/// nodes, '.' elsewhere, northmost row first, each row prefixed with its y.
std::string render_ascii(const Configuration& c, std::optional<Viewport> viewport = std::nullopt);

}  // namespace gridscatter
