#pragma once

#include <string>

#include "ufg/map_model.hpp"

namespace ufg {

/// Top-down SVG of a layout on the 512-unit canvas: streets gray, buildings
/// shaded by height, props as dots, spawns as A/B markers.
[[nodiscard]] std::string render_svg(const MapLayout& layout);

}  // namespace ufg
