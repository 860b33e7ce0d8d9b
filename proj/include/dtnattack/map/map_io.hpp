#pragma once

#include <string>
#include <string_view>

#include "dtnattack/map/city_map.hpp"

namespace dtn::map {

/// Parses a map document:
///
///     MAP <name> <width> <height>
///     SPECIAL_WEIGHT <w>                  (optional, default 1)
///     LAYER <id> <movement-class,...>
///     P <id> <x> <y> [SPECIAL]
///     S <id1> <id2>
///
/// `P` and `S` lines belong to the most recent `LAYER`. A point may be
/// re-declared in several layers with identical coordinates. `#` starts a
/// comment. Throws ParseError (with line number) or ValidationError.
CityMap loadMap(std::string_view document);
CityMap loadMapFile(const std::string& path);

/// Inverse of loadMap. Points are emitted per layer in id order.
std::string saveMap(const CityMap& map);

}  // namespace dtn::map
