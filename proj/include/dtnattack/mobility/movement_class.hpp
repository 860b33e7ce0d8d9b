#pragma once

#include <string>

#include "dtnattack/map/city_map.hpp"

namespace dtn::mobility {

struct Range {
    double min = 0.0;
    double max = 0.0;
};

/// Speed in m/s, pause in s. The layer set is resolved from the map by
/// class name (see CityMap::layersFor).
struct MovementClass {
    std::string name;
    Range speed;
    Range pause;
    bool vehicle = false;

    /// Throws ValidationError unless 0 < speed.min <= speed.max and
    /// 0 <= pause.min <= pause.max.
    void validate() const;
};

// Urban defaults: pedestrians 0.5-1.5 m/s, boats 1.0-5.0 m/s,
// cars 2.7-13.9 m/s; everyone pauses 0-120 s at each destination.
MovementClass pedestrianClass();
MovementClass carClass();
MovementClass boatClass();

}  // namespace dtn::mobility
