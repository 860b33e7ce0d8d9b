#pragma once

#include <string>
#include <vector>

#include "dtnattack/map/city_map.hpp"

namespace dtn::map {

struct GridCityLayers {
    /// Vehicle class allowed on the street lattice ("car" or "boat").
    std::string vehicleClass = "car";
    /// When false the map has a single "streets" layer shared by pedestrians
    /// and vehicles. When true, streets are vehicle-only and pedestrians get a
    /// "walkways" layer holding every street segment plus park diagonals.
    bool walkways = false;
    /// A diagonal is added to lattice cell (r, c) when (r + c) % stride == 0.
    int diagonalStride = 3;
    /// Point ids flagged SPECIAL, and the map-wide special weight.
    std::vector<PointId> specialPoints;
    double specialWeight = 1.0;
};

/// n x n street lattice with the given spacing; point (r, c) has id r*n + c
/// and sits at (c*spacing, r*spacing). Output is a pure function of inputs.
CityMap generateGridCity(int n, double spacing, const GridCityLayers& layers = {});

}  // namespace dtn::map
