#include "dtnattack/map/grid_city.hpp"

#include <algorithm>

#include "dtnattack/common/error.hpp"

namespace dtn::map {

CityMap generateGridCity(int n, double spacing, const GridCityLayers& spec) {
    if (n < 2) throw ValidationError("grid city needs n >= 2");
    if (!(spacing > 0.0)) throw ValidationError("grid city needs spacing > 0");
    if (spec.walkways && spec.diagonalStride < 1) throw ValidationError("diagonal stride must be >= 1");

    auto id = [n](int r, int c) { return static_cast<PointId>(r) * n + c; };

    std::vector<Segment> lattice;
    lattice.reserve(static_cast<std::size_t>(2 * n * (n - 1)));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (c + 1 < n) lattice.push_back({id(r, c), id(r, c + 1), 0.0});
            if (r + 1 < n) lattice.push_back({id(r, c), id(r + 1, c), 0.0});
        }
    }

    std::vector<MapLayer> layers;
    LayerSet pointLayers;
    if (spec.walkways) {
        layers.push_back({"streets", lattice, {spec.vehicleClass}});
        std::vector<Segment> walk = lattice;
        for (int r = 0; r + 1 < n; ++r)
            for (int c = 0; c + 1 < n; ++c)
                if ((r + c) % spec.diagonalStride == 0) walk.push_back({id(r, c), id(r + 1, c + 1), 0.0});
        layers.push_back({"walkways", std::move(walk), {"pedestrian"}});
        pointLayers = {"streets", "walkways"};
    } else {
        layers.push_back({"streets", lattice, {spec.vehicleClass, "pedestrian"}});
        pointLayers = {"streets"};
    }

    std::vector<MapPoint> points;
    points.reserve(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const PointId pid = id(r, c);
            const bool special = std::find(spec.specialPoints.begin(), spec.specialPoints.end(), pid) !=
                                 spec.specialPoints.end();
            points.push_back({pid, c * spacing, r * spacing, pointLayers, special});
        }
    }

    const double extent = (n - 1) * spacing;
    return CityMap("grid" + std::to_string(n), extent, extent, std::move(points), std::move(layers),
                   spec.specialWeight);
}

}  // namespace dtn::map
