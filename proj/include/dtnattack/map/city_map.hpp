#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dtn::map {

using PointId = std::int64_t;
using LayerId = std::string;
using LayerSet = std::set<LayerId>;

struct MapPoint {
    PointId id = 0;
    double x = 0.0;
    double y = 0.0;
    LayerSet layers;
    bool special = false;  // touristic-center POI, favoured as honest destination
};

struct Segment {
    PointId a = 0;
    PointId b = 0;
    double length = 0.0;
};

struct MapLayer {
    LayerId id;
    std::vector<Segment> segments;
    std::set<std::string> accessibleBy;  // movement-class names
};

/// Immutable multi-layer city map. Construction validates every structural
/// invariant and throws ValidationError naming the first violation.
class CityMap {
public:
    CityMap(std::string name, double width, double height, std::vector<MapPoint> points,
            std::vector<MapLayer> layers, double specialPoiWeight = 1.0);

    const std::string& name() const { return name_; }
    double width() const { return width_; }
    double height() const { return height_; }
    double specialPoiWeight() const { return specialPoiWeight_; }

    /// Points sorted by id.
    const std::vector<MapPoint>& points() const { return points_; }
    const std::vector<MapLayer>& layers() const { return layers_; }

    bool hasPoint(PointId id) const { return index_.contains(id); }
    const MapPoint& point(PointId id) const;
    const MapLayer* layer(std::string_view id) const;

    /// Layers a movement class may use.
    LayerSet layersFor(std::string_view movementClass) const;
    std::set<std::string> movementClasses() const;

    std::size_t segmentCount() const;

private:
    void validate() const;

    std::string name_;
    double width_;
    double height_;
    std::vector<MapPoint> points_;
    std::vector<MapLayer> layers_;
    double specialPoiWeight_;
    std::unordered_map<PointId, std::size_t> index_;
};

double distance(const MapPoint& a, const MapPoint& b);

}  // namespace dtn::map
