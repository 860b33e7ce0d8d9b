#include "dtnattack/map/city_map.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dtnattack/common/error.hpp"

namespace dtn::map {

double distance(const MapPoint& a, const MapPoint& b) { return std::hypot(a.x - b.x, a.y - b.y); }

CityMap::CityMap(std::string name, double width, double height, std::vector<MapPoint> points,
                 std::vector<MapLayer> layers, double specialPoiWeight)
    : name_(std::move(name)),
      width_(width),
      height_(height),
      points_(std::move(points)),
      layers_(std::move(layers)),
      specialPoiWeight_(specialPoiWeight) {
    std::sort(points_.begin(), points_.end(),
              [](const MapPoint& a, const MapPoint& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!index_.emplace(points_[i].id, i).second)
            throw ValidationError("duplicate point id " + std::to_string(points_[i].id));
    }
    // Segment lengths are always derived from the endpoint coordinates.
    for (auto& layer : layers_) {
        for (auto& seg : layer.segments) {
            if (hasPoint(seg.a) && hasPoint(seg.b)) seg.length = distance(point(seg.a), point(seg.b));
        }
    }
    validate();
}

const MapPoint& CityMap::point(PointId id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) throw ValidationError("unknown point id " + std::to_string(id));
    return points_[it->second];
}

const MapLayer* CityMap::layer(std::string_view id) const {
    for (const auto& l : layers_)
        if (l.id == id) return &l;
    return nullptr;
}

LayerSet CityMap::layersFor(std::string_view movementClass) const {
    LayerSet result;
    for (const auto& l : layers_)
        if (l.accessibleBy.contains(std::string(movementClass))) result.insert(l.id);
    return result;
}

std::set<std::string> CityMap::movementClasses() const {
    std::set<std::string> result;
    for (const auto& l : layers_) result.insert(l.accessibleBy.begin(), l.accessibleBy.end());
    return result;
}

std::size_t CityMap::segmentCount() const {
    return std::accumulate(layers_.begin(), layers_.end(), std::size_t{0},
                           [](std::size_t n, const MapLayer& l) { return n + l.segments.size(); });
}

void CityMap::validate() const {
    if (!(width_ > 0.0) || !(height_ > 0.0)) throw ValidationError("non-positive map size");
    if (!(specialPoiWeight_ >= 1.0)) throw ValidationError("special POI weight must be >= 1");
    if (layers_.empty()) throw ValidationError("map declares no layers");

    for (const auto& p : points_) {
        if (!(p.x >= 0.0 && p.x <= width_ && p.y >= 0.0 && p.y <= height_))
            throw ValidationError("out-of-bounds point " + std::to_string(p.id));
        for (const auto& l : p.layers) {
            if (layer(l) == nullptr)
                throw ValidationError("point " + std::to_string(p.id) + " declares unknown layer " + l);
        }
    }

    for (const auto& l : layers_) {
        if (l.accessibleBy.empty())
            throw ValidationError("layer " + l.id + " is accessible by no movement class");
        std::vector<PointId> members;
        for (const auto& p : points_)
            if (p.layers.contains(l.id)) members.push_back(p.id);
        if (members.empty()) throw ValidationError("empty layer " + l.id);

        std::unordered_map<PointId, std::size_t> local;
        for (std::size_t i = 0; i < members.size(); ++i) local.emplace(members[i], i);

        // Union-find over the layer's own points.
        std::vector<std::size_t> parent(members.size());
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& s : l.segments) {
            const auto ia = local.find(s.a);
            const auto ib = local.find(s.b);
            if (ia == local.end() || ib == local.end()) {
                const PointId missing = ia == local.end() ? s.a : s.b;
                throw ValidationError("dangling segment endpoint " + std::to_string(missing) +
                                      " in layer " + l.id);
            }
            if (s.a == s.b)
                throw ValidationError("self-loop segment at point " + std::to_string(s.a) +
                                      " in layer " + l.id);
            parent[find(ia->second)] = find(ib->second);
        }
        const std::size_t root = find(0);
        for (std::size_t i = 1; i < members.size(); ++i) {
            if (find(i) != root)
                throw ValidationError("disconnected layer " + l.id + " (point " +
                                      std::to_string(members[i]) + " unreachable)");
        }
    }
}

}  // namespace dtn::map
