#pragma once

#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "dtnattack/common/error.hpp"
#include "dtnattack/map/city_map.hpp"

namespace dtn::map {

class NoPathError : public Error {
public:
    NoPathError(PointId from, PointId to)
        : Error(ErrorCategory::Simulation,
                "no path from point " + std::to_string(from) + " to point " + std::to_string(to)) {}
};

/// Undirected union subgraph of a set of layers, indexed densely.
///
/// Shortest-path distance fields are computed lazily per destination and
/// cached; queries are safe from any number of threads.
class LayerGraph {
public:
    struct Edge {
        std::size_t to;
        double length;
    };

    LayerGraph(const CityMap& map, const LayerSet& layers);
    LayerGraph(const LayerGraph&) = delete;
    LayerGraph& operator=(const LayerGraph&) = delete;

    const LayerSet& layers() const { return layers_; }
    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }

    /// Dense index <-> point id. Indices follow ascending point id.
    PointId id(std::size_t index) const { return ids_[index]; }
    std::size_t indexOf(PointId id) const;
    bool contains(PointId id) const;

    double x(std::size_t index) const { return xs_[index]; }
    double y(std::size_t index) const { return ys_[index]; }
    bool special(std::size_t index) const { return special_[index]; }

    /// Neighbours sorted by ascending point id.
    std::span<const Edge> neighbors(std::size_t index) const;

    /// Minimum-length path as dense indices, from and to inclusive. Among
    /// equal-length paths the one taking the smallest next point id at each
    /// step is returned. Throws NoPathError.
    std::vector<std::size_t> pathIndices(std::size_t from, std::size_t to) const;
    std::vector<PointId> shortestPath(PointId from, PointId to) const;
    double distance(PointId from, PointId to) const;

private:
    const std::vector<double>& distancesTo(std::size_t target) const;

    LayerSet layers_;
    std::vector<PointId> ids_;
    std::vector<double> xs_;
    std::vector<double> ys_;
    std::vector<bool> special_;
    std::vector<std::size_t> adjacencyStart_;
    std::vector<Edge> adjacency_;

    mutable std::unique_ptr<std::once_flag[]> fieldOnce_;
    mutable std::vector<std::unique_ptr<const std::vector<double>>> fields_;
};

std::vector<PointId> shortestPath(const CityMap& map, const LayerSet& layers, PointId from, PointId to);
double pathLength(const CityMap& map, std::span<const PointId> path);

}  // namespace dtn::map
