#include "dtnattack/map/layer_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace dtn::map {

LayerGraph::LayerGraph(const CityMap& map, const LayerSet& layers) : layers_(layers) {
    for (const auto& p : map.points()) {
        const bool member = std::any_of(p.layers.begin(), p.layers.end(),
                                        [&](const LayerId& l) { return layers_.contains(l); });
        if (!member) continue;
        ids_.push_back(p.id);
        xs_.push_back(p.x);
        ys_.push_back(p.y);
        special_.push_back(p.special);
    }

    std::vector<std::vector<Edge>> adj(ids_.size());
    for (const auto& layer : map.layers()) {
        if (!layers_.contains(layer.id)) continue;
        for (const auto& s : layer.segments) {
            const std::size_t a = indexOf(s.a);
            const std::size_t b = indexOf(s.b);
            adj[a].push_back({b, s.length});
            adj[b].push_back({a, s.length});
        }
    }
    adjacencyStart_.reserve(ids_.size() + 1);
    for (auto& list : adj) {
        // Segments repeated across layers collapse to one edge.
        std::sort(list.begin(), list.end(), [](const Edge& l, const Edge& r) {
            return l.to != r.to ? l.to < r.to : l.length < r.length;
        });
        list.erase(std::unique(list.begin(), list.end(),
                               [](const Edge& l, const Edge& r) { return l.to == r.to; }),
                   list.end());
        adjacencyStart_.push_back(adjacency_.size());
        adjacency_.insert(adjacency_.end(), list.begin(), list.end());
    }
    adjacencyStart_.push_back(adjacency_.size());

    fieldOnce_ = std::make_unique<std::once_flag[]>(ids_.size());
    fields_.resize(ids_.size());
}

std::size_t LayerGraph::indexOf(PointId id) const {
    const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id)
        throw ValidationError("point " + std::to_string(id) + " is not on the layer set");
    return static_cast<std::size_t>(it - ids_.begin());
}

bool LayerGraph::contains(PointId id) const { return std::binary_search(ids_.begin(), ids_.end(), id); }

std::span<const LayerGraph::Edge> LayerGraph::neighbors(std::size_t index) const {
    return {adjacency_.data() + adjacencyStart_[index], adjacencyStart_[index + 1] - adjacencyStart_[index]};
}

const std::vector<double>& LayerGraph::distancesTo(std::size_t target) const {
    std::call_once(fieldOnce_[target], [&] {
        auto dist = std::vector<double>(ids_.size(), std::numeric_limits<double>::infinity());
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
        dist[target] = 0.0;
        open.push({0.0, target});
        while (!open.empty()) {
            const auto [d, u] = open.top();
            open.pop();
            if (d > dist[u]) continue;
            for (const auto& e : neighbors(u)) {
                const double nd = d + e.length;
                if (nd < dist[e.to]) {
                    dist[e.to] = nd;
                    open.push({nd, e.to});
                }
            }
        }
        fields_[target] = std::make_unique<const std::vector<double>>(std::move(dist));
    });
    return *fields_[target];
}

std::vector<std::size_t> LayerGraph::pathIndices(std::size_t from, std::size_t to) const {
    const auto& dist = distancesTo(to);
    if (!std::isfinite(dist[from])) throw NoPathError(id(from), id(to));
    std::vector<std::size_t> path{from};
    std::vector<bool> visited(ids_.size(), false);
    visited[from] = true;
    std::size_t cur = from;
    while (cur != to) {
        const double here = dist[cur];
        const double tol = 1e-9 * std::max(1.0, here);
        std::size_t next = cur;
        // Neighbours are id-sorted, so the first edge on a shortest path wins.
        // Dijkstra's own predecessor satisfies the equality exactly, so one
        // candidate always qualifies.
        for (const auto& e : neighbors(cur)) {
            if (!visited[e.to] && std::abs(dist[e.to] + e.length - here) <= tol) {
                next = e.to;
                break;
            }
        }
        if (next == cur) throw NoPathError(id(from), id(to));
        path.push_back(next);
        visited[next] = true;
        cur = next;
    }
    return path;
}

std::vector<PointId> LayerGraph::shortestPath(PointId from, PointId to) const {
    const auto indices = pathIndices(indexOf(from), indexOf(to));
    std::vector<PointId> path;
    path.reserve(indices.size());
    for (const auto i : indices) path.push_back(id(i));
    return path;
}

double LayerGraph::distance(PointId from, PointId to) const {
    const double d = distancesTo(indexOf(to))[indexOf(from)];
    if (!std::isfinite(d)) throw NoPathError(from, to);
    return d;
}

std::vector<PointId> shortestPath(const CityMap& map, const LayerSet& layers, PointId from, PointId to) {
    return LayerGraph(map, layers).shortestPath(from, to);
}

double pathLength(const CityMap& map, std::span<const PointId> path) {
    double total = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) total += distance(map.point(path[i - 1]), map.point(path[i]));
    return total;
}

}  // namespace dtn::map
