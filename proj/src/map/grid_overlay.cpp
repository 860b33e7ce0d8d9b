#include "dtnattack/map/grid_overlay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dtnattack/common/error.hpp"

namespace dtn::map {

GridOverlay::GridOverlay(double width, double height, int rows, int cols)
    : rows_(rows), cols_(cols), cellWidth_(width / cols), cellHeight_(height / rows) {
    if (rows <= 0 || cols <= 0) throw ValidationError("grid overlay needs positive rows and cols");
    if (!(width > 0.0) || !(height > 0.0)) throw ValidationError("grid overlay needs a positive extent");
}

GridCell GridOverlay::cellOf(double x, double y) const {
    const int col = std::clamp(static_cast<int>(std::floor(x / cellWidth_)), 0, cols_ - 1);
    const int row = std::clamp(static_cast<int>(std::floor(y / cellHeight_)), 0, rows_ - 1);
    return {row, col};
}

GridIndex::GridIndex(const LayerGraph& graph, const GridOverlay& overlay)
    : overlay_(overlay), cells_(static_cast<std::size_t>(overlay.rows()) * overlay.cols()) {
    if (graph.empty()) throw ValidationError("grid index over an empty layer set");
    auto slot = [&](GridCell c) -> auto& {
        return cells_[static_cast<std::size_t>(c.row) * overlay_.cols() + c.col];
    };
    for (std::size_t i = 0; i < graph.size(); ++i) slot(overlay_.cellOf(graph.x(i), graph.y(i))).push_back(i);

    for (int r = 0; r < overlay_.rows(); ++r) {
        for (int c = 0; c < overlay_.cols(); ++c) {
            auto& list = slot({r, c});
            if (!list.empty()) continue;
            const double cx = overlay_.centerX({r, c});
            const double cy = overlay_.centerY({r, c});
            std::size_t best = 0;
            double bestD = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < graph.size(); ++i) {
                const double d = std::hypot(graph.x(i) - cx, graph.y(i) - cy);
                if (d < bestD) {  // strict: first (smallest id) wins ties
                    bestD = d;
                    best = i;
                }
            }
            list.push_back(best);
        }
    }
}

const std::vector<std::size_t>& GridIndex::poiIndices(GridCell cell) const {
    if (!overlay_.contains(cell))
        throw ValidationError("grid cell (" + std::to_string(cell.row) + "," + std::to_string(cell.col) +
                              ") outside the overlay");
    return cells_[static_cast<std::size_t>(cell.row) * overlay_.cols() + cell.col];
}

std::vector<PointId> gridSquareToPois(const CityMap& map, const LayerSet& layers,
                                      const GridOverlay& overlay, GridCell cell) {
    const LayerGraph graph(map, layers);
    const GridIndex index(graph, overlay);
    std::vector<PointId> result;
    for (const auto i : index.poiIndices(cell)) result.push_back(graph.id(i));
    return result;
}

}  // namespace dtn::map
