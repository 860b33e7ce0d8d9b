#pragma once

#include <compare>
#include <vector>

#include "dtnattack/map/city_map.hpp"
#include "dtnattack/map/layer_graph.hpp"

namespace dtn::map {

struct GridCell {
    int row = 0;
    int col = 0;
    auto operator<=>(const GridCell&) const = default;
};

/// Regular grid laid over the map's bounding box. Rows run along y, columns
/// along x. Cells are half-open except the last row/column, which also own
/// the far map edge, so every in-bounds coordinate has exactly one cell.
class GridOverlay {
public:
    GridOverlay(double width, double height, int rows, int cols);
    static GridOverlay over(const CityMap& map, int rows, int cols) {
        return GridOverlay(map.width(), map.height(), rows, cols);
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double cellWidth() const { return cellWidth_; }
    double cellHeight() const { return cellHeight_; }

    bool contains(GridCell cell) const {
        return cell.row >= 0 && cell.row < rows_ && cell.col >= 0 && cell.col < cols_;
    }
    GridCell cellOf(double x, double y) const;
    double centerX(GridCell cell) const { return (cell.col + 0.5) * cellWidth_; }
    double centerY(GridCell cell) const { return (cell.row + 0.5) * cellHeight_; }

private:
    int rows_;
    int cols_;
    double cellWidth_;
    double cellHeight_;
};

/// Precomputed cell -> POI expansion for one layer set.
///
/// A cell holding layer points expands to all of them (ascending id);
/// an empty cell expands to the single point nearest its centre (ties to the
/// smallest id).
class GridIndex {
public:
    GridIndex(const LayerGraph& graph, const GridOverlay& overlay);

    const GridOverlay& overlay() const { return overlay_; }
    /// Dense LayerGraph indices (ascending, so also ascending point id).
    const std::vector<std::size_t>& poiIndices(GridCell cell) const;

private:
    GridOverlay overlay_;
    std::vector<std::vector<std::size_t>> cells_;
};

std::vector<PointId> gridSquareToPois(const CityMap& map, const LayerSet& layers,
                                      const GridOverlay& overlay, GridCell cell);

}  // namespace dtn::map
