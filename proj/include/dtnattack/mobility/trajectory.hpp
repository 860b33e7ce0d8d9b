#pragma once

#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "dtnattack/common/random.hpp"
#include "dtnattack/genome/attacker_genome.hpp"
#include "dtnattack/map/grid_overlay.hpp"
#include "dtnattack/map/layer_graph.hpp"
#include "dtnattack/mobility/movement_class.hpp"

namespace dtn::mobility {

struct Position {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Position&) const = default;
};

/// Honest destination choice: any layer point, with special points weighted
/// by the map's special-POI weight.
class HonestWaypoints {
public:
    HonestWaypoints(std::shared_ptr<const map::LayerGraph> graph, double specialWeight);
    std::size_t next(Rng& rng);

private:
    std::shared_ptr<const map::LayerGraph> graph_;
    std::vector<double> cumulative_;  // empty when uniform
};

/// Attacker destination choice: a square drawn uniformly from the genome's
/// list, expanded to its POIs, all of which are visited in ascending id order
/// before the next square is drawn.
class AttackerWaypoints {
public:
    AttackerWaypoints(std::shared_ptr<const map::GridIndex> index, std::vector<map::GridCell> cells);
    std::size_t next(Rng& rng);

private:
    std::shared_ptr<const map::GridIndex> index_;
    std::vector<map::GridCell> cells_;
    const std::vector<std::size_t>* pending_ = nullptr;
    std::size_t cursor_ = 0;
};

using WaypointSource = std::variant<HonestWaypoints, AttackerWaypoints>;

/// Random waypoint with shortest paths on one layer graph.
///
/// The node starts at `start` (or a uniformly random layer point), walks to
/// each waypoint along the shortest path at a per-leg speed drawn from the
/// class range, pauses for a drawn interval, and repeats. All randomness comes
/// from the trajectory's own stream.
class Trajectory {
public:
    Trajectory(std::shared_ptr<const map::LayerGraph> graph, MovementClass cls, WaypointSource waypoints, Rng rng,
               std::optional<std::size_t> start = std::nullopt);

    Position position() const { return position_; }
    double time() const { return time_; }
    bool pausing() const { return pausing_; }
    double legSpeed() const { return speed_; }

    /// Moves the clock forward by dt > 0 and returns the new position.
    Position advance(double dt);

    const map::LayerGraph& graph() const { return *graph_; }
    const MovementClass& movementClass() const { return class_; }

private:
    void beginLeg();
    void updatePosition();

    std::shared_ptr<const map::LayerGraph> graph_;
    MovementClass class_;
    WaypointSource waypoints_;
    Rng rng_;

    std::vector<std::size_t> path_;  // dense indices; path_[leg_] is behind us
    std::size_t leg_ = 0;
    double offset_ = 0.0;  // metres travelled along the current segment
    double speed_ = 0.0;
    double pauseLeft_ = 0.0;
    bool pausing_ = true;
    double time_ = 0.0;
    Position position_;
};

/// Single-draw helpers mirroring the waypoint sources, returning point ids.
map::PointId nextWaypointHonest(const map::LayerGraph& graph, double specialWeight, Rng& rng);
map::PointId nextWaypointAttacker(const genome::AttackerGenome& genome, const map::LayerGraph& graph,
                                  const map::GridIndex& index, Rng& rng);

}  // namespace dtn::mobility
