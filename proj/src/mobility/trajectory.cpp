#include "dtnattack/mobility/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "dtnattack/common/error.hpp"

namespace dtn::mobility {

void MovementClass::validate() const {
    if (!(speed.min > 0.0) || !(speed.max >= speed.min))
        throw ValidationError("movement class " + name + ": need 0 < speed.min <= speed.max");
    if (!(pause.min >= 0.0) || !(pause.max >= pause.min))
        throw ValidationError("movement class " + name + ": need 0 <= pause.min <= pause.max");
}

MovementClass pedestrianClass() { return {"pedestrian", {0.5, 1.5}, {0.0, 120.0}, false}; }
MovementClass carClass() { return {"car", {2.7, 13.9}, {0.0, 120.0}, true}; }
MovementClass boatClass() { return {"boat", {1.0, 5.0}, {0.0, 120.0}, true}; }

HonestWaypoints::HonestWaypoints(std::shared_ptr<const map::LayerGraph> graph, double specialWeight)
    : graph_(std::move(graph)) {
    if (graph_->empty()) throw ValidationError("no waypoints on the layer set");
    bool anySpecial = false;
    for (std::size_t i = 0; i < graph_->size(); ++i) anySpecial = anySpecial || graph_->special(i);
    if (anySpecial && specialWeight != 1.0) {
        cumulative_.reserve(graph_->size());
        double total = 0.0;
        for (std::size_t i = 0; i < graph_->size(); ++i) {
            total += graph_->special(i) ? specialWeight : 1.0;
            cumulative_.push_back(total);
        }
    }
}

std::size_t HonestWaypoints::next(Rng& rng) {
    if (cumulative_.empty()) return rng.below(graph_->size());
    const double u = rng.uniform() * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
}

AttackerWaypoints::AttackerWaypoints(std::shared_ptr<const map::GridIndex> index, std::vector<map::GridCell> cells)
    : index_(std::move(index)), cells_(std::move(cells)) {
    if (cells_.empty()) throw ValidationError("attacker needs at least one grid square");
    for (const auto& c : cells_) (void)index_->poiIndices(c);  // bounds check
}

std::size_t AttackerWaypoints::next(Rng& rng) {
    if (pending_ == nullptr || cursor_ >= pending_->size()) {
        pending_ = &index_->poiIndices(cells_[rng.below(cells_.size())]);
        cursor_ = 0;
    }
    return (*pending_)[cursor_++];
}

Trajectory::Trajectory(std::shared_ptr<const map::LayerGraph> graph, MovementClass cls, WaypointSource waypoints,
                       Rng rng, std::optional<std::size_t> start)
    : graph_(std::move(graph)), class_(std::move(cls)), waypoints_(std::move(waypoints)), rng_(std::move(rng)) {
    class_.validate();
    if (graph_->empty()) throw ValidationError("trajectory on an empty layer set");
    const std::size_t at = start ? *start : rng_.below(graph_->size());
    if (at >= graph_->size()) throw ValidationError("trajectory start outside the layer set");
    path_ = {at};
    updatePosition();
}

void Trajectory::beginLeg() {
    const std::size_t here = path_[leg_];
    const std::size_t target = std::visit([&](auto& w) { return w.next(rng_); }, waypoints_);
    path_ = graph_->pathIndices(here, target);
    leg_ = 0;
    offset_ = 0.0;
    speed_ = rng_.uniform(class_.speed.min, class_.speed.max);
    pausing_ = false;
}

Position Trajectory::advance(double dt) {
    if (!(dt > 0.0)) throw ValidationError("advance needs dt > 0");
    double remaining = dt;
    int idleLegs = 0;
    while (remaining > 0.0) {
        if (pausing_) {
            if (pauseLeft_ > remaining) {
                pauseLeft_ -= remaining;
                break;
            }
            remaining -= pauseLeft_;
            pauseLeft_ = 0.0;
            beginLeg();
            continue;
        }
        if (leg_ + 1 >= path_.size()) {
            // Arrived (a zero-length leg lands here immediately).
            pausing_ = true;
            pauseLeft_ = rng_.uniform(class_.pause.min, class_.pause.max);
            if (path_.size() == 1 && pauseLeft_ == 0.0 && ++idleLegs > 1000) break;
            continue;
        }
        const std::size_t a = path_[leg_];
        const std::size_t b = path_[leg_ + 1];
        const double length = std::hypot(graph_->x(b) - graph_->x(a), graph_->y(b) - graph_->y(a));
        const double left = length - offset_;
        const double reach = speed_ * remaining;
        if (reach < left) {
            offset_ += reach;
            remaining = 0.0;
        } else {
            remaining -= left / speed_;
            ++leg_;
            offset_ = 0.0;
        }
    }
    time_ += dt;
    updatePosition();
    return position_;
}

void Trajectory::updatePosition() {
    const std::size_t a = path_[leg_];
    if (pausing_ || leg_ + 1 >= path_.size() || offset_ == 0.0) {
        position_ = {graph_->x(a), graph_->y(a)};
        return;
    }
    const std::size_t b = path_[leg_ + 1];
    const double length = std::hypot(graph_->x(b) - graph_->x(a), graph_->y(b) - graph_->y(a));
    const double f = length > 0.0 ? offset_ / length : 0.0;
    position_ = {graph_->x(a) + f * (graph_->x(b) - graph_->x(a)), graph_->y(a) + f * (graph_->y(b) - graph_->y(a))};
}

map::PointId nextWaypointHonest(const map::LayerGraph& graph, double specialWeight, Rng& rng) {
    // Non-owning alias; the source does not outlive this call.
    const std::shared_ptr<const map::LayerGraph> view(std::shared_ptr<const map::LayerGraph>{}, &graph);
    HonestWaypoints source(view, specialWeight);
    return graph.id(source.next(rng));
}

map::PointId nextWaypointAttacker(const genome::AttackerGenome& genome, const map::LayerGraph& graph,
                                  const map::GridIndex& index, Rng& rng) {
    const std::shared_ptr<const map::GridIndex> view(std::shared_ptr<const map::GridIndex>{}, &index);
    AttackerWaypoints source(view, genome.pois);
    return graph.id(source.next(rng));
}

}  // namespace dtn::mobility
