#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dtnattack/common/random.hpp"
#include "dtnattack/map/grid_overlay.hpp"

namespace dtn::genome {

using map::GridCell;

enum class AttackLogic { BlackHole, Flood };

std::string_view toString(AttackLogic logic);
AttackLogic parseAttackLogic(std::string_view text);

/// One malicious node: how it moves, how it attacks, and the grid squares
/// it patrols. Squares may repeat; a repeated square is proportionally more
/// likely to be chosen as the next destination.
struct AttackerGenome {
    std::string movement;  // movement-class name, e.g. "pedestrian", "car"
    AttackLogic logic = AttackLogic::BlackHole;
    std::vector<GridCell> pois;

    bool operator==(const AttackerGenome&) const = default;
};

/// The domain every genome slot is drawn from.
struct GenomeSpace {
    std::vector<std::string> movementClasses{"pedestrian", "car"};
    std::vector<AttackLogic> logics{AttackLogic::BlackHole, AttackLogic::Flood};
    int rows = 100;
    int cols = 100;
    int minPois = 1;
    int maxPois = 20;

    /// Throws ValidationError if the genome breaks an invariant.
    void validate(const AttackerGenome& g) const;
    bool isValid(const AttackerGenome& g) const;
    /// Throws ValidationError if the space itself is malformed.
    void validateSelf() const;

    GridCell randomCell(Rng& rng) const;
};

AttackerGenome randomGenome(const GenomeSpace& space, Rng& rng);

/// True for every movement class that is not "pedestrian".
bool isVehicle(std::string_view movementClass);

}  // namespace dtn::genome
