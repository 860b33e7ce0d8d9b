#include "dtnattack/genome/attacker_genome.hpp"

#include <algorithm>

#include "dtnattack/common/error.hpp"

namespace dtn::genome {

std::string_view toString(AttackLogic logic) {
    switch (logic) {
        case AttackLogic::BlackHole:
            return "black_hole";
        case AttackLogic::Flood:
            return "flood";
    }
    return "unknown";
}

AttackLogic parseAttackLogic(std::string_view text) {
    if (text == "black_hole") return AttackLogic::BlackHole;
    if (text == "flood") return AttackLogic::Flood;
    throw ParseError("unknown attack logic '" + std::string(text) + "'", 0);
}

bool isVehicle(std::string_view movementClass) { return movementClass != "pedestrian"; }

void GenomeSpace::validateSelf() const {
    if (movementClasses.empty()) throw ValidationError("genome space has no movement classes");
    if (logics.empty()) throw ValidationError("genome space has no attack logics");
    if (rows <= 0 || cols <= 0) throw ValidationError("genome space needs a positive grid");
    if (minPois < 1 || maxPois < minPois) throw ValidationError("genome space needs 1 <= minPois <= maxPois");
}

void GenomeSpace::validate(const AttackerGenome& g) const {
    if (std::find(movementClasses.begin(), movementClasses.end(), g.movement) == movementClasses.end())
        throw ValidationError("unknown movement class '" + g.movement + "'");
    if (std::find(logics.begin(), logics.end(), g.logic) == logics.end())
        throw ValidationError("attack logic not allowed here");
    const auto n = static_cast<int>(g.pois.size());
    if (n < minPois || n > maxPois)
        throw ValidationError("POI list length " + std::to_string(n) + " outside [" + std::to_string(minPois) +
                              ", " + std::to_string(maxPois) + "]");
    for (const auto& c : g.pois) {
        if (c.row < 0 || c.row >= rows || c.col < 0 || c.col >= cols)
            throw ValidationError("POI (" + std::to_string(c.row) + "," + std::to_string(c.col) +
                                  ") outside the grid");
    }
}

bool GenomeSpace::isValid(const AttackerGenome& g) const {
    try {
        validate(g);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

GridCell GenomeSpace::randomCell(Rng& rng) const {
    const int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(rows)));
    const int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(cols)));
    return {r, c};
}

AttackerGenome randomGenome(const GenomeSpace& space, Rng& rng) {
    AttackerGenome g;
    g.movement = space.movementClasses[rng.below(space.movementClasses.size())];
    g.logic = space.logics[rng.below(space.logics.size())];
    const auto length = rng.between(space.minPois, space.maxPois);
    g.pois.reserve(static_cast<std::size_t>(length));
    for (std::int64_t i = 0; i < length; ++i) g.pois.push_back(space.randomCell(rng));
    return g;
}

}  // namespace dtn::genome
