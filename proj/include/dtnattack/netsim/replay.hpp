#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dtnattack/mobility/trajectory.hpp"
#include "dtnattack/netsim/engine.hpp"

namespace dtn::netsim {

class Scenario;

/// Honest mobility of one seed, sampled at every traffic-period tick, plus
/// the honest-to-honest links at each of those ticks. Honest movement never
/// depends on the attackers, so every run with the same seed shares it.
struct HonestReplay {
    std::int64_t firstTick = 0;  // first tick at or after the warm-up
    std::int64_t ticks = 0;
    std::size_t honest = 0;
    std::vector<mobility::Position> positions;  // [tick - firstTick][node]
    std::vector<std::size_t> linkStart;         // ticks + 1 offsets into links
    std::vector<Link> links;                    // sorted within each tick

    std::span<const mobility::Position> positionsAt(std::int64_t tick) const {
        return {positions.data() + static_cast<std::size_t>(tick - firstTick) * honest, honest};
    }
    std::span<const Link> linksAt(std::int64_t tick) const {
        const auto i = static_cast<std::size_t>(tick - firstTick);
        return {links.data() + linkStart[i], linkStart[i + 1] - linkStart[i]};
    }
};

HonestReplay buildHonestReplay(const Scenario& scenario, std::uint64_t seed);

/// Appends every link between nodes `a` and `b` at squared distance d2.
/// `ranges2` holds squared interface ranges; masks are interface bit sets.
inline void appendLinks(std::vector<Link>& out, NodeId a, NodeId b, double d2, std::uint8_t shared,
                        std::span<const double> ranges2) {
    for (std::size_t i = 0; i < ranges2.size(); ++i)
        if ((shared >> i & 1u) && d2 <= ranges2[i]) out.push_back({a, b, static_cast<InterfaceId>(i)});
}

}  // namespace dtn::netsim
