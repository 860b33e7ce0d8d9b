#pragma once

// Temporal reachability by fixed-point relaxation of earliest arrival
// times, independent of the batch/union-find implementation.

#include <cstdint>
#include <limits>
#include <vector>

#include "dtnattack/baselines/reachability.hpp"
#include "dtnattack/common/random.hpp"

namespace reach_oracle {

using dtn::baselines::ContactTrace;
using dtn::netsim::ContactEvent;
using dtn::netsim::NodeId;

inline std::int64_t reachability(const ContactTrace& t) {
    const double inf = std::numeric_limits<double>::infinity();
    std::int64_t pairs = 0;
    for (NodeId s = 0; s < t.nodeCount; ++s) {
        std::vector<double> arrive(static_cast<std::size_t>(t.nodeCount), inf);
        arrive[static_cast<std::size_t>(s)] = -inf;
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& e : t.events) {
                auto& a = arrive[static_cast<std::size_t>(e.nodeA)];
                auto& b = arrive[static_cast<std::size_t>(e.nodeB)];
                if (a <= e.start && e.start < b) b = e.start, changed = true;
                if (b <= e.start && e.start < a) a = e.start, changed = true;
            }
        }
        for (NodeId d = 0; d < t.nodeCount; ++d)
            if (d != s && arrive[static_cast<std::size_t>(d)] < inf) ++pairs;
    }
    return pairs;
}

/// Events at small integer times so that simultaneous contacts are common.
inline ContactTrace randomTrace(int nodes, int events, dtn::Rng& rng) {
    std::vector<ContactEvent> ev;
    while (static_cast<int>(ev.size()) < events) {
        auto a = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(nodes)));
        auto b = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(nodes)));
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        const double start = static_cast<double>(rng.below(12));
        ev.push_back({a, b, start, start + 1.0, 0});
    }
    return ContactTrace::make(nodes, std::move(ev));
}

}  // namespace reach_oracle
