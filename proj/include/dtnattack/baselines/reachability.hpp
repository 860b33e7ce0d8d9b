#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dtnattack/netsim/types.hpp"

namespace dtn::baselines {

/// A fixed list of connection events over nodes 0..nodeCount-1.
struct ContactTrace {
    int nodeCount = 0;
    std::vector<netsim::ContactEvent> events;  // sorted by start

    /// Sorts events and checks node ids. Throws ValidationError.
    static ContactTrace make(int nodeCount, std::vector<netsim::ContactEvent> events);

    /// Drops every event touching one of `nodes`.
    ContactTrace without(std::span<const netsim::NodeId> nodes) const;
};

/// Number of ordered pairs (a, b), a != b, such that a reaches b through a
/// sequence of contacts with non-decreasing start times. A contact is an
/// instantaneous, bidirectional opportunity at its start time, and contacts
/// sharing a start time chain into each other.
std::int64_t totalReachability(const ContactTrace& trace);

/// Greedy vertex removal: k rounds, each removing the node whose removal
/// (with all its contacts) leaves the lowest reachability. Ties go to the
/// smallest id. `candidates` restricts the choice (all nodes when empty).
/// Returns nodes in removal order.
std::vector<netsim::NodeId> greedySelectAttackers(const ContactTrace& trace, int k,
                                                  std::span<const netsim::NodeId> candidates = {});

}  // namespace dtn::baselines
