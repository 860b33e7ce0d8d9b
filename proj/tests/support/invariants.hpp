#pragma once

// Per-tick checks of message conservation, single copy and buffer bounds,
// run from a TickObserver. Violations are collected as text.

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "dtnattack/netsim/engine.hpp"

namespace invariants {

using namespace dtn::netsim;

struct Checker {
    std::vector<std::string> violations;
    std::size_t ticks = 0;

    void fail(double t, const std::string& what) {
        if (violations.size() < 20) {
            std::ostringstream os;
            os << "t=" << t << ": " << what;
            violations.push_back(os.str());
        }
    }

    void operator()(const NetworkState& s) {
        ++ticks;
        std::vector<int> copies(s.messages.size(), 0);
        std::vector<double> used(s.nodes.size(), 0.0), reserved(s.nodes.size(), 0.0);
        for (const auto& n : s.nodes)
            for (const auto m : n.buffer) {
                ++copies[static_cast<std::size_t>(m)];
                used[static_cast<std::size_t>(n.spec.id)] += s.messages[static_cast<std::size_t>(m)].message.size;
            }
        for (const auto& x : s.transfers) {
            ++copies[static_cast<std::size_t>(x.message)];
            const double size = s.messages[static_cast<std::size_t>(x.message)].message.size;
            used[static_cast<std::size_t>(x.from)] += size;
            reserved[static_cast<std::size_t>(x.to)] += size;
        }
        for (std::size_t m = 0; m < s.messages.size(); ++m) {
            const bool live = s.messages[m].fate == MessageFate::Live;
            const int total = copies[m] + (live ? 0 : 1);
            if (total != 1) fail(s.time, "message " + std::to_string(m) + " accounted " + std::to_string(total) + " times");
        }
        for (std::size_t i = 0; i < s.nodes.size(); ++i) {
            const auto& n = s.nodes[i];
            const double tol = 1e-6 * (1.0 + n.spec.bufferCapacity);
            if (std::abs(n.used - used[i]) > tol) fail(s.time, "node " + std::to_string(i) + " used mismatch");
            if (std::abs(n.reserved - reserved[i]) > tol) fail(s.time, "node " + std::to_string(i) + " reserved mismatch");
            if (used[i] > n.spec.bufferCapacity + tol)
                fail(s.time, "node " + std::to_string(i) + " over capacity");
        }
    }
};

}  // namespace invariants
