#include "dtnattack/baselines/reachability.hpp"

#include <algorithm>
#include <numeric>

#include "dtnattack/common/error.hpp"

namespace dtn::baselines {

ContactTrace ContactTrace::make(int nodeCount, std::vector<netsim::ContactEvent> events) {
    if (nodeCount < 0) throw ValidationError("node count must be >= 0");
    for (const auto& e : events) {
        if (e.nodeA < 0 || e.nodeB < 0 || e.nodeA >= nodeCount || e.nodeB >= nodeCount)
            throw ValidationError("contact references a node outside the trace");
        if (e.nodeA == e.nodeB) throw ValidationError("contact of a node with itself");
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const netsim::ContactEvent& a, const netsim::ContactEvent& b) { return a.start < b.start; });
    return {nodeCount, std::move(events)};
}

ContactTrace ContactTrace::without(std::span<const netsim::NodeId> nodes) const {
    ContactTrace out{nodeCount, {}};
    std::vector<bool> gone(static_cast<std::size_t>(nodeCount), false);
    for (const auto n : nodes) gone.at(static_cast<std::size_t>(n)) = true;
    for (const auto& e : events)
        if (!gone[static_cast<std::size_t>(e.nodeA)] && !gone[static_cast<std::size_t>(e.nodeB)]) out.events.push_back(e);
    return out;
}

namespace {

int findRoot(std::vector<int>& parent, int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
    }
    return x;
}

}  // namespace

std::int64_t totalReachability(const ContactTrace& trace) {
    const auto n = static_cast<std::size_t>(trace.nodeCount);
    const auto& ev = trace.events;
    // Events sharing a start time form one batch: within it, a node reached
    // before the batch reaches its whole connected component.
    std::vector<std::size_t> batchStart{0};
    for (std::size_t i = 1; i < ev.size(); ++i)
        if (ev[i].start != ev[i - 1].start) batchStart.push_back(i);
    batchStart.push_back(ev.size());
    if (ev.empty()) return 0;

    // Components per batch do not depend on the source; compute them once.
    std::vector<std::vector<std::vector<int>>> components(batchStart.size() - 1);
    std::vector<int> parent(n);
    for (std::size_t b = 0; b + 1 < batchStart.size(); ++b) {
        std::vector<int> touched;
        for (auto i = batchStart[b]; i < batchStart[b + 1]; ++i) {
            touched.push_back(ev[i].nodeA);
            touched.push_back(ev[i].nodeB);
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (const auto v : touched) parent[static_cast<std::size_t>(v)] = v;
        for (auto i = batchStart[b]; i < batchStart[b + 1]; ++i) {
            const int ra = findRoot(parent, ev[i].nodeA);
            const int rb = findRoot(parent, ev[i].nodeB);
            if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
        }
        std::vector<std::vector<int>> groups;
        std::vector<int> slot(n, -1);
        for (const auto v : touched) {
            const int r = findRoot(parent, v);
            if (slot[static_cast<std::size_t>(r)] < 0) {
                slot[static_cast<std::size_t>(r)] = static_cast<int>(groups.size());
                groups.emplace_back();
            }
            groups[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(v);
        }
        components[b] = std::move(groups);
    }

    std::int64_t total = 0;
    std::vector<char> reached(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(reached.begin(), reached.end(), 0);
        reached[s] = 1;
        std::int64_t count = 0;
        for (const auto& batch : components) {
            for (const auto& comp : batch) {
                const bool hit =
                    std::any_of(comp.begin(), comp.end(), [&](int v) { return reached[static_cast<std::size_t>(v)]; });
                if (!hit) continue;
                for (const auto v : comp) {
                    if (!reached[static_cast<std::size_t>(v)]) {
                        reached[static_cast<std::size_t>(v)] = 1;
                        ++count;
                    }
                }
            }
        }
        total += count;
    }
    return total;
}

std::vector<netsim::NodeId> greedySelectAttackers(const ContactTrace& trace, int k,
                                                  std::span<const netsim::NodeId> candidates) {
    std::vector<netsim::NodeId> pool(candidates.begin(), candidates.end());
    if (pool.empty()) {
        pool.resize(static_cast<std::size_t>(trace.nodeCount));
        std::iota(pool.begin(), pool.end(), 0);
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    if (k < 0 || static_cast<std::size_t>(k) > pool.size())
        throw ValidationError("greedy selection needs 0 <= k <= number of candidate nodes");

    std::vector<netsim::NodeId> chosen;
    ContactTrace residual = trace;
    for (int round = 0; round < k; ++round) {
        std::size_t bestIndex = 0;
        std::int64_t bestValue = -1;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            const netsim::NodeId v = pool[i];
            const auto value = totalReachability(residual.without(std::span(&v, 1)));
            if (bestValue < 0 || value < bestValue) {
                bestValue = value;
                bestIndex = i;
            }
        }
        const auto pick = pool[bestIndex];
        chosen.push_back(pick);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(bestIndex));
        residual = residual.without(std::span(&pick, 1));
    }
    return chosen;
}

}  // namespace dtn::baselines
