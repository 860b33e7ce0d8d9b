#include <doctest.h>

#include <algorithm>
#include <map>

#include "dtnattack/baselines/arms.hpp"
#include "dtnattack/baselines/reachability.hpp"
#include "dtnattack/common/error.hpp"
#include "reach_oracle.hpp"

using namespace dtn;
using namespace dtn::baselines;
using netsim::ContactEvent;
using netsim::NodeId;

namespace {

// Lowest residual reachability over all removal sets of size k.
std::int64_t bestRemoval(const ContactTrace& t, int k) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<bool> pick(static_cast<std::size_t>(t.nodeCount), false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
        std::vector<NodeId> removed;
        for (int i = 0; i < t.nodeCount; ++i)
            if (pick[static_cast<std::size_t>(i)]) removed.push_back(i);
        best = std::min(best, totalReachability(t.without(removed)));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return best;
}

}  // namespace

TEST_CASE("reachability hand examples") {
    CHECK(totalReachability(ContactTrace::make(4, {})) == 0);
    CHECK(totalReachability(ContactTrace::make(3, {{0, 1, 1, 2, 0}})) == 2);
    // (a,b) at 1 then (b,c) at 2: a->b, b->a, b->c, c->b, a->c; c cannot reach a.
    const auto chain = ContactTrace::make(3, {{1, 2, 2, 3, 0}, {0, 1, 1, 2, 0}});
    CHECK(totalReachability(chain) == 5);
    CHECK(reach_oracle::reachability(chain) == 5);
    // Reversed order: only the two direct pairs each way plus c->a.
    const auto back = ContactTrace::make(3, {{1, 2, 1, 2, 0}, {0, 1, 2, 3, 0}});
    CHECK(totalReachability(back) == 5);
    // Simultaneous contacts chain both ways.
    const auto same = ContactTrace::make(3, {{0, 1, 1, 2, 0}, {1, 2, 1, 2, 0}});
    CHECK(totalReachability(same) == 6);
}

TEST_CASE("trace validation") {
    CHECK_THROWS_AS(ContactTrace::make(2, {{0, 2, 0, 1, 0}}), ValidationError);
    const auto t = ContactTrace::make(3, {{0, 1, 5, 6, 0}, {1, 2, 1, 2, 0}});
    CHECK(t.events.front().start == 1.0);
    const std::vector<NodeId> drop{1};
    CHECK(t.without(drop).events.empty());
}

TEST_CASE("reachability matches temporal BFS on random traces") {
    Rng rng(21);
    for (int i = 0; i < 100; ++i) {
        const int n = static_cast<int>(rng.between(2, 8));
        const auto t = reach_oracle::randomTrace(n, static_cast<int>(rng.between(0, 20)), rng);
        CAPTURE(i);
        CHECK(totalReachability(t) == reach_oracle::reachability(t));
    }
}

TEST_CASE("reachability never grows under node removal") {
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        const auto t = reach_oracle::randomTrace(8, 18, rng);
        const std::vector<NodeId> one{static_cast<NodeId>(rng.below(8))};
        const auto r1 = totalReachability(t.without(one));
        CHECK(r1 <= totalReachability(t));
        auto two = one;
        two.push_back(static_cast<NodeId>(rng.below(8)));
        CHECK(totalReachability(t.without(two)) <= r1);
    }
}

TEST_CASE("greedy picks the star hub first") {
    std::vector<ContactEvent> ev;
    for (NodeId leaf = 0; leaf < 6; ++leaf)
        if (leaf != 3) ev.push_back({std::min(leaf, 3), std::max(leaf, 3), double(leaf), double(leaf) + 1, 0});
    const auto t = ContactTrace::make(6, ev);
    const auto pick = greedySelectAttackers(t, 1);
    REQUIRE(pick.size() == 1);
    CHECK(pick[0] == 3);
    const std::vector<NodeId> hub{3};
    CHECK(totalReachability(t.without(hub)) == 0);
}

TEST_CASE("greedy with k = |N| returns every node") {
    Rng rng(6);
    const auto t = reach_oracle::randomTrace(5, 8, rng);
    auto all = greedySelectAttackers(t, 5);
    std::sort(all.begin(), all.end());
    CHECK(all == std::vector<NodeId>{0, 1, 2, 3, 4});
    CHECK_THROWS_AS(greedySelectAttackers(t, 6), ValidationError);
}

TEST_CASE("greedy k = 1 equals exhaustive single-node search") {
    Rng rng(31);
    for (int i = 0; i < 20; ++i) {
        const auto t = reach_oracle::randomTrace(8, 16, rng);
        NodeId best = 0;
        std::int64_t bestR = std::numeric_limits<std::int64_t>::max();
        for (NodeId v = 0; v < 8; ++v) {
            const std::vector<NodeId> drop{v};
            const auto r = reach_oracle::reachability(t.without(drop));
            if (r < bestR) bestR = r, best = v;
        }
        const auto pick = greedySelectAttackers(t, 1);
        CAPTURE(i);
        CHECK(pick == std::vector<NodeId>{best});
    }
}

TEST_CASE("greedy k <= 3 against optimal removal") {
    Rng rng(12);
    int equal = 0, total = 0;
    for (int i = 0; i < 30; ++i) {
        const auto t = reach_oracle::randomTrace(8, 16, rng);
        for (int k = 1; k <= 3; ++k) {
            const auto pick = greedySelectAttackers(t, k);
            const auto greedyR = totalReachability(t.without(pick));
            const auto optimal = bestRemoval(t, k);
            CHECK(greedyR >= optimal);
            equal += greedyR == optimal;
            ++total;
        }
    }
    CHECK(equal * 2 > total);
}

TEST_CASE("greedy respects the candidate pool") {
    Rng rng(2);
    const auto t = reach_oracle::randomTrace(6, 12, rng);
    const std::vector<NodeId> pool{1, 4};
    const auto pick = greedySelectAttackers(t, 2, pool);
    CHECK(std::is_permutation(pick.begin(), pick.end(), pool.begin()));
}

TEST_CASE("random groups: count, sizes and determinism") {
    evolution::EvaluationCache cache([](std::span<const genome::AttackerGenome> g) {
        return netsim::Evaluation{{1.0 / static_cast<double>(g.size() + 1), 0.0}, {}, {}};
    });
    genome::GenomeSpace space;
    space.rows = 10;
    space.cols = 10;
    const auto groups = sampleRandomGroups(150, {1, 5}, space, 9, cache);
    CHECK(groups.size() == 150);

    const auto big = sampleRandomGroups(5000, {11, 20}, space, 3, cache);
    std::map<std::size_t, int> hist;
    for (const auto& g : big) {
        ++hist[g.members.size()];
        for (const auto& m : g.members) CHECK(space.isValid(m));
        CHECK(g.evaluation.fitness.f1 == 1.0 / static_cast<double>(g.members.size() + 1));
    }
    CHECK(hist.size() == 10);
    double chi = 0.0;
    for (const auto& [size, n] : hist) {
        CHECK(size >= 11);
        CHECK(size <= 20);
        chi += (n - 500.0) * (n - 500.0) / 500.0;
    }
    CHECK(chi < 27.88);  // 9 degrees of freedom, p = 0.001

    const auto singles = sampleRandomGroups(20, {1, 1}, space, 9, cache);
    for (const auto& g : singles) CHECK(g.members.size() == 1);
    const auto again = sampleRandomGroups(150, {1, 5}, space, 9, cache);
    for (std::size_t i = 0; i < groups.size(); ++i) CHECK(again[i].members == groups[i].members);
}

TEST_CASE("greedy baseline on a small city") {
    const auto scenario = netsim::parseScenario(R"({"map": {"grid": {"n": 4, "spacing": 30}},
        "grid": {"rows": 4, "cols": 4}, "honest": {"pedestrian": 8, "car": 2}, "duration": 400,
        "warmup": 50, "seed": 4})");
    const auto seeds = netsim::evaluationSeeds(4, 2);
    const auto trace = honestContactTrace(scenario, seeds[0]);
    CHECK(trace.nodeCount == 10);
    const auto out = greedyBaseline(scenario, 2, seeds);
    REQUIRE(out.selected.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(out.selected[i].size() == 2);
        CHECK(out.reachabilityAfter[i] <= out.reachabilityBefore[i]);
    }
    CHECK(out.selected[0] == greedySelectAttackers(trace, 2));
    CHECK(out.evaluation.ddrs.size() == 2);
    CHECK_THROWS_AS(greedyBaseline(scenario, 9, seeds), ValidationError);
}
