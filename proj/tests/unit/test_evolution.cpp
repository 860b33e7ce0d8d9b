#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <set>

#include "dtnattack/evolution/adaptation.hpp"
#include "dtnattack/evolution/classical.hpp"
#include "dtnattack/evolution/evaluation.hpp"
#include "dtnattack/evolution/group_evolution.hpp"
#include "dtnattack/evolution/selection.hpp"
#include "dtnattack/genome/serialization.hpp"

using namespace dtn;
using namespace dtn::evolution;

namespace {

int blackHoleVehicles(std::span<const genome::AttackerGenome> g) {
    return static_cast<int>(std::count_if(g.begin(), g.end(), [](const genome::AttackerGenome& a) {
        return a.logic == genome::AttackLogic::BlackHole && genome::isVehicle(a.movement);
    }));
}

// Synthetic landscape: each black-hole vehicle lowers f1; f2 rewards long
// patrol lists so ties in f1 still order candidates.
Evaluation landscape(std::span<const genome::AttackerGenome> g) {
    Evaluation e;
    std::size_t pois = 0;
    for (const auto& a : g) pois += a.pois.size();
    e.fitness = {1.0 - 0.1 * blackHoleVehicles(g), static_cast<double>(pois)};
    e.ddrs = {e.fitness.f1};
    e.latencies = {e.fitness.f2};
    return e;
}

EngineParams smallParams(int kMin, int kMax) {
    EngineParams p;
    p.space.rows = 6;
    p.space.cols = 6;
    p.space.maxPois = 4;
    p.bounds = {kMin, kMax};
    p.stagnation = 20;
    return p;
}

void checkAdaptiveBounds(const AdaptiveState& a) {
    CHECK(a.tau >= kTauMin);
    CHECK(a.tau <= kTauMax);
    CHECK(a.sigma >= kSigmaMin);
    CHECK(a.sigma <= kSigmaMax);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.probabilities.size(); ++i) {
        if (a.enabled[i]) {
            CHECK(a.probabilities[i] >= kProbabilityFloor - 1e-12);
        } else {
            CHECK(a.probabilities[i] == 0.0);
        }
        sum += a.probabilities[i];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

void checkGeStructure(const GroupEvolution& ge) {
    const auto& p = ge.params();
    CHECK(ge.groups().size() == static_cast<std::size_t>(p.muGroup));
    std::set<genome::IndividualId> referenced;
    for (const auto& g : ge.groups()) {
        CHECK(p.bounds.admits(g.group.members.size()));
        for (const auto id : g.group.members) {
            CHECK(ge.individuals().contains(id));
            referenced.insert(id);
        }
    }
    for (const auto& [id, ind] : ge.individuals()) CHECK(referenced.contains(id));
}

}  // namespace

TEST_CASE("lexicographic comparison") {
    CHECK(isBetter({0.30, 100}, {0.40, 900}));
    CHECK(isBetter({0.30, 900}, {0.30, 100}));
    CHECK_FALSE(isBetter({0.30, 100}, {0.30, 900}));
    CHECK(compareLexicographic({0.3, 5}, {0.3, 5}) == std::weak_ordering::equivalent);
    CHECK(compareLexicographic({0.3, 5}, {0.3 + 1e-12, 5}) == std::weak_ordering::equivalent);
}

TEST_CASE("tournament sizes") {
    Rng rng(1);
    int two = 0, three = 0;
    for (int i = 0; i < 10'000; ++i) {
        const auto s = drawTournamentSize(2.5, rng);
        two += s == 2;
        three += s == 3;
    }
    CHECK(two + three == 10'000);
    CHECK(two / 1e4 == doctest::Approx(0.5).epsilon(0.04));
    for (int i = 0; i < 100; ++i) CHECK(drawTournamentSize(1.0, rng) == 1);

    const std::vector<FitnessVector> one{{0.5, 1}};
    for (int i = 0; i < 10; ++i) CHECK(tournamentSelect(one, 3.7, rng) == 0);

    // τ = 1 selects uniformly.
    const std::vector<FitnessVector> pool{{0.1, 0}, {0.2, 0}, {0.3, 0}, {0.4, 0}};
    std::vector<int> hits(4, 0);
    for (int i = 0; i < 20'000; ++i) ++hits[tournamentSelect(pool, 1.0, rng)];
    for (const int h : hits) CHECK(h / 2e4 == doctest::Approx(0.25).epsilon(0.08));
    // Larger tournaments favour the best.
    std::fill(hits.begin(), hits.end(), 0);
    for (int i = 0; i < 20'000; ++i) ++hits[tournamentSelect(pool, 4.0, rng)];
    CHECK(hits[0] / 2e4 == doctest::Approx(1.0 - std::pow(0.75, 4)).epsilon(0.03));
}

TEST_CASE("adaptation update rules") {
    auto a = AdaptiveState::uniform(4, {true, true, true, true}, 4.0, 0.5, 0.9);
    a.adapt(std::vector<OperatorTally>(4), true);
    CHECK(a.tau == doctest::Approx(3.7));
    CHECK(a.sigma == doctest::Approx(0.55));
    a.adapt(std::vector<OperatorTally>(4), false);
    CHECK(a.tau == doctest::Approx(0.9 * 3.7 + 0.4));
    CHECK(a.sigma == doctest::Approx(0.9 * 0.55));

    // An operator that always fails decays to the floor.
    auto b = AdaptiveState::uniform(3, {true, true, true}, 2.0, 0.9, 0.9);
    for (int g = 0; g < 300; ++g) b.adapt({{5, 5}, {5, 5}, {5, 0}}, true);
    CHECK(b.probabilities[2] == doctest::Approx(kProbabilityFloor).epsilon(0.05));
    checkAdaptiveBounds(b);

    // Equal success from a skewed start converges to uniform.
    auto c = AdaptiveState::uniform(3, {true, true, true}, 2.0, 0.9, 0.9);
    c.probabilities = {0.7, 0.2, 0.1};
    for (int g = 0; g < 300; ++g) c.adapt({{4, 2}, {4, 2}, {4, 2}}, false);
    for (const double p : c.probabilities) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-6));

    // Bounds hold under arbitrary outcomes; disabled slots stay at 0.
    Rng rng(3);
    auto d = AdaptiveState::uniform(5, {true, false, true, true, true}, 2.0, 0.9, 0.9);
    for (int g = 0; g < 2000; ++g) {
        std::vector<OperatorTally> t(5);
        for (std::size_t i = 0; i < 5; ++i)
            if (d.enabled[i]) {
                t[i].applied = static_cast<int>(rng.below(5));
                t[i].succeeded = t[i].applied == 0 ? 0 : static_cast<int>(rng.below(t[i].applied + 1));
            }
        d.adapt(t, rng.bernoulli(0.3));
        checkAdaptiveBounds(d);
        CHECK(d.chooseOperator(rng) != 1);
    }
}

TEST_CASE("cache evaluates duplicates once and hits are identical") {
    std::atomic<int> calls{0};
    EvaluationCache cache(
        [&](std::span<const genome::AttackerGenome> g) {
            ++calls;
            return landscape(g);
        },
        2);
    Rng rng(8);
    const auto space = smallParams(1, 3).space;
    const Group a{genome::randomGenome(space, rng), genome::randomGenome(space, rng)};
    const Group b{genome::randomGenome(space, rng)};
    const Group aReversed{a[1], a[0]};
    const auto first = cache.evaluate(std::vector<Group>{a, b, a, aReversed});
    CHECK(calls == 2);
    CHECK(first[0] == first[2]);
    CHECK(first[0] == first[3]);
    const auto again = cache.evaluate(std::vector<Group>{a, b});
    CHECK(calls == 2);
    CHECK(again[0] == first[0]);
    CHECK(cache.requests() == 6);
    CHECK(cache.hits() == 4);
}

TEST_CASE("cached simulation fitness equals a fresh evaluation") {
    const auto scenario = netsim::parseScenario(R"({"map": {"grid": {"n": 4, "spacing": 30}},
        "grid": {"rows": 4, "cols": 4}, "honest": {"pedestrian": 6, "car": 2}, "duration": 300,
        "warmup": 50, "seed": 4})");
    const auto seeds = netsim::evaluationSeeds(4, 3);
    EvaluationCache cache(simulationEvaluator(scenario, seeds), 2);
    Rng rng(2);
    const auto space = scenario->genomeSpace(1, 4);
    std::vector<Group> groups;
    for (int i = 0; i < 6; ++i) groups.push_back({genome::randomGenome(space, rng)});
    groups.push_back(groups[0]);
    const auto cached = cache.evaluate(groups);
    const auto hit = cache.evaluate(groups[2]);
    CHECK(cache.misses() == 6);
    for (std::size_t i = 0; i < groups.size(); ++i)
        CHECK(cached[i] == netsim::evaluateFitness(scenario, groups[i], seeds));
    CHECK(hit == cached[2]);
}

TEST_CASE("group evolution keeps its structure and elitism") {
    for (const auto& [kMin, kMax] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {1, 5}}) {
        EvaluationCache cache(landscape);
        GroupEvolution ge(smallParams(kMin, kMax), cache, 17);
        checkGeStructure(ge);
        FitnessVector best = ge.bestFitness();
        for (int g = 0; g < 25 && ge.step(); ++g) {
            checkGeStructure(ge);
            checkAdaptiveBounds(ge.adaptive());
            CHECK_FALSE(isBetter(best, ge.bestFitness()));
            best = ge.bestFitness();
            CHECK(ge.history().back().evaluations >= static_cast<std::size_t>(ge.generation()));
        }
        if (kMax == 1) {
            CHECK(ge.groupOperatorApplications() == 0);
            for (const auto& r : ge.history())
                for (std::size_t op = 6; op < kGeOperatorCount; ++op) CHECK(r.applied[op] == 0);
        }
    }
}

TEST_CASE("group evolution with kMax 1 never uses group operators over a full run") {
    EvaluationCache cache(landscape);
    auto p = smallParams(1, 1);
    p.stagnation = 10;
    GroupEvolution ge(p, cache, 5);
    ge.run();
    CHECK(ge.stopped());
    CHECK(ge.groupOperatorApplications() == 0);
    for (std::size_t op = 6; op < kGeOperatorCount; ++op) CHECK(ge.adaptive().probabilities[op] == 0.0);
}

TEST_CASE("classical EA elitism and bounds") {
    for (const auto& [kMin, kMax] : std::vector<std::pair<int, int>>{{1, 1}, {1, 5}}) {
        EvaluationCache cache(landscape);
        ClassicalEvolution ea(smallParams(kMin, kMax), cache, 23);
        FitnessVector best = ea.bestFitness();
        for (int g = 0; g < 25 && ea.step(); ++g) {
            CHECK(ea.population().size() <= 30u);
            for (const auto& c : ea.population()) CHECK(ea.params().bounds.admits(c.members.size()));
            for (std::size_t i = 1; i < ea.population().size(); ++i)
                CHECK_FALSE(isBetter(ea.population()[i].evaluation.fitness, ea.population()[i - 1].evaluation.fitness));
            CHECK_FALSE(isBetter(best, ea.bestFitness()));
            best = ea.bestFitness();
            checkAdaptiveBounds(ea.adaptive());
        }
    }
}

TEST_CASE("stagnation stops a flat landscape") {
    const auto flat = [](std::span<const genome::AttackerGenome>) { return Evaluation{{0.5, 1.0}, {0.5}, {1.0}}; };
    auto p = smallParams(1, 3);
    p.stagnation = 7;
    EvaluationCache c1(flat), c2(flat);
    GroupEvolution ge(p, c1, 1);
    ge.run();
    CHECK(ge.generation() == 7);
    ClassicalEvolution ea(p, c2, 1);
    ea.run();
    CHECK(ea.generation() == 7);
    CHECK_FALSE(ea.step());

    p.maxGenerations = 3;
    EvaluationCache c3(landscape);
    GroupEvolution capped(p, c3, 1);
    capped.run();
    CHECK(capped.generation() == 3);
}

TEST_CASE("checkpoint and restore continue bit-identically") {
    const auto p = smallParams(1, 5);
    {
        EvaluationCache cache(landscape);
        GroupEvolution ge(p, cache, 99);
        for (int i = 0; i < 4; ++i) ge.step();
        const auto saved = ge.checkpoint();
        EvaluationCache other(landscape);
        auto resumed = GroupEvolution::restore(saved, other);
        CHECK(resumed.checkpoint() == saved);
        for (int i = 0; i < 4; ++i) {
            ge.step();
            resumed.step();
        }
        CHECK(resumed.checkpoint() == ge.checkpoint());
    }
    {
        EvaluationCache cache(landscape);
        ClassicalEvolution ea(p, cache, 99);
        for (int i = 0; i < 4; ++i) ea.step();
        const auto saved = ea.checkpoint();
        EvaluationCache other(landscape);
        auto resumed = ClassicalEvolution::restore(saved, other);
        for (int i = 0; i < 4; ++i) {
            ea.step();
            resumed.step();
        }
        CHECK(resumed.checkpoint() == ea.checkpoint());
    }
    EvaluationCache cache(landscape);
    CHECK_THROWS_AS(GroupEvolution::restore("{\"engine\": \"classical\"}", cache), Error);
    CHECK_THROWS_AS(ClassicalEvolution::restore("not json", cache), ParseError);
}

TEST_CASE("runs with the same seed are identical") {
    const auto p = smallParams(1, 5);
    EvaluationCache c1(landscape), c2(landscape, 3);
    GroupEvolution a(p, c1, 4), b(p, c2, 4);
    for (int i = 0; i < 6; ++i) {
        a.step();
        b.step();
    }
    CHECK(a.checkpoint() == b.checkpoint());
}

TEST_CASE("group evolution finds the all black-hole-vehicle group") {
    auto p = smallParams(1, 5);
    p.stagnation = 50;
    p.maxGenerations = 200;
    int found = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        EvaluationCache cache(landscape);
        GroupEvolution ge(p, cache, seed);
        ge.run();
        const auto best = ge.bestGroup();
        if (best.size() == 5 && blackHoleVehicles(best) == 5) ++found;
    }
    CHECK(found >= 4);
}

TEST_CASE("parameter validation") {
    EvaluationCache cache(landscape);
    auto p = smallParams(3, 2);
    CHECK_THROWS_AS(GroupEvolution(p, cache, 1), ValidationError);
    p = smallParams(1, 1);
    p.mu = 0;
    CHECK_THROWS_AS(ClassicalEvolution(p, cache, 1), ValidationError);
}
