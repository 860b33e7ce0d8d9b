#include "dtnattack/baselines/arms.hpp"

#include <numeric>

#include "dtnattack/common/error.hpp"

namespace dtn::baselines {

namespace {

constexpr std::uint64_t kRandomSalt = 0x7261;

}  // namespace

std::vector<evolution::EvaluatedGroup> sampleRandomGroups(int count, const genome::GroupBounds& bounds,
                                                          const genome::GenomeSpace& space, std::uint64_t seed,
                                                          evolution::EvaluationCache& cache) {
    if (count < 1) throw ValidationError("random sample count must be >= 1");
    if (bounds.kMin < 1 || bounds.kMax < bounds.kMin) throw ValidationError("need 1 <= kMin <= kMax");
    space.validateSelf();
    Rng rng(deriveSeed(seed, kRandomSalt));
    std::vector<evolution::Group> groups;
    for (int i = 0; i < count; ++i) {
        evolution::Group g;
        const auto size = rng.between(bounds.kMin, bounds.kMax);
        for (std::int64_t m = 0; m < size; ++m) g.push_back(genome::randomGenome(space, rng));
        groups.push_back(std::move(g));
    }
    auto evals = cache.evaluate(groups);
    std::vector<evolution::EvaluatedGroup> out;
    for (std::size_t i = 0; i < groups.size(); ++i) out.push_back({0, std::move(groups[i]), std::move(evals[i])});
    return out;
}

ContactTrace honestContactTrace(const std::shared_ptr<const netsim::Scenario>& scenario, std::uint64_t seed) {
    netsim::SimConfig cfg;
    cfg.scenario = scenario;
    cfg.seed = seed;
    cfg.recordContacts = true;
    auto r = netsim::runSimulation(cfg);
    return ContactTrace::make(static_cast<int>(scenario->honestCount()), std::move(r.contactTrace));
}

GreedyOutcome greedyBaseline(const std::shared_ptr<const netsim::Scenario>& scenario, int k,
                             std::span<const std::uint64_t> seeds) {
    if (seeds.empty()) throw ValidationError("greedy baseline needs at least one seed");
    if (k < 1 || k >= static_cast<int>(scenario->honestCount()) - 1)
        throw ValidationError("greedy k must leave at least two honest nodes");
    GreedyOutcome out;
    out.k = k;
    for (const auto seed : seeds) {
        const auto trace = honestContactTrace(scenario, seed);
        auto picks = greedySelectAttackers(trace, k);
        out.reachabilityBefore.push_back(totalReachability(trace));
        out.reachabilityAfter.push_back(totalReachability(trace.without(picks)));

        netsim::SimConfig cfg;
        cfg.scenario = scenario;
        cfg.seed = seed;
        cfg.convertedToBlackHole = picks;
        const auto r = netsim::runSimulation(cfg);
        out.evaluation.ddrs.push_back(r.ddr);
        out.evaluation.latencies.push_back(r.meanLatency);
        out.selected.push_back(std::move(picks));
    }
    const auto n = static_cast<double>(seeds.size());
    out.evaluation.fitness.f1 = std::accumulate(out.evaluation.ddrs.begin(), out.evaluation.ddrs.end(), 0.0) / n;
    out.evaluation.fitness.f2 =
        std::accumulate(out.evaluation.latencies.begin(), out.evaluation.latencies.end(), 0.0) / n;
    return out;
}

}  // namespace dtn::baselines
