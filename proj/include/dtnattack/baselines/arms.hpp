#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "dtnattack/baselines/reachability.hpp"
#include "dtnattack/evolution/evaluation.hpp"
#include "dtnattack/evolution/params.hpp"
#include "dtnattack/netsim/simulator.hpp"

namespace dtn::baselines {

/// `count` groups with sizes uniform in bounds and random members, each
/// evaluated through `cache`. Generation fields are 0.
std::vector<evolution::EvaluatedGroup> sampleRandomGroups(int count, const genome::GroupBounds& bounds,
                                                          const genome::GenomeSpace& space, std::uint64_t seed,
                                                          evolution::EvaluationCache& cache);

/// Honest-only contact trace of one no-attack run.
ContactTrace honestContactTrace(const std::shared_ptr<const netsim::Scenario>& scenario, std::uint64_t seed);

struct GreedyOutcome {
    int k = 0;
    std::vector<std::vector<netsim::NodeId>> selected;  // per seed, removal order
    std::vector<std::int64_t> reachabilityBefore;       // per seed
    std::vector<std::int64_t> reachabilityAfter;        // per seed
    netsim::Evaluation evaluation;
};

/// For each seed: record the no-attack contact trace, pick k honest nodes
/// greedily, then rerun the same seed with those nodes turned into black
/// holes (same movement, no longer traffic endpoints).
GreedyOutcome greedyBaseline(const std::shared_ptr<const netsim::Scenario>& scenario, int k,
                             std::span<const std::uint64_t> seeds);

}  // namespace dtn::baselines
