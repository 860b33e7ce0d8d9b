#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dtnattack/genome/attacker_genome.hpp"
#include "dtnattack/netsim/scenario.hpp"
#include "dtnattack/netsim/simulator.hpp"

namespace dtn::evolution {

using netsim::Evaluation;
using Group = std::vector<genome::AttackerGenome>;

/// Pure, thread-safe group fitness function.
using GroupEvaluator = std::function<Evaluation(std::span<const genome::AttackerGenome>)>;

/// Simulation-backed evaluator: the group runs once per seed.
GroupEvaluator simulationEvaluator(std::shared_ptr<const netsim::Scenario> scenario,
                                   std::vector<std::uint64_t> seeds);

/// Memoises an evaluator by the group's canonical text, and dispatches cache
/// misses of a batch to worker threads. Results never depend on `jobs`.
class EvaluationCache {
public:
    explicit EvaluationCache(GroupEvaluator evaluator, unsigned jobs = 1);

    /// Evaluates each group, in order. Duplicates within the batch and groups
    /// seen before are evaluated once.
    std::vector<Evaluation> evaluate(const std::vector<Group>& groups);
    Evaluation evaluate(const Group& group);

    std::size_t requests() const { return requests_; }
    /// Calls into the underlying evaluator.
    std::size_t misses() const { return entries_.size(); }
    std::size_t hits() const { return requests_ - entries_.size(); }

    const std::map<std::string, Evaluation>& entries() const { return entries_; }
    /// Restores entries, e.g. from a checkpoint.
    void insert(const std::string& canonical, const Evaluation& e);
    void setRequests(std::size_t n) { requests_ = n; }

private:
    GroupEvaluator evaluator_;
    unsigned jobs_;
    std::size_t requests_ = 0;
    std::map<std::string, Evaluation> entries_;
};

}  // namespace dtn::evolution
