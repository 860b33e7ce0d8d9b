#include "dtnattack/evolution/evaluation.hpp"

#include "dtnattack/common/worker_pool.hpp"
#include "dtnattack/genome/serialization.hpp"

namespace dtn::evolution {

GroupEvaluator simulationEvaluator(std::shared_ptr<const netsim::Scenario> scenario,
                                   std::vector<std::uint64_t> seeds) {
    return [scenario = std::move(scenario), seeds = std::move(seeds)](std::span<const genome::AttackerGenome> g) {
        return netsim::evaluateFitness(scenario, g, seeds);
    };
}

EvaluationCache::EvaluationCache(GroupEvaluator evaluator, unsigned jobs)
    : evaluator_(std::move(evaluator)), jobs_(jobs == 0 ? 1 : jobs) {}

std::vector<Evaluation> EvaluationCache::evaluate(const std::vector<Group>& groups) {
    std::vector<std::string> keys;
    keys.reserve(groups.size());
    std::vector<std::size_t> pending;  // first occurrence of each unseen key
    std::map<std::string, std::size_t> pendingKeys;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        keys.push_back(genome::canonicalForm(groups[i]));
        if (!entries_.contains(keys.back()) && pendingKeys.emplace(keys.back(), i).second) pending.push_back(i);
    }

    std::vector<Evaluation> fresh(pending.size());
    parallelFor(pending.size(), jobs_, [&](std::size_t j) { fresh[j] = evaluator_(groups[pending[j]]); });
    for (std::size_t j = 0; j < pending.size(); ++j) entries_.emplace(keys[pending[j]], std::move(fresh[j]));

    requests_ += groups.size();
    std::vector<Evaluation> out;
    out.reserve(groups.size());
    for (const auto& k : keys) out.push_back(entries_.at(k));
    return out;
}

Evaluation EvaluationCache::evaluate(const Group& group) { return evaluate(std::vector<Group>{group}).front(); }

void EvaluationCache::insert(const std::string& canonical, const Evaluation& e) { entries_[canonical] = e; }

}  // namespace dtn::evolution
