#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "dtnattack/evolution/adaptation.hpp"
#include "dtnattack/evolution/evaluation.hpp"
#include "dtnattack/evolution/params.hpp"

namespace dtn::evolution {

enum class ClassicalOperator {
    OnePointCrossover,
    TwoPointCrossover,
    SingleParameterAlteration,
    Insertion,
    Removal,
    Replacement,
};
constexpr std::size_t kClassicalOperatorCount = 6;
const char* operatorName(ClassicalOperator op);

/// (μ+λ) EA whose candidates are whole attacker lists.
///
/// With a fixed group size every operator acts on the attackers' POI lists:
/// crossover recombines one randomly chosen member of each parent, mutations
/// alter one randomly chosen member. With a size range, crossover, insertion,
/// removal and replacement act on the attacker list itself half of the time
/// (cut-and-splice, add a random attacker, drop one, swap one for a random
/// attacker), keeping sizes within bounds.
class ClassicalEvolution {
public:
    struct Candidate {
        Group members;
        Evaluation evaluation;
        int birth = 0;
    };

    ClassicalEvolution(EngineParams params, EvaluationCache& cache, std::uint64_t seed);

    bool step();
    void run();
    bool stopped() const;

    const EngineParams& params() const { return params_; }
    const std::vector<Candidate>& population() const { return population_; }
    const AdaptiveState& adaptive() const { return adaptive_; }
    int generation() const { return generation_; }
    int stagnantGenerations() const { return stagnant_; }
    const FitnessVector& bestFitness() const { return population_.front().evaluation.fitness; }
    const Group& bestGroup() const { return population_.front().members; }
    const std::vector<GenerationRecord>& history() const { return history_; }
    const std::vector<EvaluatedGroup>& evaluatedGroups() const { return evaluated_; }

    std::string checkpoint() const;
    static ClassicalEvolution restore(const std::string& checkpoint, EvaluationCache& cache);

private:
    ClassicalEvolution(EngineParams params, EvaluationCache& cache);
    void initialize();
    genome::AttackerGenome& pickMember(Group& g);
    std::vector<Group> vary(ClassicalOperator op, const Group& a, const Group& b);
    std::vector<Evaluation> evaluate(const std::vector<Group>& groups);
    void survive(std::vector<Candidate> offspring);
    void record(const std::vector<int>& applied);

    EngineParams params_;
    EvaluationCache* cache_;
    Rng rng_;
    std::vector<Candidate> population_;
    AdaptiveState adaptive_;
    int generation_ = 0;
    int stagnant_ = 0;
    std::vector<GenerationRecord> history_;
    std::vector<EvaluatedGroup> evaluated_;
    std::set<std::string> logged_;
};

}  // namespace dtn::evolution
