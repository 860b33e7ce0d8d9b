#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dtnattack/evolution/adaptation.hpp"
#include "dtnattack/evolution/evaluation.hpp"
#include "dtnattack/evolution/params.hpp"

namespace dtn::evolution {

/// Operator slots of Group Evolution. The first six act on individuals, the
/// rest on groups.
enum class GeOperator {
    OnePointCrossover,
    TwoPointCrossover,
    SingleParameterAlteration,
    Insertion,
    Removal,
    Replacement,
    GroupInsertion,
    GroupRemoval,
    GroupBalancedCrossover,
    GroupUnbalancedCrossover,
    GroupUnionIntersection,
    GroupDreamTeam,
};
constexpr std::size_t kGeOperatorCount = 12;
const char* operatorName(GeOperator op);
inline bool isGroupOperator(GeOperator op) { return static_cast<int>(op) >= 6; }

/// Cooperative co-evolution: a population of single attackers and a separate
/// population of groups referencing them.
///
/// Each generation applies λ operators. An individual operator picks parents
/// by tournament on individual fitness (the individual evaluated alone),
/// creates offspring, and derives one new group per offspring by swapping it
/// for its parent inside a group holding that parent. A group operator picks
/// parent groups by tournament and recombines their member references. New
/// groups join the old ones, the best μ_group survive, and individuals left in
/// no group are deleted.
class GroupEvolution {
public:
    struct Individual {
        genome::IndividualId id = 0;
        genome::AttackerGenome genome;
        Evaluation evaluation;
        int birth = 0;
    };
    struct GroupEntry {
        genome::AttackGroup group;
        Evaluation evaluation;
        int birth = 0;
    };

    GroupEvolution(EngineParams params, EvaluationCache& cache, std::uint64_t seed);

    /// Random initial populations. Called by the constructor.
    void initialize();
    /// Runs one generation. Returns false (doing nothing) once stopped.
    bool step();
    void run();
    bool stopped() const;

    const EngineParams& params() const { return params_; }
    const std::map<genome::IndividualId, Individual>& individuals() const { return individuals_; }
    const std::vector<GroupEntry>& groups() const { return groups_; }
    const AdaptiveState& adaptive() const { return adaptive_; }
    int generation() const { return generation_; }
    int stagnantGenerations() const { return stagnant_; }
    const FitnessVector& bestFitness() const { return best_; }
    Group bestGroup() const;
    Group resolve(const genome::AttackGroup& g) const;
    const std::vector<GenerationRecord>& history() const { return history_; }
    const std::vector<EvaluatedGroup>& evaluatedGroups() const { return evaluated_; }
    /// Group-operator applications over the whole run.
    int groupOperatorApplications() const { return groupOps_; }

    /// Full engine state as JSON text; restore() continues bit-identically.
    std::string checkpoint() const;
    static GroupEvolution restore(const std::string& checkpoint, EvaluationCache& cache);

private:
    struct PendingGroup {
        genome::AttackGroup group;
        std::size_t application;
    };

    GroupEvolution(EngineParams params, EvaluationCache& cache);
    genome::IndividualId adopt(const genome::AttackerGenome& g, std::vector<genome::IndividualId>& fresh);
    void evaluatePending(const std::vector<genome::IndividualId>& freshIndividuals,
                         std::vector<PendingGroup>& pending, std::vector<Evaluation>& groupEvals);
    std::vector<bool> enabledOperators() const;
    void survive(std::vector<PendingGroup>& pending, std::vector<Evaluation>& evals);
    void removeOrphans();
    void logGroup(const genome::AttackGroup& g, const Evaluation& e);
    void record(const std::vector<int>& applied);

    EngineParams params_;
    EvaluationCache* cache_;
    Rng rng_;
    std::map<genome::IndividualId, Individual> individuals_;
    std::map<std::string, genome::IndividualId> byText_;
    std::vector<GroupEntry> groups_;
    genome::IndividualId nextId_ = 0;
    AdaptiveState adaptive_;
    int generation_ = 0;
    int stagnant_ = 0;
    FitnessVector best_;
    Group bestMembers_;
    int groupOps_ = 0;
    std::vector<GenerationRecord> history_;
    std::vector<EvaluatedGroup> evaluated_;
    std::set<std::string> logged_;
};

}  // namespace dtn::evolution
