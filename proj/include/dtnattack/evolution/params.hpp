#pragma once

#include <string>
#include <vector>

#include "dtnattack/common/fitness.hpp"
#include "dtnattack/evolution/evaluation.hpp"
#include "dtnattack/genome/attacker_genome.hpp"
#include "dtnattack/genome/group_operators.hpp"

namespace dtn::evolution {

struct EngineParams {
    genome::GenomeSpace space;
    genome::GroupBounds bounds{1, 1};

    double tau = 2.0;  // initial tournament size
    double sigma = 0.9;
    double alpha = 0.9;
    int stagnation = 50;
    int maxGenerations = 0;  // 0: no cap

    int mu = 30;  // classical population
    int lambda = 20;
    int muGroup = 30;
    int nuIndividual = 50;

    void validate() const;
};

/// Snapshot after each generation.
struct GenerationRecord {
    int generation = 0;
    FitnessVector best;
    std::size_t requests = 0;  // fitness lookups so far, cached or not
    std::size_t evaluations = 0;  // distinct evaluations so far
    double tau = 0.0;
    double sigma = 0.0;
    std::vector<double> probabilities;
    std::vector<int> applied;  // per operator, this generation
};

/// A candidate group the first time the engine evaluated it.
struct EvaluatedGroup {
    int generation = 0;
    Group members;
    Evaluation evaluation;
};

}  // namespace dtn::evolution
