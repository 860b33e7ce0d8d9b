#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dtnattack/baselines/arms.hpp"
#include "dtnattack/evolution/params.hpp"
#include "dtnattack/harness/results.hpp"
#include "dtnattack/netsim/scenario.hpp"

namespace dtn::harness {

enum class Algorithm { GroupEvolution, Classical, Random, Greedy };
std::string_view toString(Algorithm a);
Algorithm parseAlgorithm(std::string_view text);

struct CampaignConfig {
    std::shared_ptr<const netsim::Scenario> scenario;
    std::string scenarioLabel;  // recorded in metadata only
    Algorithm algorithm = Algorithm::GroupEvolution;
    genome::GroupBounds bounds{1, 1};
    int repetitions = 5;
    std::uint64_t masterSeed = 1;
    /// Evaluation seeds come from the scenario seed, so every arm and
    /// repetition sees the same honest worlds.
    std::size_t evaluationSeedCount = 10;
    int stagnation = 50;
    int maxGenerations = 0;
    int minPois = 1;
    int maxPois = 20;
    int randomCount = 150;
    unsigned jobs = 1;
    /// Empty: nothing is written.
    std::string outDir;
    /// Continue repetitions from checkpoints found in outDir.
    bool resume = false;
    std::string campaignId = "campaign";

    void validate() const;
    evolution::EngineParams engineParams() const;
    std::vector<std::uint64_t> evaluationSeeds() const;
};

struct RepetitionResult {
    int repetition = 0;
    evolution::Group best;
    FitnessVector fitness;
    std::vector<FitnessVector> series;  // best per generation, from generation 0
    std::size_t evaluations = 0;
    int generations = 0;
    int groupOperatorApplications = 0;
};

struct CampaignResult {
    std::vector<RepetitionResult> repetitions;
    std::vector<ResultRow> rows;  // every distinct group each repetition evaluated
    std::vector<baselines::GreedyOutcome> greedy;
};

/// Runs the arm. Evolutionary arms run `repetitions` independent engines
/// (seeded from the master seed) and, with an output directory, checkpoint
/// after every generation. Random draws `randomCount` groups once. Greedy
/// runs every k in bounds, one row per (k, evaluation seed).
///
/// Files in outDir: results.csv, campaign.json, best_rep<i>.txt,
/// history_rep<i>.csv, checkpoint_rep<i>.json, greedy.csv, log.txt.
CampaignResult runCampaign(const CampaignConfig& config);

}  // namespace dtn::harness
