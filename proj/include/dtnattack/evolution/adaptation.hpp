#pragma once

#include <string>
#include <vector>

#include "dtnattack/common/random.hpp"

namespace dtn::evolution {

constexpr double kTauMin = 1.0;
constexpr double kTauMax = 4.0;
constexpr double kSigmaMin = 0.05;
constexpr double kSigmaMax = 0.95;
constexpr double kProbabilityFloor = 0.01;

/// Per-operator tallies for one generation.
struct OperatorTally {
    int applied = 0;
    int succeeded = 0;  // offspring strictly better than its best parent
};

/// Self-adapted engine knobs: tournament size τ, mutation strength σ and
/// operator activation probabilities (one slot per operator; disabled
/// operators keep probability 0).
struct AdaptiveState {
    double tau = 2.0;
    double sigma = 0.9;
    double alpha = 0.9;
    std::vector<double> probabilities;
    std::vector<bool> enabled;

    /// Uniform over enabled operators.
    static AdaptiveState uniform(std::size_t operators, const std::vector<bool>& enabled, double tau, double sigma,
                                 double alpha);

    /// Draws an enabled operator index by probability.
    std::size_t chooseOperator(Rng& rng) const;

    /// One generation's update.
    ///   p   <- α p + (1-α) success rate, for operators applied this generation
    ///   σ   <- α σ + (1-α) [improved],            clamped to [0.05, 0.95]
    ///   τ   <- α τ + (1-α) (improved ? 1 : 4),    clamped to [1, 4]
    /// then probabilities are floored at 0.01 and renormalised.
    void adapt(const std::vector<OperatorTally>& tallies, bool improved);
};

/// Scales to sum 1 while keeping every entry of an enabled slot >= floor.
void normaliseWithFloor(std::vector<double>& p, const std::vector<bool>& enabled, double floor);

}  // namespace dtn::evolution
